#include "evroute/compare.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

#include "evroute/error.hpp"

namespace evroute {
namespace {

template <class Fn>
double timed(Fn&& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Doc gap_or_null(std::optional<double> value, std::optional<double> best) {
  if (!value || !best || *best == 0.0) return Doc();
  return real((*value - *best) / *best);
}

}  // namespace

std::optional<double> CompareReport::best() const {
  std::optional<double> b;
  auto take = [&](double v) { b = b ? std::min(*b, v) : v; };
  for (const auto& row : rows) {
    if (row.p4) take(row.p4->assignment.objective);
    if (row.p5) take(row.p5->assignment.objective);
  }
  if (flow) take(flow->objective);
  return b;
}

std::optional<double> CompareReport::best_p4() const {
  std::optional<double> b;
  for (const auto& row : rows) {
    if (row.p4) b = b ? std::min(*b, row.p4->assignment.objective) : row.p4->assignment.objective;
  }
  return b;
}

CompareReport run_compare(const Network& net, const std::vector<int>& Ns, double tol, int threads,
                          std::uint64_t budget) {
  require_valid(net);
  CompareReport report;
  for (int N : Ns) {
    CompareRow row;
    row.N = N;
    MultiOptions options;
    options.threads = threads;
    options.budget = budget;
    try {
      CongestionParams params = CongestionParams::from(net, N);
      row.p4_seconds = timed([&] { row.p4 = solve_p4(net, params, options); });
    } catch (const Error& e) {
      row.p4_error = e.what();
    }
    try {
      CongestionParams params = CongestionParams::from(net, N);
      row.p5_seconds = timed([&] { row.p5 = solve_p5(net, params, options); });
    } catch (const Error& e) {
      row.p5_error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  try {
    CongestionParams params = CongestionParams::from(net, 1);
    FlowOptions options;
    options.tol = tol;
    report.flow_seconds = timed([&] { report.flow = solve_flow(net, params, options); });
  } catch (const Error& e) {
    report.flow_error = e.what();
  }
  return report;
}

Doc to_doc(const CompareReport& report) {
  const auto best = report.best();
  Doc series = Doc::array();
  for (const auto& row : report.rows) {
    Doc r = Doc::object();
    r.set("N", row.N);
    auto method = [&](const std::optional<MultiResult>& result, const std::string& error) {
      Doc m = Doc::object();
      if (!result) {
        m.set("error", error);
        return m;
      }
      m.set("objective", real(result->assignment.objective));
      if (result->assignment.transformed_objective) {
        m.set("transformed_objective", real(*result->assignment.transformed_objective));
      }
      m.set("counts", Doc::ints(result->assignment.counts));
      m.set("budget_exceeded", result->stats.budget_exceeded);
      m.set("gap", gap_or_null(result->assignment.objective, best));
      return m;
    };
    r.set("p4", method(row.p4, row.p4_error));
    r.set("p5", method(row.p5, row.p5_error));
    if (row.p4 && row.p5) {
      r.set("p5_minus_p4", real(row.p5->assignment.objective - row.p4->assignment.objective));
      r.set("same_routes", row.p4->assignment.counts == row.p5->assignment.counts);
    }
    series.push(std::move(r));
  }
  Doc flow = Doc::object();
  if (report.flow) {
    flow.set("objective", real(report.flow->objective));
    flow.set("gap_to_best", gap_or_null(report.flow->objective, best));
    flow.set("duality_gap", real(report.flow->gap));
    flow.set("converged", report.flow->converged);
  } else {
    flow.set("error", report.flow_error);
  }
  Doc d = Doc::object();
  d.set("series", std::move(series));
  d.set("flow", std::move(flow));
  d.set("best", best ? real(*best) : Doc());
  const auto best_p4 = report.best_p4();
  if (best_p4 && report.flow) d.set("flow_below_best_p4", real((*best_p4 - report.flow->objective) / *best_p4));

  Doc timing = Doc::object();
  timing.set("deterministic", false);
  Doc p4 = Doc::array();
  Doc p5 = Doc::array();
  Doc ratio = Doc::array();
  for (const auto& row : report.rows) {
    p4.push(real(row.p4_seconds));
    p5.push(real(row.p5_seconds));
    ratio.push(report.flow_seconds > 0.0 ? real(row.p4_seconds / report.flow_seconds) : Doc());
  }
  timing.set("p4_seconds", std::move(p4));
  timing.set("p5_seconds", std::move(p5));
  timing.set("flow_seconds", real(report.flow_seconds));
  timing.set("p4_over_flow", std::move(ratio));
  d.set("timing", std::move(timing));
  return d;
}

std::string to_table(const CompareReport& report) {
  std::string out = fmt::format("{:>4}  {:>14}  {:>14}  {:>12}  {}\n", "N", "p4", "p5", "p5-p4", "p4 counts");
  for (const auto& row : report.rows) {
    std::string p4 = row.p4 ? format_real(row.p4->assignment.objective) : "error";
    std::string p5 = row.p5 ? format_real(row.p5->assignment.objective) : "error";
    std::string diff = row.p4 && row.p5 ? format_real(row.p5->assignment.objective - row.p4->assignment.objective) : "-";
    std::string counts;
    if (row.p4) {
      for (int c : row.p4->assignment.counts) counts += (counts.empty() ? "" : ",") + std::to_string(c);
    }
    out += fmt::format("{:>4}  {:>14}  {:>14}  {:>12}  {}\n", row.N, p4, p5, diff, counts);
  }
  out += fmt::format("flow  {:>14}\n", report.flow ? format_real(report.flow->objective) : "error");
  return out;
}

}  // namespace evroute
