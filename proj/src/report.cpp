#include "evroute/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>


namespace evroute {

std::string format_real(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

Doc Doc::reals(const std::vector<double>& values) {
  Doc d = array();
  for (double v : values) d.push(real(v));
  return d;
}

Doc Doc::ints(const std::vector<int>& values) {
  Doc d = array();
  for (int v : values) d.push(v);
  return d;
}

Doc& Doc::set(const std::string& key, Doc value) {
  std::get<Members>(value_).emplace_back(key, std::move(value));
  return *this;
}

Doc& Doc::push(Doc value) {
  std::get<Items>(value_).push_back(std::move(value));
  return *this;
}

bool Doc::is_scalar() const {
  return !std::holds_alternative<Members>(value_) && !std::holds_alternative<Items>(value_);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace

void Doc::write(std::string& out, int indent) const {
  const std::string pad(indent + 2, ' ');
  if (std::holds_alternative<std::nullptr_t>(value_)) {
    out += "null";
  } else if (auto* r = std::get_if<Real>(&value_)) {
    out += format_real(r->value);
  } else if (auto* i = std::get_if<long long>(&value_)) {
    out += std::to_string(*i);
  } else if (auto* b = std::get_if<bool>(&value_)) {
    out += *b ? "true" : "false";
  } else if (auto* s = std::get_if<std::string>(&value_)) {
    out += quote(*s);
  } else if (auto* items = std::get_if<Items>(&value_)) {
    // Arrays of scalars stay on one line.
    bool flat = std::all_of(items->begin(), items->end(), [](const Doc& d) { return d.is_scalar(); });
    if (items->empty()) {
      out += "[]";
    } else if (flat) {
      out += "[";
      for (std::size_t k = 0; k < items->size(); ++k) {
        if (k) out += ", ";
        (*items)[k].write(out, indent);
      }
      out += "]";
    } else {
      out += "[\n";
      for (std::size_t k = 0; k < items->size(); ++k) {
        out += pad;
        (*items)[k].write(out, indent + 2);
        out += k + 1 < items->size() ? ",\n" : "\n";
      }
      out += std::string(indent, ' ') + "]";
    }
  } else {
    const auto& members = std::get<Members>(value_);
    if (members.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    for (std::size_t k = 0; k < members.size(); ++k) {
      out += pad + quote(members[k].first) + ": ";
      members[k].second.write(out, indent + 2);
      out += k + 1 < members.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  }
}

std::string Doc::dump() const {
  std::string out;
  write(out, 0);
  return out + "\n";
}

Doc to_doc(const ChargingPlan& plan, const std::string& method) {
  Doc d = Doc::object();
  d.set("path", Doc::ints(plan.path));
  d.set("r", Doc::reals(plan.r));
  d.set("E", Doc::reals(plan.E));
  d.set("charge_time", real(plan.charge_time));
  d.set("method", method);
  return d;
}

Doc to_doc(const RouteSolution& s) {
  Doc d = Doc::object();
  d.set("path", Doc::ints(s.plan.path));
  d.set("r", Doc::reals(s.plan.r));
  d.set("E", Doc::reals(s.plan.E));
  d.set("travel_time", real(s.travel_time));
  d.set("charge_time", real(s.plan.charge_time));
  d.set("total_time", real(s.total_time));
  if (s.transformed_objective) d.set("transformed_objective", real(*s.transformed_objective));
  d.set("method", s.method);
  return d;
}

Doc to_doc(const MultiResult& result, const std::string& method) {
  const SubflowAssignment& a = result.assignment;
  Doc routes = Doc::array();
  for (const RouteShare& route : a.routes) {
    Doc r = Doc::object();
    r.set("path", Doc::ints(route.path));
    r.set("count", route.count);
    r.set("r", Doc::reals(route.plan.r));
    r.set("E", Doc::reals(route.plan.E));
    routes.push(std::move(r));
  }
  Doc stats = Doc::object();
  stats.set("assignments_evaluated", static_cast<unsigned long long>(result.stats.assignments_evaluated));
  stats.set("feasible_count", static_cast<unsigned long long>(result.stats.feasible_count));
  stats.set("budget_exceeded", result.stats.budget_exceeded);

  Doc d = Doc::object();
  d.set("method", method);
  d.set("routes", std::move(routes));
  d.set("travel_time_total", real(a.travel_time_total));
  d.set("charge_time_total", real(a.charge_time_total));
  d.set("objective", real(a.objective));
  if (a.transformed_objective) d.set("transformed_objective", real(*a.transformed_objective));
  d.set("stats", std::move(stats));
  return d;
}

Doc to_doc(const Network& net, const FlowPattern& flow, const FlowChargingState& charging) {
  Doc x = Doc::array();
  for (int k = 0; k < net.arc_count(); ++k) {
    Doc entry = Doc::object();
    entry.set("from", net.arc(k).from).set("to", net.arc(k).to).set("value", real(flow.x[k]));
    x.push(std::move(entry));
  }
  Doc paths = Doc::array();
  for (const PathShare& ps : charging.paths) {
    Doc p = Doc::object();
    p.set("path", Doc::ints(ps.path)).set("share", real(ps.share));
    paths.push(std::move(p));
  }
  Doc d = Doc::object();
  d.set("x", std::move(x));
  d.set("objective", real(flow.objective));
  d.set("gap", real(flow.gap));
  d.set("iterations", flow.iterations);
  d.set("converged", flow.converged);
  d.set("paths", std::move(paths));
  d.set("r", Doc::reals(charging.r));
  d.set("charge_time_total", real(charging.charge_time));
  return d;
}

Doc to_doc(const ValidationReport& report) {
  auto issues = [](const std::vector<ValidationIssue>& list) {
    Doc a = Doc::array();
    for (const auto& issue : list) {
      Doc i = Doc::object();
      i.set("code", issue.code).set("message", issue.message).set("location", issue.location);
      a.push(std::move(i));
    }
    return a;
  };
  Doc d = Doc::object();
  d.set("ok", report.ok());
  d.set("errors", issues(report.errors));
  d.set("warnings", issues(report.warnings));
  return d;
}

namespace {

std::string join_path(const Path& path) {
  std::string s;
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (t) s += "->";
    s += std::to_string(path[t]);
  }
  return s;
}

std::string plan_rows(const ChargingPlan& plan) {
  std::string out = fmt::format("{:>6}  {:>14}  {:>14}\n", "node", "r", "E");
  for (std::size_t t = 0; t < plan.path.size(); ++t) {
    out += fmt::format("{:>6}  {:>14}  {:>14}\n", plan.path[t], format_real(plan.r[t]), format_real(plan.E[t]));
  }
  return out;
}

std::string row(const std::string& label, double value) {
  return fmt::format("{:<20}{:>14}\n", label, format_real(value));
}

}  // namespace

std::string to_table(const RouteSolution& s) {
  std::string out = fmt::format("{:<20}{}\n", "method", s.method);
  out += fmt::format("{:<20}{}\n", "path", join_path(s.plan.path));
  out += row("travel_time", s.travel_time);
  out += row("charge_time", s.plan.charge_time);
  out += row("total_time", s.total_time);
  if (s.transformed_objective) out += row("transformed", *s.transformed_objective);
  return out + "\n" + plan_rows(s.plan);
}

std::string to_table(const ChargingPlan& plan, const std::string& method) {
  std::string out = fmt::format("{:<20}{}\n", "method", method);
  out += fmt::format("{:<20}{}\n", "path", join_path(plan.path));
  out += row("charge_time", plan.charge_time);
  return out + "\n" + plan_rows(plan);
}

std::string to_table(const MultiResult& result, const std::string& method) {
  const SubflowAssignment& a = result.assignment;
  std::string out = fmt::format("{:<20}{}\n", "method", method);
  out += row("travel_time_total", a.travel_time_total);
  out += row("charge_time_total", a.charge_time_total);
  out += row("objective", a.objective);
  if (a.transformed_objective) out += row("transformed", *a.transformed_objective);
  out += fmt::format("{:<20}{:>14}\n", "evaluated", result.stats.assignments_evaluated);
  out += fmt::format("{:<20}{:>14}\n", "feasible", result.stats.feasible_count);
  if (result.stats.budget_exceeded) out += "budget exceeded: best assignment found so far\n";
  out += fmt::format("\n{:>6}  {:>14}  {}\n", "count", "charge_time", "route");
  for (const RouteShare& r : a.routes) {
    out += fmt::format("{:>6}  {:>14}  {}\n", r.count, format_real(r.plan.charge_time), join_path(r.path));
  }
  return out;
}

std::string to_table(const Network& net, const FlowPattern& flow, const FlowChargingState& charging) {
  std::string out = row("objective", flow.objective);
  out += row("gap", flow.gap);
  out += fmt::format("{:<20}{:>14}\n", "iterations", flow.iterations);
  out += row("charge_time_total", charging.charge_time);
  out += fmt::format("\n{:>6}  {:>6}  {:>14}\n", "from", "to", "x");
  for (int k = 0; k < net.arc_count(); ++k) {
    out += fmt::format("{:>6}  {:>6}  {:>14}\n", net.arc(k).from, net.arc(k).to, format_real(flow.x[k]));
  }
  out += fmt::format("\n{:>14}  {}\n", "share", "path");
  for (const PathShare& ps : charging.paths) out += fmt::format("{:>14}  {}\n", format_real(ps.share), join_path(ps.path));
  return out;
}

std::string to_table(const ValidationReport& report) {
  std::string out;
  for (const auto& e : report.errors) out += fmt::format("error    {:<18} {:<14} {}\n", e.code, e.location, e.message);
  for (const auto& w : report.warnings) {
    out += fmt::format("warning  {:<18} {:<14} {}\n", w.code, w.location, w.message);
  }
  if (report.ok()) out += "ok\n";
  return out;
}

std::string to_dot(const Network& net, const std::vector<Path>& highlight, const std::vector<std::string>& arc_notes) {
  static const char* kColours[] = {"red", "blue", "darkgreen", "orange", "purple", "brown"};
  std::vector<int> colour(net.arc_count(), -1);
  for (std::size_t p = 0; p < highlight.size(); ++p) {
    for (int k : net.path_arcs(highlight[p])) {
      if (colour[k] < 0) colour[k] = static_cast<int>(p % 6);
    }
  }
  std::string out = "digraph network {\n  rankdir=LR;\n";
  for (NodeId i = 1; i <= net.node_count(); ++i) {
    out += fmt::format("  {} [label=\"{}\\ng={}\"];\n", i, i, format_real(net.g(i)));
  }
  for (int k = 0; k < net.arc_count(); ++k) {
    const Arc& a = net.arc(k);
    std::string label = fmt::format("{}/{}/{}", format_real(a.tau), format_real(a.e), format_real(net.g(a.from)));
    if (k < static_cast<int>(arc_notes.size()) && !arc_notes[k].empty()) label += "\\n" + arc_notes[k];
    out += fmt::format("  {} -> {} [label=\"{}\"", a.from, a.to, label);
    if (colour[k] >= 0) out += fmt::format(", color={}, penwidth=2.5", kColours[colour[k]]);
    out += "];\n";
  }
  return out + "}\n";
}

}  // namespace evroute
