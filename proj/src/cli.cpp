#include "evroute/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "evroute/bench.hpp"
#include "evroute/compare.hpp"
#include "evroute/flow.hpp"
#include "evroute/multi_vehicle.hpp"
#include "evroute/network.hpp"
#include "evroute/report.hpp"
#include "evroute/single_vehicle.hpp"

namespace evroute::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax:
    case ErrorCode::kSchema:
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kPathBudgetExceeded:
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kNoConvergence:
      return kExitBudget;
    case ErrorCode::kInfeasiblePath:
    case ErrorCode::kNegativeCycle:
    case ErrorCode::kNoFeasiblePath:
    case ErrorCode::kNoFeasibleAssignment:
    case ErrorCode::kClampedRegion:
    case ErrorCode::kTopologyUnsupported:
    case ErrorCode::kDecompositionFailure:
      return kExitInfeasible;
  }
  return kExitInfeasible;
}

namespace {

struct Config {
  std::string input;
  std::string method;
  std::string n_text;
  int n = 1;
  double tol = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string out;
  std::string format = "json";
  int threads = 0;
  std::string fallback;
  std::vector<int> nodes;
  double density = 0.5;
};

class Emitter {
 public:
  Emitter(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void write(const std::string& text) {
    if (cfg_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(cfg_.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + cfg_.out);
    file << text;
  }

 private:
  const Config& cfg_;
  std::ostream& out_;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "--n expects positive integers, got '" + item + "'");
    }
  }
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "--n list is empty");
  return values;
}

void require_format(const Config& cfg) {
  if (cfg.format != "json" && cfg.format != "table" && cfg.format != "dot") {
    throw Error(ErrorCode::kInvalidArgument, "--format must be json, table or dot");
  }
}

int cmd_validate(const Config& cfg, Emitter& emit, std::ostream& err) {
  Network net = load_network(cfg.input);
  ValidationReport report = validate(net);
  for (const auto& e : report.errors) err << "error: " << e.code << " (" << e.location << "): " << e.message << "\n";
  if (cfg.format == "table") {
    emit.write(to_table(report));
  } else if (cfg.format == "dot") {
    emit.write(to_dot(net, {}));
  } else {
    emit.write(to_doc(report).dump());
  }
  return report.ok() ? kExitSolved : kExitUsage;
}

int cmd_single(const Config& cfg, Emitter& emit, std::ostream& err) {
  Network net = load_network(cfg.input);
  ExactOptions options;
  options.threads = cfg.threads;
  if (cfg.budget) options.max_paths = cfg.budget;

  RouteSolution solution;
  if (cfg.method == "exact") {
    solution = solve_exact(net, options);
  } else {
    try {
      solution = solve_lp_reduction(net);
    } catch (const Error& e) {
      bool recoverable = e.code() == ErrorCode::kInfeasiblePath || e.code() == ErrorCode::kNegativeCycle;
      if (cfg.fallback != "exact" || !recoverable) throw;
      err << "lp reduction failed (" << e.what() << "); falling back to exact\n";
      solution = solve_exact(net, options);
    }
  }
  if (cfg.format == "table") {
    emit.write(to_table(solution));
  } else if (cfg.format == "dot") {
    emit.write(to_dot(net, {solution.plan.path}));
  } else {
    emit.write(to_doc(solution).dump());
  }
  return kExitSolved;
}

int cmd_charging_plan(const Config& cfg, Emitter& emit) {
  Network net = load_network(cfg.input);
  require_valid(net);
  if (cfg.nodes.empty() || cfg.nodes.front() != net.origin() || cfg.nodes.back() != net.destination()) {
    throw Error(ErrorCode::kInvalidArgument, "path must start at the origin and end at the destination");
  }
  ChargingPlan plan = cfg.method == "dp" ? charging_oracle_dp(net, cfg.nodes, cfg.tol > 0.0 ? cfg.tol : 0.01)
                                         : optimal_charging_on_path(net, cfg.nodes);
  if (cfg.format == "table") {
    emit.write(to_table(plan, cfg.method));
  } else if (cfg.format == "dot") {
    emit.write(to_dot(net, {plan.path}));
  } else {
    emit.write(to_doc(plan, cfg.method).dump());
  }
  return kExitSolved;
}

int cmd_multi(const Config& cfg, Emitter& emit, std::ostream& err) {
  Network net = load_network(cfg.input);
  CongestionParams params = CongestionParams::from(net, cfg.n);
  MultiOptions options;
  options.threads = cfg.threads;
  if (cfg.budget) options.budget = cfg.budget;
  MultiResult result = cfg.method == "p5" ? solve_p5(net, params, options) : solve_p4(net, params, options);
  err << fmt::format("elapsed {:.6f} s\n", result.stats.elapsed_seconds);
  if (cfg.format == "table") {
    emit.write(to_table(result, cfg.method));
  } else if (cfg.format == "dot") {
    std::vector<Path> routes;
    for (const auto& r : result.assignment.routes) routes.push_back(r.path);
    emit.write(to_dot(net, routes));
  } else {
    emit.write(to_doc(result, cfg.method).dump());
  }
  if (result.stats.budget_exceeded) {
    err << "assignment budget exceeded; reporting the best assignment found\n";
    return kExitBudget;
  }
  return kExitSolved;
}

int cmd_flow(const Config& cfg, Emitter& emit, std::ostream& err) {
  Network net = load_network(cfg.input);
  CongestionParams params = CongestionParams::from(net, 1);
  FlowOptions options;
  if (cfg.tol > 0.0) options.tol = cfg.tol;
  if (cfg.budget) options.max_iters = static_cast<int>(std::min<std::uint64_t>(cfg.budget, 1u << 30));
  auto start = std::chrono::steady_clock::now();
  FlowPattern flow = solve_flow(net, params, options);
  err << fmt::format("elapsed {:.6f} s\n",
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  FlowChargingState charging = recover_flow_charging(net, params, flow.x);
  if (cfg.format == "table") {
    emit.write(to_table(net, flow, charging));
  } else if (cfg.format == "dot") {
    std::vector<Path> paths;
    for (const auto& ps : charging.paths) paths.push_back(ps.path);
    std::vector<std::string> notes;
    for (double v : flow.x) notes.push_back(v > 0.0 ? "x=" + format_real(v) : "");
    emit.write(to_dot(net, paths, notes));
  } else {
    emit.write(to_doc(net, flow, charging).dump());
  }
  if (!flow.converged) {
    err << "no-convergence: iteration limit reached with gap " << format_real(flow.gap) << "\n";
    return kExitBudget;
  }
  return kExitSolved;
}

int cmd_compare(const Config& cfg, Emitter& emit) {
  Network net = load_network(cfg.input);
  std::vector<int> Ns = parse_int_list(cfg.n_text.empty() ? "2,4,6,8,10" : cfg.n_text);
  CompareReport report = run_compare(net, Ns, cfg.tol > 0.0 ? cfg.tol : 1e-6, cfg.threads,
                                     cfg.budget ? cfg.budget : 1000000);
  emit.write(cfg.format == "table" ? to_table(report) : to_doc(report).dump());
  return kExitSolved;
}

int cmd_bench(const Config& cfg, Emitter& emit) {
  BenchSpec spec;
  spec.seed = cfg.seed;
  spec.n = cfg.n;
  spec.density = cfg.density;
  spec.profile = parse_g_profile(cfg.method);
  Network net = bench_generate(spec);
  emit.write(serialize_network(net));
  return kExitSolved;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time routing and charging for battery-powered vehicles", "evroute"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write the document to this file");
    sub->add_option("--format", cfg.format, "json, table or dot")->check(CLI::IsMember({"json", "table", "dot"}));
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "instance file")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "check an instance against every invariant");
  add_input(validate_cmd);
  add_common(validate_cmd);

  auto* single = app.add_subcommand("single", "single-vehicle route and charging");
  add_input(single);
  single->add_option("--method", cfg.method, "exact or lp")->check(CLI::IsMember({"exact", "lp"}));
  single->add_option("--fallback", cfg.fallback, "solver to use when lp fails")->check(CLI::IsMember({"exact"}));
  single->add_option("--budget", cfg.budget, "maximum number of enumerated paths");
  single->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  add_common(single);

  auto* plan = app.add_subcommand("charging-plan", "optimal charging on a fixed path");
  add_input(plan);
  plan->add_option("path", cfg.nodes, "node ids from origin to destination")->required();
  plan->add_option("--method", cfg.method, "lp or dp")->check(CLI::IsMember({"lp", "dp"}));
  plan->add_option("--tol", cfg.tol, "energy grid step of the dp oracle (default 0.01)");
  add_common(plan);

  auto* multi = app.add_subcommand("multi", "route N subflows under congestion");
  add_input(multi);
  multi->add_option("--method", cfg.method, "p4 or p5")->check(CLI::IsMember({"p4", "p5"}));
  multi->add_option("--n", cfg.n, "number of subflows")->check(CLI::PositiveNumber);
  multi->add_option("--budget", cfg.budget, "maximum number of assignments searched");
  multi->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  add_common(multi);

  auto* flow = app.add_subcommand("flow", "continuous flow relaxation");
  add_input(flow);
  flow->add_option("--tol", cfg.tol, "duality gap tolerance (default 1e-6)");
  flow->add_option("--budget", cfg.budget, "maximum iterations");
  add_common(flow);

  auto* compare = app.add_subcommand("compare", "p4, p5 and flow over a list of N");
  add_input(compare);
  compare->add_option("--n", cfg.n_text, "comma-separated subflow counts (default 2,4,6,8,10)");
  compare->add_option("--tol", cfg.tol, "flow duality gap tolerance");
  compare->add_option("--budget", cfg.budget, "assignment budget per solve");
  compare->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  add_common(compare);

  auto* bench = app.add_subcommand("bench", "generate a random instance");
  bench->add_option("density", cfg.density, "probability of each extra forward arc (default 0.5)");
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--n", cfg.n, "node count");
  bench->add_option("--method", cfg.method, "g profile: uniform, two-tier or table1");
  bench->add_option("--out", cfg.out, "write the instance to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSolved;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSolved;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  Emitter emit(cfg, out);
  try {
    require_format(cfg);
    if (*validate_cmd) return cmd_validate(cfg, emit, err);
    auto method_or = [&](const char* fallback) {
      if (cfg.method.empty()) cfg.method = fallback;
    };
    if (*single) {
      method_or("exact");
      return cmd_single(cfg, emit, err);
    }
    if (*plan) {
      method_or("lp");
      return cmd_charging_plan(cfg, emit);
    }
    if (*multi) {
      method_or("p4");
      return cmd_multi(cfg, emit, err);
    }
    if (*flow) return cmd_flow(cfg, emit, err);
    if (*compare) return cmd_compare(cfg, emit);
    if (*bench) {
      method_or("two-tier");
      if (!bench->count("--n")) cfg.n = 10;
      return cmd_bench(cfg, emit);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (!e.nodes().empty()) {
      err << "witness:";
      for (int v : e.nodes()) err << " " << v;
      err << "\n";
    }
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace evroute::cli
