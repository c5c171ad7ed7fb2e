#include "evroute/single_vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evroute/error.hpp"
#include "evroute/parallel.hpp"
#include "evroute/paths.hpp"
#include "evroute/shortest_path.hpp"

namespace evroute {
namespace {

[[noreturn]] void blocked(const Path& path, std::size_t t) {
  throw Error(ErrorCode::kInfeasiblePath,
              "arc " + std::to_string(path[t]) + " -> " + std::to_string(path[t + 1]) +
                  " cannot be traversed under any charging choice",
              {path[t], path[t + 1]});
}

void check_profile(const PathEnergyProfile& p) {
  if (p.path.size() < 2 || p.g.size() != p.path.size() || p.e.size() + 1 != p.path.size()) {
    throw Error(ErrorCode::kInvalidArgument, "malformed path energy profile");
  }
}

// Arrival energies from recharges, with rounding dust below zero removed.
std::vector<double> propagate(const PathEnergyProfile& p, const std::vector<double>& r) {
  std::vector<double> E(p.path.size());
  E[0] = p.initial_energy;
  const double dust = 1e-12 * (1.0 + std::abs(p.capacity));
  for (std::size_t t = 0; t + 1 < p.path.size(); ++t) {
    double next = E[t] + r[t] - p.e[t];
    if (next < 0.0 && next > -dust) next = 0.0;
    E[t + 1] = next;
  }
  return E;
}

double plan_cost(const PathEnergyProfile& p, const std::vector<double>& r) {
  double cost = 0.0;
  for (std::size_t t = 0; t < r.size(); ++t) cost += p.g[t] * r[t];
  return cost;
}

// Over-capacity arcs only block the paths through them, which the solvers
// report per path; every other validation error is fatal.
void require_routable(const Network& net) {
  ValidationReport report = validate(net);
  std::erase_if(report.errors, [](const ValidationIssue& issue) { return issue.code == "e-capacity"; });
  if (report.ok()) return;
  std::string message = "invalid network:";
  for (const auto& issue : report.errors) message += " [" + issue.location + "] " + issue.message + ";";
  throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

PathEnergyProfile energy_profile(const Network& net, std::span<const NodeId> path) {
  PathEnergyProfile profile;
  profile.path.assign(path.begin(), path.end());
  for (NodeId i : path) profile.g.push_back(net.g(i));
  for (int k : net.path_arcs(path)) profile.e.push_back(net.arc(k).e);
  profile.capacity = net.capacity();
  profile.initial_energy = net.initial_energy();
  return profile;
}

// Works on the cumulative recharge C_t = sum_{s<t} r_s. Arrival energy is
// E_t = E1 + C_t - S_t with S_t the cumulative consumption, so every bound on
// E becomes a bound on C, and C must be nondecreasing.
ChargingPlan optimal_charging(const PathEnergyProfile& p) {
  check_profile(p);
  const std::size_t L = p.e.size();
  const double B = p.capacity;
  const double E1 = p.initial_energy;
  const double tol = 1e-12 * (1.0 + std::abs(B));

  std::vector<double> S(L + 1, 0.0);
  for (std::size_t t = 0; t < L; ++t) S[t + 1] = S[t] + p.e[t];

  // lower[t]: E_t >= 0. upper[t] (t >= 1): charge-after at t-1 and arrival
  // at t both stay within B.
  std::vector<double> lower(L + 1), upper(L + 1);
  for (std::size_t t = 0; t <= L; ++t) lower[t] = S[t] - E1;
  upper[0] = B - E1;
  for (std::size_t t = 1; t <= L; ++t) upper[t] = B - E1 + std::min(S[t - 1], S[t]);

  std::vector<double> upper_suffix(L + 2, std::numeric_limits<double>::infinity());
  for (std::size_t t = L + 1; t-- > 0;) {
    upper_suffix[t] = std::min(upper_suffix[t + 1], t <= L ? upper[t] : upper_suffix[t + 1]);
  }
  std::vector<double> lower_prefix(L + 1);
  lower_prefix[0] = std::max(0.0, lower[0]);
  for (std::size_t t = 1; t <= L; ++t) lower_prefix[t] = std::max(lower_prefix[t - 1], lower[t]);

  ChargingPlan plan;
  plan.path = p.path;
  plan.r.assign(L + 1, 0.0);
  double C = 0.0;
  for (std::size_t t = 0; t < L; ++t) {
    if (std::max(C, lower[t + 1]) > upper_suffix[t + 1] + tol) blocked(p.path, t);
    std::size_t j = t + 1;
    while (j < L && !(p.g[j] < p.g[t])) ++j;
    double want = std::min(upper_suffix[t + 1], lower_prefix[j]);
    double target = std::max({C, want, lower[t + 1]});
    plan.r[t] = target - C;
    C = target;
  }
  plan.E = propagate(p, plan.r);
  plan.charge_time = plan_cost(p, plan.r);
  return plan;
}

ChargingPlan optimal_charging_on_path(const Network& net, std::span<const NodeId> path) {
  return optimal_charging(energy_profile(net, path));
}

ChargingPlan charging_oracle_dp(const PathEnergyProfile& p, double grid_step) {
  check_profile(p);
  if (!(grid_step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid_step must be > 0");
  const std::size_t L = p.e.size();
  const double h = grid_step;
  const double B = p.capacity;
  const int K = static_cast<int>(std::floor(B / h + 1e-9));
  constexpr double kInf = std::numeric_limits<double>::infinity();

  auto snap_down = [&](double energy) {
    return std::clamp(static_cast<int>(std::floor(energy / h + 1e-9)), 0, K);
  };

  std::vector<double> cost(K + 1, kInf);
  cost[snap_down(p.initial_energy)] = 0.0;
  // choice[t][level] = (charge-after level at t, arrival level at t)
  std::vector<std::vector<std::pair<int, int>>> choice(L, std::vector<std::pair<int, int>>(K + 1, {-1, -1}));

  for (std::size_t t = 0; t < L; ++t) {
    std::vector<double> next(K + 1, kInf);
    const double g = p.g[t];
    double best = kInf;
    int best_level = -1;
    for (int f = 0; f <= K; ++f) {
      if (cost[f] < kInf) {
        double value = cost[f] - g * f * h;
        if (value < best) {
          best = value;
          best_level = f;
        }
      }
      if (best_level < 0) continue;
      double arrival = f * h - p.e[t];
      if (arrival < -1e-9 || arrival > B + 1e-9) continue;
      int level = snap_down(std::max(arrival, 0.0));
      double candidate = best + g * f * h;
      if (candidate < next[level]) {
        next[level] = candidate;
        choice[t][level] = {f, best_level};
      }
    }
    if (std::all_of(next.begin(), next.end(), [](double c) { return c == kInf; })) blocked(p.path, t);
    cost = std::move(next);
  }

  int level = static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
  ChargingPlan plan;
  plan.path = p.path;
  plan.r.assign(L + 1, 0.0);
  for (std::size_t t = L; t-- > 0;) {
    auto [charged, arrived] = choice[t][level];
    plan.r[t] = (charged - arrived) * h;
    level = arrived;
  }
  plan.E = propagate(p, plan.r);
  plan.charge_time = plan_cost(p, plan.r);
  return plan;
}

ChargingPlan charging_oracle_dp(const Network& net, std::span<const NodeId> path, double grid_step) {
  return charging_oracle_dp(energy_profile(net, path), grid_step);
}

double reduced_arc_cost(const Network& net, const Arc& arc) {
  const double gi = net.g(arc.from);
  const double gj = net.g(arc.to);
  const double K = gi < gj ? net.capacity() - arc.e : 0.0;
  return arc.tau + arc.e * gi + K * (gi - gj);
}

double reduced_arc_cost(const Network& net, NodeId i, NodeId j) {
  auto k = net.find_arc(i, j);
  if (!k) throw Error(ErrorCode::kInvalidArgument, "no arc " + std::to_string(i) + " -> " + std::to_string(j));
  return reduced_arc_cost(net, net.arc(*k));
}

RouteSolution solve_lp_reduction(const Network& net) {
  require_routable(net);
  std::vector<double> weight(net.arc_count());
  for (int k = 0; k < net.arc_count(); ++k) weight[k] = reduced_arc_cost(net, net.arc(k));
  WeightedPath best = min_weight_path(net, weight);

  RouteSolution solution;
  solution.plan = optimal_charging_on_path(net, best.path);
  solution.travel_time = path_travel_time(net, best.path);
  solution.total_time = solution.travel_time + solution.plan.charge_time;
  solution.transformed_objective = best.cost - net.initial_energy() * net.g(net.origin());
  solution.method = "lp";
  return solution;
}

RouteSolution solve_exact(const Network& net, const ExactOptions& options) {
  require_routable(net);
  const double B = net.capacity();
  const double E1 = net.initial_energy();
  const double tol = 1e-12 * (1.0 + std::abs(B));

  // Prefix state: cumulative consumption and the largest lower bound on the
  // cumulative recharge so far. A prefix dies once that bound exceeds the
  // newest upper bound.
  struct Frame {
    double consumed;
    double max_lower;
  };
  std::vector<Frame> stack{{0.0, 0.0}};
  std::vector<Path> paths;
  bool exceeded = false;

  for_each_simple_path(
      net,
      [&](int k) {
        const Frame& top = stack.back();
        double consumed = top.consumed + net.arc(k).e;
        double lower = std::max(top.max_lower, consumed - E1);
        double upper = B - E1 + std::min(top.consumed, consumed);
        if (lower > upper + tol) return false;
        stack.push_back({consumed, lower});
        return true;
      },
      [&](int) { stack.pop_back(); },
      [&](const Path& path) {
        if (paths.size() == options.max_paths) {
          exceeded = true;
          return false;
        }
        paths.push_back(path);
        return true;
      });
  if (exceeded) {
    throw Error(ErrorCode::kPathBudgetExceeded,
                "more than " + std::to_string(options.max_paths) + " feasible simple paths");
  }

  std::vector<std::optional<RouteSolution>> evaluated(paths.size());
  parallel_for(paths.size(), options.threads, [&](std::size_t i) {
    try {
      RouteSolution s;
      s.plan = optimal_charging_on_path(net, paths[i]);
      s.travel_time = path_travel_time(net, paths[i]);
      s.total_time = s.travel_time + s.plan.charge_time;
      s.method = "exact";
      evaluated[i] = std::move(s);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasiblePath) throw;
    }
  });

  // Paths arrive in lexicographic order, so keeping the first of any
  // near-equal totals implements the tie-break.
  const RouteSolution* best = nullptr;
  for (const auto& s : evaluated) {
    if (!s) continue;
    if (!best || s->total_time < best->total_time - kEps * (1.0 + std::abs(best->total_time))) {
      best = &*s;
    }
  }
  if (!best) throw Error(ErrorCode::kNoFeasiblePath, "every origin-destination path is infeasible");
  return *best;
}

bool plan_is_feasible(const PathEnergyProfile& p, const ChargingPlan& plan, double tol) {
  const std::size_t n = p.path.size();
  if (plan.r.size() != n || plan.E.size() != n) return false;
  const double scale = tol * (1.0 + std::abs(p.capacity));
  if (std::abs(plan.E[0] - p.initial_energy) > scale) return false;
  if (std::abs(plan.r.back()) > scale) return false;
  for (std::size_t t = 0; t < n; ++t) {
    if (plan.r[t] < -scale) return false;
    if (plan.E[t] < -scale || plan.E[t] > p.capacity + scale) return false;
    if (t + 1 < n) {
      if (plan.E[t] + plan.r[t] > p.capacity + scale) return false;
      if (std::abs(plan.E[t + 1] - (plan.E[t] + plan.r[t] - p.e[t])) > scale) return false;
    }
  }
  return true;
}

double check_lemma1(const PathEnergyProfile& p, const ChargingPlan& plan) {
  const std::size_t n = p.path.size();
  if (plan.r.size() != n || plan.E.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "plan does not match path");
  }
  const double scale = 1e-9 * (1.0 + std::abs(p.capacity));
  if (std::abs(plan.E[0] - p.initial_energy) > scale) {
    throw Error(ErrorCode::kInvalidArgument, "plan violates the initial energy");
  }
  double lhs = 0.0;
  double rhs = -p.initial_energy * p.g[0];
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (std::abs(plan.E[t + 1] - (plan.E[t] + plan.r[t] - p.e[t])) > scale) {
      throw Error(ErrorCode::kInvalidArgument, "plan violates the energy dynamics at step " + std::to_string(t));
    }
    lhs += (plan.r[t] - p.e[t]) * p.g[t];
    rhs += plan.E[t + 1] * (p.g[t] - p.g[t + 1]);
  }
  return std::abs(lhs - rhs);
}

double check_lemma1(const Network& net, const ChargingPlan& plan) {
  return check_lemma1(energy_profile(net, plan.path), plan);
}

}  // namespace evroute
