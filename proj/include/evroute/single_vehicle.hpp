#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evroute/network.hpp"

namespace evroute {

/// Per-node recharge amounts and arrival energies along one path.
/// r[t] and E[t] refer to path[t]; E[0] is the initial energy and r.back()
/// is always 0.
struct ChargingPlan {
  Path path;
  std::vector<double> r;
  std::vector<double> E;
  double charge_time = 0.0;
};

struct RouteSolution {
  ChargingPlan plan;
  double travel_time = 0.0;
  double total_time = 0.0;
  /// Reduced-cost objective of the charging-policy LP, when that solver ran.
  std::optional<double> transformed_objective;
  std::string method;
};

/// Energy data along a fixed path, decoupled from Network so that the same
/// charging code serves single vehicles and scaled subflows.
struct PathEnergyProfile {
  Path path;
  std::vector<double> g;  // one per path node
  std::vector<double> e;  // one per path arc
  double capacity = 0.0;
  double initial_energy = 0.0;
};

PathEnergyProfile energy_profile(const Network& net, std::span<const NodeId> path);

/// Minimum-charge-time plan on a fixed path. Among the (generally many)
/// optimal plans this returns the just-in-time one: at each node buy only
/// what is needed to reach the next strictly cheaper node, or fill up when
/// that node is out of range.
/// Throws Error{kInfeasiblePath} naming the first blocking arc.
ChargingPlan optimal_charging(const PathEnergyProfile& profile);
ChargingPlan optimal_charging_on_path(const Network& net, std::span<const NodeId> path);

/// Exhaustive dynamic program over energy levels that are multiples of
/// grid_step; arrival energies are snapped down to the grid and recharges
/// are whole grid steps. Used as an independent check of optimal_charging.
ChargingPlan charging_oracle_dp(const PathEnergyProfile& profile, double grid_step);
ChargingPlan charging_oracle_dp(const Network& net, std::span<const NodeId> path, double grid_step);

/// tau + e*g_i + K*(g_i - g_j) with K = B - e when g_i < g_j, else 0.
double reduced_arc_cost(const Network& net, NodeId i, NodeId j);
double reduced_arc_cost(const Network& net, const Arc& arc);

/// Routes on the minimum reduced-cost path, then charges it optimally. The
/// reported total_time is the real elapsed time of that plan; the reduced
/// objective (path reduced cost - E1*g_1) is kept in transformed_objective.
RouteSolution solve_lp_reduction(const Network& net);

struct ExactOptions {
  std::size_t max_paths = 100000;
  int threads = 1;
};

/// Exhaustive minimum elapsed time over all simple paths with energy-prefix
/// pruning. Ties are broken by lexicographic node sequence.
RouteSolution solve_exact(const Network& net, const ExactOptions& options = {});

/// |sum (r_t - e_t) g_t - (sum E_{t+1} (g_t - g_{t+1}) - E_1 g_1)| along a
/// plan. The identity follows from the energy dynamics alone, so the
/// residual is ~0 for every dynamics-consistent plan.
/// Throws Error{kInvalidArgument} if the plan violates the dynamics.
double check_lemma1(const PathEnergyProfile& profile, const ChargingPlan& plan);
double check_lemma1(const Network& net, const ChargingPlan& plan);

/// Checks the ChargingPlan invariants (dynamics, 0 <= E <= B, E + r <= B,
/// r >= 0, r.back() == 0) within tolerance.
bool plan_is_feasible(const PathEnergyProfile& profile, const ChargingPlan& plan, double tol = 1e-9);

}  // namespace evroute
