#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evroute/congestion.hpp"
#include "evroute/network.hpp"
#include "evroute/single_vehicle.hpp"

namespace evroute {

struct RouteShare {
  Path path;
  int count = 0;
  ChargingPlan plan;  // one subflow's plan; identical subflows share it
};

struct SubflowAssignment {
  std::vector<RouteShare> routes;  // in candidate order, count > 0 only
  std::vector<int> counts;         // one per candidate path
  double travel_time_total = 0.0;
  double charge_time_total = 0.0;
  double objective = 0.0;          // travel + charging actually incurred
  std::optional<double> transformed_objective;
};

struct AssignmentSearchStats {
  std::uint64_t assignments_evaluated = 0;
  std::uint64_t feasible_count = 0;
  bool budget_exceeded = false;
  double elapsed_seconds = 0.0;
};

struct MultiOptions {
  std::uint64_t budget = 1000000;
  int threads = 1;
  /// Defaults to the even split of B and E1.
  std::optional<SubflowParams> subflow;
};

struct MultiResult {
  SubflowAssignment assignment;
  AssignmentSearchStats stats;
};

/// Simple origin -> destination paths whose every arc has subflow energy
/// within the subflow capacity, in lexicographic order.
std::vector<Path> candidate_paths(const Network& net, const CongestionParams& params, const SubflowParams& subflow);

/// Energy profile of one subflow along `path`.
PathEnergyProfile subflow_profile(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                                  const Path& path);

/// Primal objective of a multiset given as (path, count) pairs summing to N.
/// Travel times use the aggregate per-arc load; each subflow is charged with
/// the canonical plan. Throws Error{kInfeasiblePath} if some route cannot be
/// charged.
SubflowAssignment evaluate_p4(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                              const std::vector<std::pair<Path, int>>& multiset);

/// As evaluate_p4 and additionally fills transformed_objective: congested
/// travel plus, per subflow arc, e*g_i + (B_k - e)(g_i - g_j) when
/// g_i < g_j, minus E1_k*g_1 per subflow.
SubflowAssignment evaluate_p5(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                              const std::vector<std::pair<Path, int>>& multiset);

/// Exhaustive search over multisets of candidate paths. Multisets are
/// visited as nondecreasing index sequences in lexicographic order and ties
/// keep the first. When the multiset count exceeds the budget, the first
/// `budget` multisets are searched and stats.budget_exceeded is set.
/// Throws Error{kNoFeasibleAssignment}, or Error{kBudgetExceeded} if the
/// truncated search found nothing feasible.
MultiResult solve_p4(const Network& net, const CongestionParams& params, const MultiOptions& options = {});

/// Same search space ranked by the transformed objective.
MultiResult solve_p5(const Network& net, const CongestionParams& params, const MultiOptions& options = {});

/// C(paths + N - 1, N), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t paths, std::uint64_t N);

}  // namespace evroute
