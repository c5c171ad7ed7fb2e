#pragma once

#include <optional>
#include <vector>

#include "evroute/congestion.hpp"
#include "evroute/network.hpp"
#include "evroute/single_vehicle.hpp"

namespace evroute {

/// Aggregated single-commodity arc flow, one value per arc in net.arcs()
/// order. The N of the congestion parameters plays no role here.
struct FlowPattern {
  std::vector<double> x;
  double objective = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Objective after each accepted step, starting with the initial point.
  std::vector<double> history;
};

/// sum over arcs of d x R / speed(x) + e_rate g_i d R x, plus
/// (B - e_rate d R) x (g_i - g_j) when g_i < g_j. Throws
/// Error{kInvalidArgument} if x violates bounds or conservation.
double flow_objective(const Network& net, const CongestionParams& params, const std::vector<double>& x);

/// Travel part of flow_objective only.
double flow_travel_time(const Network& net, const CongestionParams& params, const std::vector<double>& x);

/// Analytic partial derivatives of flow_objective. Throws
/// Error{kClampedRegion} when some arc sits at the jam clamp.
std::vector<double> flow_gradient(const Network& net, const CongestionParams& params, const std::vector<double>& x);

struct FlowOptions {
  double tol = 1e-6;
  int max_iters = 100000;
};

/// Pairwise conditional-gradient method over a weighted set of paths:
/// linearized costs are minimized by the label-correcting shortest path,
/// weight moves from the dearest active path to that path, and the step
/// length comes from bisection on the directional derivative. Stops once the duality gap is <= tol; on
/// max_iters the best iterate is returned with converged = false.
FlowPattern solve_flow(const Network& net, const CongestionParams& params, const FlowOptions& options = {});

struct GridOracleResult {
  FlowPattern pattern;
  std::vector<Path> routes;
  std::vector<double> shares;
  /// Largest |objective change| / step between the best grid point and its
  /// grid neighbours.
  double lipschitz = 0.0;
};

/// Exhaustive search over route shares on a simplex grid of resolution
/// `step`. Requires every origin -> destination path to be one of at most
/// three arc-disjoint routes, else Error{kTopologyUnsupported}.
GridOracleResult flow_grid_oracle(const Network& net, const CongestionParams& params, double step);

struct PathShare {
  Path path;
  double share = 0.0;
};

/// Peels the path of largest bottleneck flow until nothing is left.
/// Throws Error{kDecompositionFailure} if flow remains after n*m peels.
std::vector<PathShare> decompose_flow(const Network& net, const std::vector<double>& x);

struct FlowChargingState {
  std::vector<PathShare> paths;
  std::vector<ChargingPlan> plans;  // canonical plan per path, before scaling
  std::vector<double> r;            // per node, index i - 1
  std::vector<double> E;            // per arc: energy arriving at the head
  double charge_time = 0.0;
  /// Smallest arc energy; negative when pooling at a node leaves some
  /// outgoing arc short.
  double min_arc_energy = 0.0;
};

/// Charges each decomposed path with its canonical plan (arc energies
/// e_rate d R, capacity B) scaled by its share, sums the recharges per node,
/// then propagates pooled node energy onto out-arcs in proportion to flow.
FlowChargingState recover_flow_charging(const Network& net, const CongestionParams& params,
                                        const std::vector<double>& x);

/// |sum r_i g_i - (sum e_ij x_ij g_i + sum E_ij (g_i - g_j) - E1 g_1)|.
double check_lemma5(const Network& net, const CongestionParams& params, const std::vector<double>& x,
                    const FlowChargingState& state);

struct SubflowFlowResult {
  std::vector<std::vector<double>> x;  // per subflow, per arc
  double objective = 0.0;
  int sweeps = 0;
  bool converged = false;
};

/// Relaxed multi-commodity problem with per-subflow battery data: block
/// conditional-gradient over subflows, round-robin, at most 100 sweeps.
/// Identical subflows are solved through the aggregated problem.
SubflowFlowResult solve_flow_subflows(const Network& net, const CongestionParams& params,
                                      const std::vector<SubflowParams>& subflows, const FlowOptions& options = {});

}  // namespace evroute
