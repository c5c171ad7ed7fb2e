#pragma once

#include <span>

#include "evroute/network.hpp"

namespace evroute {

struct WeightedPath {
  Path path;
  double cost = 0.0;
};

/// Minimum-weight origin -> destination path under arbitrary (possibly
/// negative) arc weights, indexed like net.arcs(). Label-correcting
/// (Bellman-Ford rounds); nodes that cannot lie on an origin -> destination
/// walk are ignored. Among minimum-weight paths the lexicographically
/// smallest node sequence is returned.
///
/// Throws Error{kNegativeCycle} with the cycle's nodes as witness, and
/// Error{kNoFeasiblePath} when the destination is unreachable.
WeightedPath min_weight_path(const Network& net, std::span<const double> weight);

}  // namespace evroute
