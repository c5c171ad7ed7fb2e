#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "evroute/network.hpp"

namespace evroute {

/// Out-arc indices of every node, ordered by head node id, so that a
/// depth-first walk visits paths in lexicographic node order.
std::vector<std::vector<int>> sorted_out_arcs(const Network& net);

/// Depth-first enumeration of simple origin -> destination paths in
/// lexicographic order.
///   enter(arc) -> bool   accept extending the current prefix by `arc`
///   leave(arc)           undo a previously accepted enter
///   visit(path) -> bool  called on each complete path; false stops the walk
template <class Enter, class Leave, class Visit>
void for_each_simple_path(const Network& net, Enter&& enter, Leave&& leave, Visit&& visit) {
  const auto adjacency = sorted_out_arcs(net);
  const NodeId target = net.destination();
  std::vector<bool> on_path(net.node_count() + 1, false);
  Path prefix{net.origin()};
  on_path[net.origin()] = true;
  bool stop = false;

  auto recurse = [&](auto&& self, NodeId i) -> void {
    if (i == target) {
      if (!visit(static_cast<const Path&>(prefix))) stop = true;
      return;
    }
    for (int k : adjacency[i - 1]) {
      if (stop) return;
      NodeId j = net.arc(k).to;
      if (on_path[j]) continue;
      if (!enter(k)) continue;
      on_path[j] = true;
      prefix.push_back(j);
      self(self, j);
      prefix.pop_back();
      on_path[j] = false;
      leave(k);
    }
  };
  if (net.origin() == target) {
    visit(static_cast<const Path&>(prefix));
    return;
  }
  recurse(recurse, net.origin());
}

/// All simple origin -> destination paths, lexicographic. Throws
/// Error{kPathBudgetExceeded} once more than `limit` paths exist.
std::vector<Path> enumerate_simple_paths(const Network& net, std::size_t limit = 100000);

/// Total travel time along a node sequence.
double path_travel_time(const Network& net, const Path& path);

}  // namespace evroute
