#include "evroute/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "evroute/error.hpp"
#include "evroute/paths.hpp"

namespace evroute {
namespace {

std::vector<bool> reachable(const Network& net, NodeId start, bool forward) {
  std::vector<bool> seen(net.node_count() + 1, false);
  std::queue<NodeId> frontier;
  frontier.push(start);
  seen[start] = true;
  while (!frontier.empty()) {
    NodeId i = frontier.front();
    frontier.pop();
    auto arcs = forward ? net.out_arcs(i) : net.in_arcs(i);
    for (int k : arcs) {
      NodeId j = forward ? net.arc(k).to : net.arc(k).from;
      if (!seen[j]) {
        seen[j] = true;
        frontier.push(j);
      }
    }
  }
  return seen;
}

}  // namespace

WeightedPath min_weight_path(const Network& net, std::span<const double> weight) {
  const int n = net.node_count();
  const NodeId source = net.origin();
  const NodeId sink = net.destination();
  if (static_cast<int>(weight.size()) != net.arc_count()) {
    throw Error(ErrorCode::kInvalidArgument, "one weight per arc required");
  }
  auto from_source = reachable(net, source, true);
  auto to_sink = reachable(net, sink, false);
  if (!from_source[sink]) throw Error(ErrorCode::kNoFeasiblePath, "destination unreachable");

  std::vector<int> live_arcs;
  for (int k = 0; k < net.arc_count(); ++k) {
    const Arc& a = net.arc(k);
    if (from_source[a.from] && to_sink[a.from] && from_source[a.to] && to_sink[a.to]) {
      live_arcs.push_back(k);
    }
  }

  // Distances to the sink, relaxed over reversed arcs.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> to_go(n + 1, kInf);
  std::vector<int> next_arc(n + 1, -1);
  to_go[sink] = 0.0;
  NodeId last_relaxed = 0;
  for (int round = 0; round < n; ++round) {
    last_relaxed = 0;
    for (int k : live_arcs) {
      const Arc& a = net.arc(k);
      if (to_go[a.to] == kInf) continue;
      double candidate = to_go[a.to] + weight[k];
      if (candidate < to_go[a.from] - 1e-12 * (1.0 + std::abs(to_go[a.from] == kInf ? 0.0 : to_go[a.from]))) {
        to_go[a.from] = candidate;
        next_arc[a.from] = k;
        last_relaxed = a.from;
      }
    }
    if (last_relaxed == 0) break;
  }
  if (last_relaxed != 0) {
    NodeId v = last_relaxed;
    for (int step = 0; step < n; ++step) v = net.arc(next_arc[v]).to;
    std::vector<int> cycle{v};
    for (NodeId u = net.arc(next_arc[v]).to; u != v; u = net.arc(next_arc[u]).to) cycle.push_back(u);
    cycle.push_back(v);
    std::string text;
    for (std::size_t t = 0; t < cycle.size(); ++t) text += (t ? "->" : "") + std::to_string(cycle[t]);
    throw Error(ErrorCode::kNegativeCycle, "negative-cost cycle " + text, cycle);
  }

  // Lexicographically smallest path over tight arcs.
  auto adjacency = sorted_out_arcs(net);
  std::vector<bool> live(net.arc_count(), false);
  for (int k : live_arcs) live[k] = true;
  auto tight = [&](int k) {
    const Arc& a = net.arc(k);
    double slack = weight[k] + to_go[a.to] - to_go[a.from];
    return std::abs(slack) <= 1e-9 * (1.0 + std::abs(to_go[a.from]));
  };
  std::vector<bool> on_path(n + 1, false);
  Path path{source};
  on_path[source] = true;
  auto dfs = [&](auto&& self, NodeId i) -> bool {
    if (i == sink) return true;
    for (int k : adjacency[i - 1]) {
      NodeId j = net.arc(k).to;
      if (!live[k] || on_path[j] || !tight(k)) continue;
      on_path[j] = true;
      path.push_back(j);
      if (self(self, j)) return true;
      path.pop_back();
      on_path[j] = false;
    }
    return false;
  };
  if (!dfs(dfs, source)) {
    throw Error(ErrorCode::kNoFeasiblePath, "no simple tight path found");
  }
  WeightedPath result{std::move(path), 0.0};
  for (int k : net.path_arcs(result.path)) result.cost += weight[k];
  return result;
}

}  // namespace evroute
