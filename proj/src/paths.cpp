#include "evroute/paths.hpp"

#include <string>

#include "evroute/error.hpp"

namespace evroute {

std::vector<std::vector<int>> sorted_out_arcs(const Network& net) {
  std::vector<std::vector<int>> adjacency(net.node_count());
  for (NodeId i = 1; i <= net.node_count(); ++i) {
    auto arcs = net.out_arcs(i);
    adjacency[i - 1].assign(arcs.begin(), arcs.end());
    std::stable_sort(adjacency[i - 1].begin(), adjacency[i - 1].end(),
                     [&](int a, int b) { return net.arc(a).to < net.arc(b).to; });
  }
  return adjacency;
}

std::vector<Path> enumerate_simple_paths(const Network& net, std::size_t limit) {
  std::vector<Path> paths;
  bool exceeded = false;
  for_each_simple_path(
      net, [](int) { return true; }, [](int) {},
      [&](const Path& p) {
        if (paths.size() == limit) {
          exceeded = true;
          return false;
        }
        paths.push_back(p);
        return true;
      });
  if (exceeded) {
    throw Error(ErrorCode::kPathBudgetExceeded,
                "more than " + std::to_string(limit) + " simple paths");
  }
  return paths;
}

double path_travel_time(const Network& net, const Path& path) {
  double total = 0.0;
  for (int k : net.path_arcs(path)) total += net.arc(k).tau;
  return total;
}

}  // namespace evroute
