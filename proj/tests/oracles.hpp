#pragma once

// Test-side reference implementations. They deliberately share no code
// with the library beyond the Network value type.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evroute/network.hpp"

namespace oracle {

using evroute::Arc;
using evroute::Network;
using evroute::Path;

inline std::string data_file(const std::string& name) { return std::string(EVROUTE_DATA_DIR) + "/" + name; }

// Iterative DFS over an explicit stack; paths come out in whatever order
// the arc list produces, callers sort if they care.
inline std::vector<Path> all_simple_paths(const Network& net) {
  const int n = net.node_count();
  std::vector<std::vector<int>> succ(n + 1);
  for (const Arc& a : net.arcs()) succ[a.from].push_back(a.to);
  std::vector<Path> out;
  Path path{1};
  std::vector<std::size_t> cursor{0};
  std::vector<char> on(n + 1, 0);
  on[1] = 1;
  while (!path.empty()) {
    int v = path.back();
    if (v == n) {
      out.push_back(path);
      on[v] = 0;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    std::size_t& c = cursor.back();
    if (c == succ[v].size()) {
      on[v] = 0;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    int w = succ[v][c++];
    if (on[w]) continue;
    on[w] = 1;
    path.push_back(w);
    cursor.push_back(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline const Arc& arc_between(const Network& net, int i, int j) {
  for (const Arc& a : net.arcs()) {
    if (a.from == i && a.to == j) return a;
  }
  throw std::logic_error("missing arc");
}

// Fixed-route refuelling by "fill virtually, refund dearer fuel": at every
// node the tank is topped up to B at the local price after returning any
// unused fuel bought at a higher price, and arcs burn the cheapest fuel
// first. Returns the minimum charging time, or nullopt if some arc cannot be
// crossed. Requires e >= 0.
inline std::optional<double> lots_charge_time(const std::vector<double>& g, const std::vector<double>& e, double B,
                                              double E1) {
  std::deque<std::pair<double, double>> tank;  // (price, amount), price ascending
  if (E1 > 0) tank.push_back({0.0, E1});
  double cost = 0.0;
  for (std::size_t t = 0; t < e.size(); ++t) {
    while (!tank.empty() && tank.back().first > g[t]) tank.pop_back();
    double level = 0.0;
    for (auto& lot : tank) level += lot.second;
    if (B - level > 0) tank.push_back({g[t], B - level});
    double need = e[t];
    while (need > 1e-15) {
      if (tank.empty()) return std::nullopt;
      double take = std::min(need, tank.front().second);
      cost += take * tank.front().first;
      tank.front().second -= take;
      need -= take;
      if (tank.front().second <= 1e-15) tank.pop_front();
    }
  }
  return cost;
}

inline std::optional<double> path_charge_time(const Network& net, const Path& path) {
  std::vector<double> g;
  std::vector<double> e;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    g.push_back(net.g(path[t]));
    e.push_back(arc_between(net, path[t], path[t + 1]).e);
  }
  return lots_charge_time(g, e, net.capacity(), net.initial_energy());
}

// Every arc can be driven on a full battery.
inline bool all_arcs_fit(const Network& net) {
  for (const Arc& a : net.arcs()) {
    if (a.e > net.capacity()) return false;
  }
  return true;
}

inline double path_tau(const Network& net, const Path& path) {
  double s = 0.0;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) s += arc_between(net, path[t], path[t + 1]).tau;
  return s;
}

struct Best {
  Path path;
  double total = 0.0;
};

inline std::optional<Best> brute_force_best(const Network& net) {
  std::optional<Best> best;
  for (const Path& p : all_simple_paths(net)) {
    auto charge = path_charge_time(net, p);
    if (!charge) continue;
    double total = path_tau(net, p) + *charge;
    if (!best || total < best->total - 1e-12) best = Best{p, total};
  }
  return best;
}

inline double path_reduced_cost(const Network& net, const Path& path) {
  double s = 0.0;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    const Arc& a = arc_between(net, path[t], path[t + 1]);
    double gi = net.g(a.from);
    double gj = net.g(a.to);
    s += a.tau + a.e * gi + (gi < gj ? (net.capacity() - a.e) * (gi - gj) : 0.0);
  }
  return s;
}

// Random DAG with tau = e = d, d integer in [1, 9], two-tier g, B between
// 0.8 and 2 times the longest arc and occasionally a charged start.
inline Network random_dag(unsigned seed, int max_nodes = 10) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  const int n = pick(3, max_nodes);
  const double p = uni(0.25, 0.6);
  std::vector<std::vector<char>> has(n + 1, std::vector<char>(n + 1, 0));
  for (int j = 2; j <= n; ++j) has[pick(1, j - 1)][j] = 1;
  for (int i = 1; i < n; ++i) {
    bool any = false;
    for (int j = i + 1; j <= n; ++j) any = any || has[i][j];
    if (!any) has[i][pick(i + 1, n)] = 1;
    for (int j = i + 1; j <= n; ++j) {
      if (uni(0, 1) < p) has[i][j] = 1;
    }
  }
  std::vector<Arc> arcs;
  double longest = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!has[i][j]) continue;
      double d = pick(1, 9);
      longest = std::max(longest, d);
      arcs.push_back({i, j, d, d, d});
    }
  }
  std::vector<double> g(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) g[i] = uni(0, 1) < 0.5 ? 0.1 : 1.0;
  double B = std::round(longest * uni(0.8, 2.0) * 10) / 10;
  double E1 = uni(0, 1) < 0.3 ? std::round(uni(0, B) * 10) / 10 : 0.0;
  return Network(n, std::move(arcs), std::move(g), B, E1, evroute::CongestionBlock{});
}

// Smallest seed-derived instances that pass validation, one per index.
inline std::vector<Network> random_suite(int count, unsigned base_seed = 1000) {
  std::vector<Network> out;
  for (unsigned s = base_seed; static_cast<int>(out.size()) < count; ++s) {
    Network net = random_dag(s);
    if (evroute::validate(net).ok()) out.push_back(std::move(net));
  }
  return out;
}

// Congested multi-subflow objective written from the model equations:
// per arc, total time c * d (R/N) / (v_f (1 - (c/N)^p)^q) with the speed
// floored at 1e-6 v_f, plus per-subflow charging with energies e d R / N and
// capacity B / N.
struct SubflowModel {
  double v_f = 1, p = 2, q = 2, R = 1, e_rate = 1;
};

inline std::optional<double> p4_objective(const Network& net, const SubflowModel& m, int N,
                                          const std::vector<std::pair<Path, int>>& routes) {
  std::vector<std::vector<int>> load(net.node_count() + 1, std::vector<int>(net.node_count() + 1, 0));
  double total = 0.0;
  for (const auto& [path, count] : routes) {
    if (count == 0) continue;
    std::vector<double> g;
    std::vector<double> e;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      load[path[t]][path[t + 1]] += count;
      g.push_back(net.g(path[t]));
      e.push_back(m.e_rate * *arc_between(net, path[t], path[t + 1]).d * m.R / N);
    }
    auto c = lots_charge_time(g, e, net.capacity() / N, net.initial_energy() / N);
    if (!c) return std::nullopt;
    total += count * *c;
  }
  for (const Arc& a : net.arcs()) {
    int c = load[a.from][a.to];
    if (!c) continue;
    double y = static_cast<double>(c) / N;
    double v = std::max(m.v_f * std::pow(1 - std::pow(y, m.p), m.q), 1e-6 * m.v_f);
    total += c * *a.d * m.R / N / v;
  }
  return total;
}

// One arc's term of the aggregated flow objective.
inline double flow_arc_term(double x, double d, double gi, double gj, double B, const SubflowModel& m) {
  double v = std::max(m.v_f * std::pow(1 - std::pow(x, m.p), m.q), 1e-6 * m.v_f);
  double e = m.e_rate * d * m.R;
  double term = d * x * m.R / v + e * gi * x;
  if (gi < gj) term += (B - e) * x * (gi - gj);
  return term;
}

}  // namespace oracle
