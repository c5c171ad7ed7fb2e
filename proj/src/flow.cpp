#include "evroute/flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "evroute/error.hpp"
#include "evroute/paths.hpp"
#include "evroute/shortest_path.hpp"

namespace evroute {
namespace {

double distance_of(const Arc& arc) {
  if (!arc.d) {
    throw Error(ErrorCode::kInvalidArgument,
                "arc " + std::to_string(arc.from) + " -> " + std::to_string(arc.to) + " has no distance");
  }
  return *arc.d;
}

double raw_speed(double y, const CongestionParams& params) {
  y = std::clamp(y, 0.0, 1.0);
  return params.v_f * std::pow(1.0 - std::pow(y, params.p), params.q);
}

bool clamped(double y, const CongestionParams& params) { return raw_speed(y, params) < params.speed_floor(); }

// Travel time of the whole flow on one arc at load ratio y.
double arc_time(double y, double d, const CongestionParams& params) {
  if (y <= 0.0) return 0.0;
  return d * params.R * y / clamped_speed(y, params);
}

double arc_time_slope(double y, double d, const CongestionParams& params) {
  y = std::clamp(y, 0.0, 1.0);
  if (clamped(y, params)) return d * params.R / params.speed_floor();
  double yp = std::pow(y, params.p);
  double base = 1.0 - yp;
  return d * params.R / params.v_f * (base + params.p * params.q * yp) / std::pow(base, params.q + 1.0);
}

// Load-independent part of an arc's cost per unit of flow: energy bought at
// the tail plus the fill-up term when the head charges slower.
double linear_cost(const Network& net, const Arc& arc, double energy, double capacity) {
  double gi = net.g(arc.from);
  double gj = net.g(arc.to);
  double c = energy * gi;
  if (gi < gj) c += (capacity - energy) * (gi - gj);
  return c;
}

void check_flow(const Network& net, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != net.arc_count()) {
    throw Error(ErrorCode::kInvalidArgument, "flow has " + std::to_string(x.size()) + " entries, expected " +
                                                 std::to_string(net.arc_count()));
  }
  std::vector<double> balance(net.node_count() + 1, 0.0);
  for (int k = 0; k < net.arc_count(); ++k) {
    if (!(x[k] >= -1e-9) || x[k] > 1.0 + 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "flow on arc " + std::to_string(net.arc(k).from) + " -> " +
                                                   std::to_string(net.arc(k).to) + " outside [0, 1]");
    }
    balance[net.arc(k).from] += x[k];
    balance[net.arc(k).to] -= x[k];
  }
  for (NodeId i = 1; i <= net.node_count(); ++i) {
    double want = i == net.origin() ? 1.0 : (i == net.destination() ? -1.0 : 0.0);
    if (std::abs(balance[i] - want) > 1e-7) {
      throw Error(ErrorCode::kInvalidArgument, "flow conservation violated at node " + std::to_string(i));
    }
  }
}

std::vector<double> unit_path_flow(const Network& net, const Path& path) {
  std::vector<double> s(net.arc_count(), 0.0);
  for (int k : net.path_arcs(path)) s[k] = 1.0;
  return s;
}

// A path carrying `weight` units of the unit flow.
struct ActivePath {
  Path path;
  std::vector<int> arcs;
  double weight = 0.0;
};

ActivePath active_path(const Network& net, Path path, double weight) {
  std::vector<int> arcs = net.path_arcs(path);
  return {std::move(path), std::move(arcs), weight};
}

std::vector<double> flow_of(const Network& net, const std::vector<ActivePath>& active) {
  std::vector<double> x(net.arc_count(), 0.0);
  for (const ActivePath& p : active) {
    for (int k : p.arcs) x[k] += p.weight;
  }
  return x;
}

struct FwOutcome {
  std::vector<ActivePath> active;
  std::vector<double> x;
  double objective = 0.0;
  double gap = 0.0;
  double initial_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

using Objective = std::function<double(const std::vector<double>&)>;
using Gradient = std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Pairwise conditional gradient over unit origin -> destination flows kept
// as a weighted set of paths: each step moves weight from the dearest
// active path to the linearized shortest path.
FwOutcome frank_wolfe(const Network& net, const Objective& f, const Gradient& grad, std::vector<ActivePath> active,
                      double tol, int max_iters) {
  FwOutcome out;
  const std::size_t m = net.arc_count();
  std::vector<double> x = flow_of(net, active);
  std::vector<double> g(m);
  std::vector<double> trial(m);
  std::vector<double> dir(m);
  auto cost = [&](const std::vector<int>& arcs) {
    double sum = 0.0;
    for (int k : arcs) sum += g[k];
    return sum;
  };
  auto directional = [&](double gamma) {
    for (std::size_t k = 0; k < m; ++k) trial[k] = x[k] + gamma * dir[k];
    grad(trial, g);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += g[k] * dir[k];
    return sum;
  };

  double fx = f(x);
  out.history.push_back(fx);
  for (;;) {
    grad(x, g);
    ActivePath s = active_path(net, min_weight_path(net, g).path, 0.0);
    double gx = 0.0;
    for (std::size_t k = 0; k < m; ++k) gx += g[k] * x[k];
    out.gap = gx - cost(s.arcs);
    if (out.iterations == 0) out.initial_gap = out.gap;
    if (out.gap <= tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iters) break;

    std::size_t away = 0;
    double away_cost = -std::numeric_limits<double>::infinity();
    std::size_t toward = active.size();
    for (std::size_t a = 0; a < active.size(); ++a) {
      double c = cost(active[a].arcs);
      if (c > away_cost) {
        away_cost = c;
        away = a;
      }
      if (active[a].path == s.path) toward = a;
    }
    if (toward == active.size()) active.push_back(std::move(s));

    std::fill(dir.begin(), dir.end(), 0.0);
    for (int k : active[toward].arcs) dir[k] += 1.0;
    for (int k : active[away].arcs) dir[k] -= 1.0;
    const double gamma_max = active[away].weight;
    double gamma = gamma_max;
    if (directional(gamma_max) > 0.0) {
      double lo = 0.0;
      double hi = gamma_max;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (directional(mid) > 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      gamma = lo;
    }
    // Candidate iterates are rebuilt from the path weights, so the accepted
    // objective is exactly that of the stored point.
    auto step = [&](double gm) {
      std::vector<ActivePath> next = active;
      next[toward].weight += gm;
      next[away].weight = gm == gamma_max ? 0.0 : next[away].weight - gm;
      std::erase_if(next, [](const ActivePath& p) { return p.weight <= 0.0; });
      return next;
    };
    std::vector<ActivePath> next;
    std::vector<double> x_new;
    double f_new = 0.0;
    for (;;) {
      next = step(gamma);
      x_new = flow_of(net, next);
      f_new = f(x_new);
      if (f_new <= fx || gamma < 1e-16) break;
      gamma *= 0.5;
    }
    ++out.iterations;
    if (!(f_new <= fx)) break;
    active = std::move(next);
    x = std::move(x_new);
    fx = f_new;
    out.history.push_back(fx);
  }
  out.active = std::move(active);
  out.x = std::move(x);
  out.objective = fx;
  return out;
}

// Aggregated objective with an explicit capacity in the fill-up term.
struct AggregatedModel {
  const Network& net;
  const CongestionParams& params;
  std::vector<double> d;
  std::vector<double> lin;

  AggregatedModel(const Network& n, const CongestionParams& p, double capacity) : net(n), params(p) {
    for (const Arc& arc : net.arcs()) {
      double dist = distance_of(arc);
      d.push_back(dist);
      lin.push_back(linear_cost(net, arc, p.e_rate * dist * p.R, capacity));
    }
  }

  double travel(const std::vector<double>& x) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += arc_time(x[k], d[k], params);
    return sum;
  }

  double value(const std::vector<double>& x) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += arc_time(x[k], d[k], params) + lin[k] * x[k];
    return sum;
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    g.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = arc_time_slope(x[k], d[k], params) + lin[k];
  }
};

FlowPattern solve_aggregated(const Network& net, const CongestionParams& params, double capacity,
                             const FlowOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be > 0");
  AggregatedModel model(net, params, capacity);
  std::vector<double> g;
  model.gradient(std::vector<double>(net.arc_count(), 0.0), g);
  std::vector<ActivePath> start{active_path(net, min_weight_path(net, g).path, 1.0)};
  FwOutcome fw = frank_wolfe(
      net, [&](const std::vector<double>& x) { return model.value(x); },
      [&](const std::vector<double>& x, std::vector<double>& out) { model.gradient(x, out); }, std::move(start),
      options.tol, options.max_iters);
  FlowPattern pattern;
  pattern.x = std::move(fw.x);
  pattern.objective = fw.objective;
  pattern.gap = fw.gap;
  pattern.iterations = fw.iterations;
  pattern.converged = fw.converged;
  pattern.history = std::move(fw.history);
  return pattern;
}

// Lexicographically first simple origin -> destination path over arcs whose
// residual is at least `threshold`.
std::optional<Path> first_path(const Network& net, const std::vector<std::vector<int>>& adjacency,
                               const std::vector<double>& residual, double threshold) {
  std::vector<bool> seen(net.node_count() + 1, false);
  Path path{net.origin()};
  seen[net.origin()] = true;
  auto dfs = [&](auto&& self, NodeId i) -> bool {
    if (i == net.destination()) return true;
    for (int k : adjacency[i - 1]) {
      NodeId j = net.arc(k).to;
      if (seen[j] || residual[k] < threshold) continue;
      seen[j] = true;
      path.push_back(j);
      if (self(self, j)) return true;
      path.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, net.origin())) return std::nullopt;
  return path;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    if (std::abs(a[pivot][c]) < 1e-14) {
      throw Error(ErrorCode::kDecompositionFailure, "arc energy balance is singular (circulating flow)");
    }
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      double factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace

double flow_objective(const Network& net, const CongestionParams& params, const std::vector<double>& x) {
  check_flow(net, x);
  return AggregatedModel(net, params, net.capacity()).value(x);
}

double flow_travel_time(const Network& net, const CongestionParams& params, const std::vector<double>& x) {
  check_flow(net, x);
  return AggregatedModel(net, params, net.capacity()).travel(x);
}

std::vector<double> flow_gradient(const Network& net, const CongestionParams& params, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != net.arc_count()) {
    throw Error(ErrorCode::kInvalidArgument, "flow size does not match arc count");
  }
  for (int k = 0; k < net.arc_count(); ++k) {
    if (x[k] >= 1.0 || clamped(x[k], params)) {
      throw Error(ErrorCode::kClampedRegion, "arc " + std::to_string(net.arc(k).from) + " -> " +
                                                 std::to_string(net.arc(k).to) + " is at jam density",
                  {net.arc(k).from, net.arc(k).to});
    }
  }
  std::vector<double> g;
  AggregatedModel(net, params, net.capacity()).gradient(x, g);
  return g;
}

FlowPattern solve_flow(const Network& net, const CongestionParams& params, const FlowOptions& options) {
  require_valid(net);
  params.check();
  return solve_aggregated(net, params, net.capacity(), options);
}

GridOracleResult flow_grid_oracle(const Network& net, const CongestionParams& params, double step) {
  require_valid(net);
  params.check();
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorCode::kInvalidArgument, "step must be in (0, 1]");
  const int M = static_cast<int>(std::lround(1.0 / step));
  if (std::abs(M * step - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "1/step must be an integer");

  std::vector<Path> routes;
  try {
    routes = enumerate_simple_paths(net, 3);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPathBudgetExceeded) throw;
    throw Error(ErrorCode::kTopologyUnsupported, "more than three origin-destination routes");
  }
  std::vector<int> used(net.arc_count(), 0);
  for (const Path& route : routes) {
    for (int k : net.path_arcs(route)) {
      if (used[k]++) throw Error(ErrorCode::kTopologyUnsupported, "routes share an arc");
    }
  }
  const std::size_t R = routes.size();
  std::vector<std::vector<double>> indicator;
  for (const Path& route : routes) indicator.push_back(unit_path_flow(net, route));

  auto flow_of = [&](const std::vector<int>& units) {
    std::vector<double> x(net.arc_count(), 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      double share = static_cast<double>(units[r]) / M;
      for (int k = 0; k < net.arc_count(); ++k) x[k] += share * indicator[r][k];
    }
    return x;
  };
  AggregatedModel model(net, params, net.capacity());

  std::vector<int> units(R, 0);
  std::vector<int> best_units;
  double best = std::numeric_limits<double>::infinity();
  int points = 0;
  // Compositions of M into R parts, first share ascending.
  auto visit = [&](auto&& self, std::size_t r, int left) -> void {
    if (r + 1 == R) {
      units[r] = left;
      double value = model.value(flow_of(units));
      ++points;
      if (value < best) {
        best = value;
        best_units = units;
      }
      return;
    }
    for (int u = 0; u <= left; ++u) {
      units[r] = u;
      self(self, r + 1, left - u);
    }
  };
  visit(visit, 0, M);

  GridOracleResult result;
  result.routes = routes;
  for (int u : best_units) result.shares.push_back(static_cast<double>(u) / M);
  for (std::size_t a = 0; a < R; ++a) {
    for (std::size_t b = 0; b < R; ++b) {
      if (a == b || best_units[b] == 0) continue;
      std::vector<int> neighbour = best_units;
      ++neighbour[a];
      --neighbour[b];
      result.lipschitz = std::max(result.lipschitz, std::abs(model.value(flow_of(neighbour)) - best) / step);
    }
  }
  result.pattern.x = flow_of(best_units);
  result.pattern.objective = best;
  result.pattern.iterations = points;
  result.pattern.converged = true;
  result.pattern.history = {best};
  return result;
}

std::vector<PathShare> decompose_flow(const Network& net, const std::vector<double>& x) {
  check_flow(net, x);
  constexpr double kDust = 1e-9;
  const auto adjacency = sorted_out_arcs(net);
  std::vector<double> residual(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) residual[k] = x[k] > kDust ? x[k] : 0.0;

  std::vector<PathShare> out;
  const long max_peels = static_cast<long>(net.node_count()) * std::max(1, net.arc_count());
  for (long peel = 0; peel < max_peels; ++peel) {
    // Widest-path labels; cycles never widen a bottleneck, so n rounds suffice.
    std::vector<double> width(net.node_count() + 1, 0.0);
    width[net.origin()] = std::numeric_limits<double>::infinity();
    for (int round = 0; round < net.node_count(); ++round) {
      bool changed = false;
      for (int k = 0; k < net.arc_count(); ++k) {
        if (residual[k] <= kDust) continue;
        const Arc& arc = net.arc(k);
        double w = std::min(width[arc.from], residual[k]);
        if (w > width[arc.to]) {
          width[arc.to] = w;
          changed = true;
        }
      }
      if (!changed) break;
    }
    double bottleneck = width[net.destination()];
    if (bottleneck <= kDust) break;
    auto path = first_path(net, adjacency, residual, bottleneck);
    if (!path) break;
    double share = std::numeric_limits<double>::infinity();
    auto arcs = net.path_arcs(*path);
    for (int k : arcs) share = std::min(share, residual[k]);
    for (int k : arcs) {
      residual[k] -= share;
      if (residual[k] <= kDust) residual[k] = 0.0;
    }
    out.push_back({std::move(*path), share});
  }
  for (int k = 0; k < net.arc_count(); ++k) {
    if (residual[k] > kDust) {
      throw Error(ErrorCode::kDecompositionFailure,
                  "flow " + std::to_string(residual[k]) + " left on arc " + std::to_string(net.arc(k).from) +
                      " -> " + std::to_string(net.arc(k).to),
                  {net.arc(k).from, net.arc(k).to});
    }
  }
  return out;
}

FlowChargingState recover_flow_charging(const Network& net, const CongestionParams& params,
                                        const std::vector<double>& x) {
  params.check();
  FlowChargingState state;
  state.paths = decompose_flow(net, x);
  state.r.assign(net.node_count(), 0.0);
  std::vector<double> energy(net.arc_count());
  for (int k = 0; k < net.arc_count(); ++k) energy[k] = params.e_rate * distance_of(net.arc(k)) * params.R;

  for (const PathShare& ps : state.paths) {
    PathEnergyProfile profile;
    profile.path = ps.path;
    for (NodeId i : ps.path) profile.g.push_back(net.g(i));
    for (int k : net.path_arcs(ps.path)) profile.e.push_back(energy[k]);
    profile.capacity = net.capacity();
    profile.initial_energy = net.initial_energy();
    ChargingPlan plan = optimal_charging(profile);
    for (std::size_t t = 0; t < ps.path.size(); ++t) state.r[ps.path[t] - 1] += ps.share * plan.r[t];
    state.plans.push_back(std::move(plan));
  }

  // Unknowns are the arc energies on arcs that carry flow:
  // E_a - (x_a / out_i) * sum_{h into i} E_h = (r_i + [i = 1] E1) x_a / out_i - e_a x_a.
  constexpr double kDust = 1e-12;
  std::vector<int> support;
  std::vector<int> position(net.arc_count(), -1);
  for (int k = 0; k < net.arc_count(); ++k) {
    if (x[k] > kDust) {
      position[k] = static_cast<int>(support.size());
      support.push_back(k);
    }
  }
  std::vector<double> outflow(net.node_count() + 1, 0.0);
  for (int k : support) outflow[net.arc(k).from] += x[k];

  const std::size_t s = support.size();
  std::vector<std::vector<double>> a(s, std::vector<double>(s, 0.0));
  std::vector<double> b(s, 0.0);
  for (std::size_t row = 0; row < s; ++row) {
    const int k = support[row];
    const NodeId i = net.arc(k).from;
    const double split = x[k] / outflow[i];
    a[row][row] = 1.0;
    for (int h : net.in_arcs(i)) {
      if (position[h] >= 0) a[row][position[h]] -= split;
    }
    double pooled = state.r[i - 1] + (i == net.origin() ? net.initial_energy() : 0.0);
    b[row] = pooled * split - energy[k] * x[k];
  }
  std::vector<double> solved = s ? solve_dense(std::move(a), std::move(b)) : std::vector<double>{};
  state.E.assign(net.arc_count(), 0.0);
  for (std::size_t row = 0; row < s; ++row) state.E[support[row]] = solved[row];

  for (NodeId i = 1; i <= net.node_count(); ++i) state.charge_time += state.r[i - 1] * net.g(i);
  if (!support.empty()) {
    state.min_arc_energy = state.E[support[0]];
    for (int k : support) state.min_arc_energy = std::min(state.min_arc_energy, state.E[k]);
  }
  return state;
}

double check_lemma5(const Network& net, const CongestionParams& params, const std::vector<double>& x,
                    const FlowChargingState& state) {
  double lhs = 0.0;
  for (NodeId i = 1; i <= net.node_count(); ++i) lhs += state.r[i - 1] * net.g(i);
  double rhs = -net.initial_energy() * net.g(net.origin());
  for (int k = 0; k < net.arc_count(); ++k) {
    const Arc& arc = net.arc(k);
    double e = params.e_rate * distance_of(arc) * params.R;
    rhs += e * x[k] * net.g(arc.from) + state.E[k] * (net.g(arc.from) - net.g(arc.to));
  }
  return std::abs(lhs - rhs);
}

SubflowFlowResult solve_flow_subflows(const Network& net, const CongestionParams& params,
                                      const std::vector<SubflowParams>& subflows, const FlowOptions& options) {
  require_valid(net);
  params.check();
  const int N = params.N;
  if (static_cast<int>(subflows.size()) != N) {
    throw Error(ErrorCode::kInvalidArgument, "expected one subflow description per subflow");
  }
  SubflowFlowResult result;
  const bool identical = std::all_of(subflows.begin(), subflows.end(), [&](const SubflowParams& s) {
    return std::abs(s.capacity - subflows[0].capacity) <= kEps &&
           std::abs(s.initial_energy - subflows[0].initial_energy) <= kEps;
  });
  if (identical) {
    FlowPattern agg = solve_aggregated(net, params, N * subflows[0].capacity, options);
    result.x.assign(N, agg.x);
    result.objective = agg.objective;
    result.sweeps = 0;
    result.converged = agg.converged;
    return result;
  }

  const int m = net.arc_count();
  std::vector<double> d(m);
  for (int k = 0; k < m; ++k) d[k] = distance_of(net.arc(k));
  std::vector<std::vector<double>> lin(N, std::vector<double>(m));
  for (int s = 0; s < N; ++s) {
    for (int k = 0; k < m; ++k) {
      lin[s][k] = linear_cost(net, net.arc(k), params.e_rate * d[k] * params.R / N, subflows[s].capacity);
    }
  }
  std::vector<double> load(m, 0.0);  // sum of x^k over subflows
  auto total = [&](const std::vector<double>& l, const std::vector<std::vector<double>>& xs) {
    double sum = 0.0;
    for (int k = 0; k < m; ++k) sum += arc_time(l[k] / N, d[k], params);
    for (int s = 0; s < N; ++s) {
      for (int k = 0; k < m; ++k) sum += lin[s][k] * xs[s][k];
    }
    return sum;
  };

  // Initial point: each subflow in turn takes its best path given the
  // subflows already placed.
  result.x.assign(N, std::vector<double>(m, 0.0));
  std::vector<std::vector<ActivePath>> active(N);
  for (int s = 0; s < N; ++s) {
    std::vector<double> g(m);
    for (int k = 0; k < m; ++k) g[k] = arc_time_slope(load[k] / N, d[k], params) / N + lin[s][k];
    active[s] = {active_path(net, min_weight_path(net, g).path, 1.0)};
    result.x[s] = flow_of(net, active[s]);
    for (int k = 0; k < m; ++k) load[k] += result.x[s][k];
  }

  double current = total(load, result.x);
  for (int sweep = 0; sweep < 100; ++sweep) {
    ++result.sweeps;
    double largest_gap = 0.0;
    for (int s = 0; s < N; ++s) {
      std::vector<double> others(m);
      for (int k = 0; k < m; ++k) others[k] = load[k] - result.x[s][k];
      auto block_value = [&](const std::vector<double>& xs) {
        double sum = 0.0;
        for (int k = 0; k < m; ++k) sum += arc_time((others[k] + xs[k]) / N, d[k], params) + lin[s][k] * xs[k];
        return sum;
      };
      auto block_gradient = [&](const std::vector<double>& xs, std::vector<double>& g) {
        g.resize(m);
        for (int k = 0; k < m; ++k) {
          g[k] = arc_time_slope((others[k] + xs[k]) / N, d[k], params) / N + lin[s][k];
        }
      };
      FwOutcome fw = frank_wolfe(net, block_value, block_gradient, active[s], options.tol, options.max_iters);
      largest_gap = std::max(largest_gap, fw.initial_gap);
      active[s] = std::move(fw.active);
      result.x[s] = std::move(fw.x);
      for (int k = 0; k < m; ++k) load[k] = others[k] + result.x[s][k];
    }
    double next = total(load, result.x);
    bool settled = current - next <= options.tol;
    current = next;
    // Block gaps are measured before each block moves; a sweep in which
    // every block already started within tolerance is a fixed point.
    if (settled && largest_gap <= options.tol) {
      result.converged = true;
      break;
    }
  }
  result.objective = current;
  return result;
}

}  // namespace evroute
