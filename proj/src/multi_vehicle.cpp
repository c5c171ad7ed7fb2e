#include "evroute/multi_vehicle.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "evroute/error.hpp"
#include "evroute/parallel.hpp"
#include "evroute/paths.hpp"

namespace evroute {
namespace {

double arc_distance(const Arc& arc) {
  if (!arc.d) {
    throw Error(ErrorCode::kInvalidArgument,
                "arc " + std::to_string(arc.from) + " -> " + std::to_string(arc.to) + " has no distance");
  }
  return *arc.d;
}

// Everything about a candidate path that does not depend on the other
// subflows: energies are load-independent, so the charging plan is too.
struct Candidate {
  Path path;
  std::vector<int> arcs;
  std::optional<ChargingPlan> plan;
  double transformed_energy = 0.0;  // per subflow
};

Candidate make_candidate(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                         const Path& path) {
  Candidate c;
  c.path = path;
  c.arcs = net.path_arcs(path);
  try {
    c.plan = optimal_charging(subflow_profile(net, params, subflow, path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasiblePath) throw;
  }
  double term = -subflow.initial_energy * net.g(net.origin());
  for (int k : c.arcs) {
    const Arc& arc = net.arc(k);
    double e = subflow_energy(arc_distance(arc), params);
    double gi = net.g(arc.from);
    double gj = net.g(arc.to);
    term += e * gi;
    if (gi < gj) term += (subflow.capacity - e) * (gi - gj);
  }
  c.transformed_energy = term;
  return c;
}

struct Evaluation {
  bool feasible = false;
  double travel = 0.0;
  double charge = 0.0;
  double transformed = 0.0;
};

Evaluation evaluate_counts(const Network& net, const CongestionParams& params,
                           const std::vector<Candidate>& candidates, const std::vector<int>& counts,
                           std::vector<int>& load) {
  Evaluation ev;
  load.assign(net.arc_count(), 0);
  ev.feasible = true;
  double energy_terms = 0.0;
  for (std::size_t p = 0; p < candidates.size(); ++p) {
    if (counts[p] == 0) continue;
    const Candidate& c = candidates[p];
    if (!c.plan) {
      ev.feasible = false;
      return ev;
    }
    for (int k : c.arcs) load[k] += counts[p];
    ev.charge += counts[p] * c.plan->charge_time;
    energy_terms += counts[p] * c.transformed_energy;
  }
  for (int k = 0; k < net.arc_count(); ++k) {
    if (load[k] > 0) ev.travel += arc_travel_time(load[k], arc_distance(net.arc(k)), params);
  }
  ev.transformed = ev.travel + energy_terms;
  return ev;
}

SubflowAssignment build_assignment(const std::vector<Candidate>& candidates, const std::vector<int>& counts,
                                   const Evaluation& ev, bool with_transformed) {
  SubflowAssignment a;
  a.counts = counts;
  for (std::size_t p = 0; p < candidates.size(); ++p) {
    if (counts[p] == 0) continue;
    a.routes.push_back({candidates[p].path, counts[p], *candidates[p].plan});
  }
  a.travel_time_total = ev.travel;
  a.charge_time_total = ev.charge;
  a.objective = ev.travel + ev.charge;
  if (with_transformed) a.transformed_objective = ev.transformed;
  return a;
}

SubflowAssignment evaluate_multiset(const Network& net, const CongestionParams& params,
                                    const SubflowParams& subflow,
                                    const std::vector<std::pair<Path, int>>& multiset, bool with_transformed) {
  params.check();
  std::vector<Candidate> candidates;
  std::vector<int> counts;
  int total = 0;
  for (const auto& [path, count] : multiset) {
    if (count < 0) throw Error(ErrorCode::kInvalidArgument, "negative subflow count");
    if (path.empty() || path.front() != net.origin() || path.back() != net.destination()) {
      throw Error(ErrorCode::kInvalidArgument, "route must run from origin to destination");
    }
    candidates.push_back(make_candidate(net, params, subflow, path));
    counts.push_back(count);
    total += count;
  }
  if (total != params.N) {
    throw Error(ErrorCode::kInvalidArgument,
                "subflow counts sum to " + std::to_string(total) + ", expected " + std::to_string(params.N));
  }
  for (std::size_t p = 0; p < candidates.size(); ++p) {
    if (counts[p] > 0 && !candidates[p].plan) {
      // Re-run to surface the blocking arc.
      optimal_charging(subflow_profile(net, params, subflow, candidates[p].path));
    }
  }
  std::vector<int> load;
  Evaluation ev = evaluate_counts(net, params, candidates, counts, load);
  return build_assignment(candidates, counts, ev, with_transformed);
}

MultiResult search(const Network& net, const CongestionParams& params, const MultiOptions& options,
                   bool rank_transformed) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(net);
  params.check();
  const SubflowParams subflow = options.subflow.value_or(SubflowParams::even_split(net, params.N));

  std::vector<Candidate> candidates;
  for (const Path& path : candidate_paths(net, params, subflow)) {
    candidates.push_back(make_candidate(net, params, subflow, path));
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoFeasibleAssignment, "no route fits the subflow capacity");
  }

  const std::size_t P = candidates.size();
  const std::uint64_t total = multiset_count(P, params.N);
  const std::uint64_t limit = std::min(total, options.budget);

  MultiResult result;
  result.stats.budget_exceeded = total > options.budget;

  // Current multiset as a nondecreasing sequence of candidate indices.
  std::vector<std::size_t> seq(params.N, 0);
  auto advance = [&] {
    int i = params.N - 1;
    while (i >= 0 && seq[i] == P - 1) --i;
    if (i < 0) return false;
    std::size_t v = seq[i] + 1;
    for (int j = i; j < params.N; ++j) seq[j] = v;
    return true;
  };

  constexpr std::size_t kChunk = 4096;
  std::vector<std::vector<int>> batch;
  std::vector<Evaluation> evals;
  std::optional<std::vector<int>> best_counts;
  Evaluation best_eval;
  double best_key = std::numeric_limits<double>::infinity();
  std::uint64_t visited = 0;

  while (visited < limit) {
    batch.clear();
    while (batch.size() < kChunk && visited < limit) {
      std::vector<int> counts(P, 0);
      for (std::size_t v : seq) ++counts[v];
      batch.push_back(std::move(counts));
      ++visited;
      if (visited < limit && !advance()) break;
    }
    evals.assign(batch.size(), {});
    parallel_for(batch.size(), options.threads, [&](std::size_t i) {
      thread_local std::vector<int> load;
      evals[i] = evaluate_counts(net, params, candidates, batch[i], load);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++result.stats.assignments_evaluated;
      if (!evals[i].feasible) continue;
      ++result.stats.feasible_count;
      double key = rank_transformed ? evals[i].transformed : evals[i].travel + evals[i].charge;
      if (!best_counts || key < best_key - kEps * (1.0 + std::abs(best_key))) {
        best_key = key;
        best_counts = batch[i];
        best_eval = evals[i];
      }
    }
  }

  if (!best_counts) {
    if (result.stats.budget_exceeded) {
      throw Error(ErrorCode::kBudgetExceeded, "assignment budget of " + std::to_string(options.budget) +
                                                  " exhausted before any feasible assignment");
    }
    throw Error(ErrorCode::kNoFeasibleAssignment, "no assignment admits a feasible charging plan");
  }
  result.assignment = build_assignment(candidates, *best_counts, best_eval, rank_transformed);
  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::uint64_t multiset_count(std::uint64_t paths, std::uint64_t N) {
  if (paths == 0) return N == 0 ? 1 : 0;
  // C(paths - 1 + N, N) built as a running product of exact binomials.
  std::uint64_t result = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= N; ++i) {
    std::uint64_t numerator = paths - 1 + i;
    // result * numerator / i is always integral; guard the product.
    std::uint64_t g = std::gcd(result, i);
    std::uint64_t a = result / g;
    std::uint64_t b = i / g;
    std::uint64_t c = numerator / b;  // b divides numerator once a is reduced
    if (c != 0 && a > kMax / c) return kMax;
    result = a * c;
  }
  return result;
}

std::vector<Path> candidate_paths(const Network& net, const CongestionParams& params, const SubflowParams& subflow) {
  std::vector<Path> out;
  for_each_simple_path(
      net,
      [&](int k) { return subflow_energy(arc_distance(net.arc(k)), params) <= subflow.capacity; },
      [](int) {},
      [&](const Path& path) {
        out.push_back(path);
        return true;
      });
  return out;
}

PathEnergyProfile subflow_profile(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                                  const Path& path) {
  PathEnergyProfile profile;
  profile.path = path;
  for (NodeId i : path) profile.g.push_back(net.g(i));
  for (int k : net.path_arcs(path)) profile.e.push_back(subflow_energy(arc_distance(net.arc(k)), params));
  profile.capacity = subflow.capacity;
  profile.initial_energy = subflow.initial_energy;
  return profile;
}

SubflowAssignment evaluate_p4(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                              const std::vector<std::pair<Path, int>>& multiset) {
  return evaluate_multiset(net, params, subflow, multiset, false);
}

SubflowAssignment evaluate_p5(const Network& net, const CongestionParams& params, const SubflowParams& subflow,
                              const std::vector<std::pair<Path, int>>& multiset) {
  return evaluate_multiset(net, params, subflow, multiset, true);
}

MultiResult solve_p4(const Network& net, const CongestionParams& params, const MultiOptions& options) {
  return search(net, params, options, false);
}

MultiResult solve_p5(const Network& net, const CongestionParams& params, const MultiOptions& options) {
  return search(net, params, options, true);
}

}  // namespace evroute
