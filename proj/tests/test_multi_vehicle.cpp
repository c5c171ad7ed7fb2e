#include <gtest/gtest.h>

#include "evroute/error.hpp"
#include "evroute/multi_vehicle.hpp"
#include "evroute/single_vehicle.hpp"
#include "oracles.hpp"

namespace evroute {
namespace {

Network seven() { return load_network(oracle::data_file("seven.json")); }

const Path kR1{1, 2, 3, 7};
const Path kR2{1, 4, 7};
const Path kR3{1, 5, 6, 7};

std::vector<std::pair<Path, int>> split(int a, int b, int c) { return {{kR1, a}, {kR2, b}, {kR3, c}}; }

TEST(Candidates, SevenHasThreeRoutes) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 6);
  EXPECT_EQ(candidate_paths(net, p, SubflowParams::even_split(net, 6)), (std::vector<Path>{kR1, kR2, kR3}));
}

TEST(Candidates, Tri3WithSmallCeilingIsEmpty) {
  Network net = load_network(oracle::data_file("tri3.json"));
  std::vector<Arc> arcs = net.arcs();
  for (Arc& a : arcs) a.d = a.e;
  Network with_d(3, arcs, net.charge_rates(), net.capacity(), 0, CongestionBlock{});
  EXPECT_TRUE(candidate_paths(with_d, CongestionParams::from(with_d, 1), SubflowParams{1.9, 0}).empty());
}

TEST(Candidates, CountMatchesIndependentEnumeration) {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    Network net = oracle::random_dag(seed);
    CongestionParams p = CongestionParams::from(net, 1);
    auto got = candidate_paths(net, p, SubflowParams{1e9, 0});
    EXPECT_EQ(got, oracle::all_simple_paths(net)) << "seed " << seed;
  }
}

TEST(MultisetCount, StarsAndBars) {
  EXPECT_EQ(multiset_count(3, 6), 28u);
  EXPECT_EQ(multiset_count(3, 2), 6u);
  EXPECT_EQ(multiset_count(1, 9), 1u);
  EXPECT_EQ(multiset_count(10, 10), 92378u);
  EXPECT_EQ(multiset_count(200, 200), std::numeric_limits<std::uint64_t>::max());
}

TEST(EvaluateP4, SingleSubflowSinglePath) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 1);
  SubflowAssignment a = evaluate_p4(net, p, SubflowParams::even_split(net, 1), {{kR2, 1}});
  double travel = 2 * arc_travel_time(1, 4, p);
  ChargingPlan plan = optimal_charging_on_path(net, kR2);
  EXPECT_NEAR(a.travel_time_total, travel, 1e-12);
  EXPECT_NEAR(a.charge_time_total, plan.charge_time, 1e-12);
  EXPECT_NEAR(a.objective, travel + plan.charge_time, 1e-12);
}

TEST(EvaluateP4, EvenSplitBeatsPilingOntoOneRoute) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 6);
  SubflowParams s = SubflowParams::even_split(net, 6);
  double spread = evaluate_p4(net, p, s, split(2, 2, 2)).objective;
  for (auto pile : {split(6, 0, 0), split(0, 6, 0), split(0, 0, 6)}) {
    EXPECT_LT(spread, evaluate_p4(net, p, s, pile).objective);
  }
}

TEST(EvaluateP4, CountsAreSymmetric) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 4);
  SubflowParams s = SubflowParams::even_split(net, 4);
  double grouped = evaluate_p4(net, p, s, {{kR2, 2}, {kR1, 2}}).objective;
  double listed = evaluate_p4(net, p, s, {{kR1, 1}, {kR2, 1}, {kR1, 1}, {kR2, 1}}).objective;
  EXPECT_NEAR(grouped, listed, 1e-12);
}

TEST(EvaluateP4, MatchesIndependentModel) {
  Network net = seven();
  for (int N : {1, 2, 3, 5, 8}) {
    CongestionParams p = CongestionParams::from(net, N);
    SubflowParams s = SubflowParams::even_split(net, N);
    for (int a = 0; a <= N; ++a) {
      for (int b = 0; a + b <= N; ++b) {
        auto routes = split(a, b, N - a - b);
        auto want = oracle::p4_objective(net, {}, N, routes);
        ASSERT_TRUE(want);
        EXPECT_NEAR(evaluate_p4(net, p, s, routes).objective, *want, 1e-9);
      }
    }
  }
}

TEST(EvaluateP4, RejectsWrongTotals) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 3);
  EXPECT_THROW(evaluate_p4(net, p, SubflowParams::even_split(net, 3), split(1, 1, 0)), Error);
}

TEST(SolveP4, SevenRouteCounts) {
  Network net = seven();
  MultiResult six = solve_p4(net, CongestionParams::from(net, 6));
  EXPECT_EQ(six.assignment.counts, (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(six.stats.assignments_evaluated, 28u);
  EXPECT_FALSE(six.stats.budget_exceeded);

  MultiResult two = solve_p4(net, CongestionParams::from(net, 2));
  EXPECT_EQ(two.stats.assignments_evaluated, 6u);
  std::vector<int> c = two.assignment.counts;
  EXPECT_EQ(*std::max_element(c.begin(), c.end()), 1);
}

TEST(SolveP4, SingleSubflowMatchesSingleVehicleWithCongestedTimes) {
  Network net = seven();
  CongestionParams p = CongestionParams::from(net, 1);
  std::vector<Arc> arcs = net.arcs();
  for (Arc& a : arcs) a.tau = arc_travel_time(1, *a.d, p);
  Network congested(net.node_count(), arcs, net.charge_rates(), net.capacity(), net.initial_energy(),
                    net.congestion());
  // A single subflow is the whole flow, so it rides at jam density.
  double want = solve_exact(congested).total_time;
  EXPECT_NEAR(solve_p4(net, p).assignment.objective, want, 1e-12 * want);
}

TEST(SolveP4, BudgetKeepsBestSoFar) {
  Network net = seven();
  MultiOptions options;
  options.budget = 5;
  MultiResult r = solve_p4(net, CongestionParams::from(net, 6), options);
  EXPECT_TRUE(r.stats.budget_exceeded);
  EXPECT_EQ(r.stats.assignments_evaluated, 5u);
}

TEST(SolveP4, NoRouteFits) {
  Network net = seven();
  MultiOptions options;
  options.subflow = SubflowParams{0.1, 0};
  try {
    solve_p4(net, CongestionParams::from(net, 2), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFeasibleAssignment);
  }
}

TEST(SolveP5, SameRoutesAndDominance) {
  for (const char* file : {"seven.json", "seven_uniform.json"}) {
    Network net = load_network(oracle::data_file(file));
    for (int N : {2, 4, 6}) {
      CongestionParams p = CongestionParams::from(net, N);
      MultiResult p4 = solve_p4(net, p);
      MultiResult p5 = solve_p5(net, p);
      EXPECT_GE(p5.assignment.objective, p4.assignment.objective - 1e-9);
      ASSERT_TRUE(p5.assignment.transformed_objective);
    }
  }
}

TEST(SolveP5, HomogeneousRatesReduceToEnergyCost) {
  Network base = seven();
  std::vector<double> g(7, 0.5);
  g.back() = 0;
  Network net = base.with_charge_rates(g);
  CongestionParams p = CongestionParams::from(net, 3);
  SubflowParams s = SubflowParams::even_split(net, 3);
  SubflowAssignment a = evaluate_p5(net, p, s, split(1, 1, 1));
  double energy_cost = 0;
  for (const Path& route : {kR1, kR2, kR3}) {
    for (int k : net.path_arcs(route)) energy_cost += subflow_energy(*net.arc(k).d, p) * 0.5;
  }
  EXPECT_NEAR(*a.transformed_objective, a.travel_time_total + energy_cost, 1e-12);
}

TEST(SolveP4, LemmaFourAndLemmaThree) {
  Network net = seven();
  for (int N = 1; N <= 12; ++N) {
    CongestionParams p = CongestionParams::from(net, N);
    SubflowParams s = SubflowParams::even_split(net, N);
    MultiResult r = solve_p4(net, p);
    for (const RouteShare& route : r.assignment.routes) {
      double total = 0;
      for (double v : route.plan.r) total += v;
      if (total > 0) EXPECT_LE(route.plan.E.back(), 1e-9);
      EXPECT_LE(check_lemma1(subflow_profile(net, p, s, route.path), route.plan), 1e-9);
    }
  }
}

TEST(SolveP4, ThreadsDoNotChangeTheWinner) {
  Network net = seven();
  for (int N : {6, 10, 14}) {
    MultiOptions one;
    MultiOptions four;
    four.threads = 4;
    CongestionParams p = CongestionParams::from(net, N);
    EXPECT_EQ(solve_p4(net, p, one).assignment.counts, solve_p4(net, p, four).assignment.counts);
    EXPECT_EQ(solve_p5(net, p, one).assignment.counts, solve_p5(net, p, four).assignment.counts);
  }
}

}  // namespace
}  // namespace evroute
