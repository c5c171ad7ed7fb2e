#include <gtest/gtest.h>

#include <cmath>

#include "evroute/congestion.hpp"
#include "evroute/error.hpp"

namespace evroute {
namespace {

CongestionParams paper_params(int N) { return CongestionParams{1.0, 2.0, 2.0, 1.0, N, 1.0}; }

TEST(Speed, LawAndLimits) {
  CongestionParams p = paper_params(4);
  EXPECT_DOUBLE_EQ(speed(0, p), 1.0);
  EXPECT_DOUBLE_EQ(speed(4, p), 0.0);
  EXPECT_DOUBLE_EQ(speed(2, p), 0.5625);
  EXPECT_THROW(speed(-0.1, p), Error);
  EXPECT_THROW(speed(4.1, p), Error);
}

TEST(Speed, StrictlyDecreasing) {
  for (double pq : {1.0, 1.5, 2.0, 3.0}) {
    CongestionParams p{2.0, pq, pq + 0.5, 1.0, 10, 1.0};
    double last = speed(0, p);
    for (int k = 1; k < 1000; ++k) {
      double v = speed(10.0 * k / 1000, p);
      EXPECT_LT(v, last);
      last = v;
    }
  }
}

TEST(Params, RejectsBadValues) {
  EXPECT_THROW((CongestionParams{0, 2, 2, 1, 1, 1}.check()), Error);
  EXPECT_THROW((CongestionParams{1, 0.5, 2, 1, 1, 1}.check()), Error);
  EXPECT_THROW((CongestionParams{1, 2, 2, 0, 1, 1}.check()), Error);
  EXPECT_THROW((CongestionParams{1, 2, 2, 1, 0, 1}.check()), Error);
  EXPECT_THROW((CongestionParams{1, 2, 2, 1, 1, -1}.check()), Error);
}

TEST(SubflowTime, Examples) {
  CongestionParams p = paper_params(2);
  std::vector<double> off{0, 1};
  EXPECT_EQ(subflow_travel_time(off, 0, 5, p), 0.0);
  std::vector<double> alone{1, 0};
  EXPECT_NEAR(subflow_travel_time(alone, 0, 5, p), 4.4444, 1e-4);
  std::vector<double> jam{1, 1};
  EXPECT_NEAR(subflow_travel_time(jam, 0, 5, p), 5 * 0.5 / (1e-6 * p.v_f), 1e-3);
  EXPECT_TRUE(std::isfinite(subflow_travel_time(jam, 1, 5, p)));
}

TEST(SubflowTime, SingleSubflowMatchesSpeedAtUnitDensity) {
  for (int N : {1, 2, 5, 9}) {
    CongestionParams p = paper_params(N);
    std::vector<double> x(N, 0.0);
    x[0] = 1.0;
    if (N == 1) continue;  // unit density is the jam for N = 1
    EXPECT_NEAR(subflow_travel_time(x, 0, 3, p), 3 * p.R / N / speed(1, p), 1e-12);
    EXPECT_NEAR(arc_travel_time(1, 3, p), subflow_travel_time(x, 0, 3, p), 1e-12);
  }
}

TEST(SubflowEnergy, Examples) {
  EXPECT_EQ(subflow_energy(0, paper_params(2)), 0.0);
  EXPECT_DOUBLE_EQ(subflow_energy(5, paper_params(2)), 2.5);
  EXPECT_DOUBLE_EQ(subflow_energy(5, paper_params(4)), subflow_energy(5, paper_params(2)) / 2);
}

TEST(SubflowParams, EvenSplit) {
  Network net(2, {{1, 2, 1, 1, 1.0}}, {1, 0}, 12, 6, CongestionBlock{});
  SubflowParams s = SubflowParams::even_split(net, 4);
  EXPECT_DOUBLE_EQ(s.capacity, 3);
  EXPECT_DOUBLE_EQ(s.initial_energy, 1.5);
}

TEST(AggregatedTime, ConvexOnTheOpenInterval) {
  auto f = [](double x) { return 2.0 * x / std::pow(1 - x * x, 2); };
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      double a = i / 100.5;
      double b = j / 100.5;
      for (double lambda : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        EXPECT_LE(f(lambda * a + (1 - lambda) * b), lambda * f(a) + (1 - lambda) * f(b) + 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace evroute
