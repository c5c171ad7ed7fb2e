#include <gtest/gtest.h>

#include <random>

#include "evroute/error.hpp"
#include "evroute/network.hpp"
#include "oracles.hpp"

namespace evroute {
namespace {

const char* kMinimal = R"({"nodes":[{"id":1,"g":1},{"id":2,"g":0}],
  "arcs":[{"from":1,"to":2,"tau":1,"e":0.5}], "B":1, "E1":0})";

ErrorCode code_of(const std::string& text) {
  try {
    parse_network(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a parse failure";
  return ErrorCode::kInvalidArgument;
}

TEST(Parse, MinimalDocument) {
  Network net = parse_network(kMinimal);
  EXPECT_EQ(net.node_count(), 2);
  ASSERT_EQ(net.arc_count(), 1);
  EXPECT_DOUBLE_EQ(net.arc(0).e, 0.5);
  EXPECT_TRUE(validate(net).ok());
}

TEST(Parse, MissingChargeRateNamesTheNode) {
  std::string text = R"({"nodes":[{"id":1,"g":1},{"id":2}],
    "arcs":[{"from":1,"to":2,"tau":1,"e":0.5}], "B":1, "E1":0})";
  try {
    parse_network(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("node 2"), std::string::npos) << e.what();
  }
}

TEST(Parse, OverCapacityArcIsAcceptedByParseRejectedByValidate) {
  std::string text = R"({"nodes":[{"id":1,"g":1},{"id":2,"g":0}],
    "arcs":[{"from":1,"to":2,"tau":1,"e":1.5}], "B":1, "E1":0})";
  Network net = parse_network(text);
  ValidationReport report = validate(net);
  ASSERT_FALSE(report.ok());
  EXPECT_NE(report.errors[0].message.find("e < B violated"), std::string::npos);
}

TEST(Parse, SyntaxErrorCarriesLineAndColumn) {
  try {
    parse_network("{\n  \"nodes\": [,\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntax);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Parse, SchemaFailures) {
  EXPECT_EQ(code_of(R"({"nodes":[{"id":1,"g":1},{"id":2,"g":0}],"arcs":[],"B":1,"E1":0,"extra":1})"),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of(R"({"nodes":[{"id":1,"g":1},{"id":2,"g":0}],"arcs":[],"B":1,"B":2,"E1":0})"),
            ErrorCode::kSchema);
  EXPECT_EQ(code_of(R"({"nodes":[{"id":1,"g":"x"},{"id":2,"g":0}],"arcs":[],"B":1,"E1":0})"), ErrorCode::kSchema);
  EXPECT_EQ(code_of(R"({"nodes":[{"id":1,"g":1},{"id":2,"g":0}],"arcs":[],"E1":0})"), ErrorCode::kSchema);
  EXPECT_EQ(code_of(R"({"nodes":[{"id":1,"g":1},{"id":3,"g":0}],"arcs":[],"B":1,"E1":0})"), ErrorCode::kSchema);
}

TEST(Validate, Tri3IsClean) {
  EXPECT_TRUE(validate(load_network(oracle::data_file("tri3.json"))).errors.empty());
}

TEST(Validate, DestinationRateMustBeZero) {
  Network net = load_network(oracle::data_file("bad.json"));
  ValidationReport report = validate(net);
  ASSERT_TRUE(report.has_error("destination-g"));
  EXPECT_EQ(report.errors[0].message, "destination charging rate must be 0");
}

TEST(Validate, ReversedOnlyArcIsUnreachable) {
  Network net(2, {{2, 1, 1.0, 0.5, std::nullopt}}, {1.0, 0.0}, 1.0, 0.0);
  ValidationReport report = validate(net);
  ASSERT_TRUE(report.has_error("unreachable"));
  bool named = false;
  for (const auto& e : report.errors) named = named || e.message == "destination unreachable";
  EXPECT_TRUE(named);
}

TEST(Validate, EveryInvariantIsReported) {
  Network net(3,
              {{1, 1, 1.0, 0.5, std::nullopt},
               {1, 2, 0.0, 0.5, -1.0},
               {1, 2, 1.0, 0.5, std::nullopt},
               {2, 3, 1.0, 0.5, std::nullopt},
               {3, 1, 1.0, 0.5, std::nullopt}},
              {1.0, -0.5, 0.0}, 1.0, 2.0);
  ValidationReport r = validate(net);
  for (const char* code : {"self-loop", "tau", "duplicate-arc", "distance", "origin-incoming", "g-negative",
                           "initial-energy"}) {
    EXPECT_TRUE(r.has_error(code)) << code;
  }
}

TEST(Validate, CongestionNeedsDistances) {
  Network net(2, {{1, 2, 1.0, 0.5, std::nullopt}}, {1.0, 0.0}, 1.0, 0.0, CongestionBlock{});
  EXPECT_TRUE(validate(net).has_error("distance-missing"));
}

TEST(Presets, StationClasses) {
  EXPECT_DOUBLE_EQ(preset_g("ac_level_1"), 0.2);
  EXPECT_NEAR(preset_g("ac_level_2"), 0.016129, 1e-6);
  EXPECT_NEAR(preset_g("dc"), 0.003333, 1e-6);
  EXPECT_THROW(preset_g("supercharger"), Error);
}

TEST(RoundTrip, SerializeThenParseIsIdentity) {
  for (unsigned seed = 1; seed <= 30; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    Network net = oracle::random_dag(seed);
    std::vector<double> g = net.charge_rates();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) g[i] = u(rng) / 7.0;
    net = net.with_charge_rates(g);
    Network back = parse_network(serialize_network(net));
    ASSERT_EQ(back.node_count(), net.node_count());
    ASSERT_EQ(back.arc_count(), net.arc_count());
    for (NodeId i = 1; i <= net.node_count(); ++i) EXPECT_EQ(back.g(i), net.g(i));
    for (int k = 0; k < net.arc_count(); ++k) {
      EXPECT_EQ(back.arc(k).from, net.arc(k).from);
      EXPECT_EQ(back.arc(k).to, net.arc(k).to);
      EXPECT_EQ(back.arc(k).tau, net.arc(k).tau);
      EXPECT_EQ(back.arc(k).e, net.arc(k).e);
      EXPECT_EQ(back.arc(k).d, net.arc(k).d);
    }
    EXPECT_EQ(back.capacity(), net.capacity());
    EXPECT_EQ(back.initial_energy(), net.initial_energy());
    EXPECT_EQ(serialize_network(back), serialize_network(net));
  }
}

TEST(Adjacency, SuccessorsAndPredecessorsAgree) {
  for (unsigned seed = 1; seed <= 30; ++seed) {
    Network net = oracle::random_dag(seed);
    for (NodeId i = 1; i <= net.node_count(); ++i) {
      for (NodeId j : net.successors(i)) {
        auto preds = net.predecessors(j);
        EXPECT_NE(std::find(preds.begin(), preds.end(), i), preds.end());
      }
      for (NodeId h : net.predecessors(i)) {
        auto succ = net.successors(h);
        EXPECT_NE(std::find(succ.begin(), succ.end(), i), succ.end());
      }
    }
  }
}

}  // namespace
}  // namespace evroute
