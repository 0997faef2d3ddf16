#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "test_util.hpp"
#include "tsppath/instance.hpp"

using namespace tsppath;

TEST(MetricFromGraph, PathGraph) {
  const Instance inst = testutil::graph_instance(3, {{0, 1}, {1, 2}}, 0, 2);
  EXPECT_EQ(inst.cost(0, 2), 2.0);
  EXPECT_EQ(inst.cost(0, 1), 1.0);
  EXPECT_EQ(inst.st_cost(), 2.0);
}

TEST(MetricFromGraph, SquareAntipodal) {
  const Instance inst = testutil::square();
  EXPECT_EQ(inst.st_cost(), 2.0);
  EXPECT_EQ(inst.cost(1, 3), 2.0);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) EXPECT_EQ(inst.cost(u, v), 1.0);
}

TEST(MetricFromGraph, DisconnectedIsError) {
  try {
    testutil::graph_instance(4, {{0, 1}, {1, 2}}, 0, 2);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("metric undefined"), std::string::npos);
  }
}

TEST(MetricFromGraph, SameEndpointsIsError) {
  EXPECT_THROW(testutil::graph_instance(3, {{0, 1}, {1, 2}}, 1, 1), Error);
}

TEST(MetricFromGraph, RederivationIsIdempotent) {
  const Instance inst = gen_random_graphical(11, 0.3, 5, 0, 10);
  ASSERT_TRUE(inst.origin().has_value());
  const Instance again = metric_from_graph(Graph{inst.n(), *inst.origin()}, inst.s(), inst.t());
  EXPECT_EQ(again.matrix(), inst.matrix());
}

TEST(ValidateMetric, GraphicalIsMetric) {
  for (const auto& c : fixtures::graph_cases()) EXPECT_TRUE(validate_metric(testutil::from_case(c)).empty()) << c.name;
}

TEST(ValidateMetric, ReportsShortcutTriple) {
  std::vector<double> cost = {0, 1, 5, 1, 0, 1, 5, 1, 0};
  const Instance inst(3, cost, 0, 2);
  const auto bad = validate_metric(inst);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(std::make_tuple(bad[0].u, bad[0].v, bad[0].w), std::make_tuple(0, 1, 2));
}

TEST(ValidateMetric, PerturbationMatchesBruteForceScan) {
  const Instance base = gen_random_graphical(8, 0.4, 11, 0, 7);
  const int n = base.n();
  std::vector<double> cost = base.matrix();
  cost[2 * n + 5] += 10;
  cost[5 * n + 2] += 10;
  const Instance bumped(n, cost, 0, 7);
  std::set<std::tuple<int, int, int>> expected;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      for (int v = 0; v < n; ++v) {
        if (v == u || v == w) continue;
        if (bumped.cost(u, w) > bumped.cost(u, v) + bumped.cost(v, w) + 1e-9) expected.insert({u, v, w});
      }
  std::set<std::tuple<int, int, int>> got;
  for (const auto& tv : validate_metric(bumped)) got.insert({tv.u, tv.v, tv.w});
  EXPECT_EQ(got, expected);
  EXPECT_FALSE(got.empty());
  for (const auto& [u, v, w] : got) EXPECT_TRUE((u == 2 && w == 5)) << u << ' ' << v << ' ' << w;
}

TEST(GapFamily, SmallestMembersAreValid) {
  for (GapFamily f : {GapFamily::kCircuitFig1a, GapFamily::kPathFig1b}) {
    const Instance inst = gen_gap_family({f, 1});
    EXPECT_TRUE(validate_metric(inst).empty());
    EXPECT_TRUE(is_connected(Graph{inst.n(), *inst.origin()}));
  }
}

TEST(GapFamily, VertexCountIncreases) {
  for (GapFamily f : {GapFamily::kCircuitFig1a, GapFamily::kPathFig1b}) {
    int prev = 0;
    for (int k = 1; k <= 8; ++k) {
      const int n = gen_gap_family({f, k}).n();
      EXPECT_GT(n, prev);
      prev = n;
    }
  }
}

TEST(GapFamily, MatchesFixtureGraphs) {
  for (const auto& c : fixtures::graph_cases()) {
    if (c.name.rfind("ladder", 0) == 0) {
      const int k = std::stoi(c.name.substr(6));
      EXPECT_EQ(gen_gap_family({GapFamily::kCircuitFig1a, k}), testutil::from_case(c));
    } else if (c.name.rfind("cycle", 0) == 0) {
      const int k = std::stoi(c.name.substr(5));
      EXPECT_EQ(gen_gap_family({GapFamily::kPathFig1b, k}), testutil::from_case(c));
    }
  }
}

TEST(GapFamily, TagsRoundTrip) {
  EXPECT_EQ(parse_gap_family("circuit_fig1a"), GapFamily::kCircuitFig1a);
  EXPECT_EQ(parse_gap_family("path_fig1b"), GapFamily::kPathFig1b);
  EXPECT_THROW(parse_gap_family("fig2"), Error);
  EXPECT_THROW(gen_gap_family({GapFamily::kPathFig1b, 0}), Error);
}

TEST(RandomGraphical, TwoVertices) {
  const Instance inst = gen_random_graphical(2, 0.5, 1, 0, 1);
  EXPECT_EQ(inst.st_cost(), 1.0);
}

TEST(RandomGraphical, Deterministic) {
  EXPECT_EQ(gen_random_graphical(12, 0.3, 7, 0, 11), gen_random_graphical(12, 0.3, 7, 0, 11));
  EXPECT_NE(gen_random_graphical(12, 0.3, 7, 0, 11), gen_random_graphical(12, 0.3, 8, 0, 11));
}

TEST(RandomGraphical, IsMetric) { EXPECT_TRUE(validate_metric(gen_random_graphical(12, 0.3, 7, 0, 11)).empty()); }

TEST(RandomGraphical, RejectsBadProbability) {
  EXPECT_THROW(gen_random_graphical(5, 1.5, 1, 0, 1), Error);
  EXPECT_THROW(gen_random_graphical(5, -0.1, 1, 0, 1), Error);
}

TEST(InstanceShape, RejectsMalformedMatrices) {
  EXPECT_THROW(Instance(2, {0, 1, 2, 0}, 0, 1), Error);
  EXPECT_THROW(Instance(2, {0, 1, 1}, 0, 1), Error);
  EXPECT_THROW(Instance(2, {1, 1, 1, 0}, 0, 1), Error);
  EXPECT_THROW(Instance(2, {0, -1, -1, 0}, 0, 1), Error);
}
