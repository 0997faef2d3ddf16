#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "test_util.hpp"
#include "tsppath/combinat.hpp"

using namespace tsppath;

namespace {

// 4-cycle s, a, t, b labelled t = 0, a = 1, b = 2, s = 3 so that
// lexicographic Kruskal returns the tree {sa, ta, tb}.
constexpr Vertex kT = 0, kA = 1, kB = 2, kS = 3;
Instance relabelled_square() {
  return testutil::graph_instance(4, {{kS, kA}, {kA, kT}, {kT, kB}, {kB, kS}}, kS, kT);
}

Instance random_metric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  std::vector<double> cost(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[i * n + j] = i == j ? 0.0 : std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  return Instance(n, cost, 0, n - 1);
}

double brute_force_matching(std::vector<Vertex> vs, const Instance& inst) {
  if (vs.empty()) return 0.0;
  double best = 1e300;
  const Vertex first = vs[0];
  for (std::size_t j = 1; j < vs.size(); ++j) {
    std::vector<Vertex> rest;
    for (std::size_t k = 1; k < vs.size(); ++k)
      if (k != j) rest.push_back(vs[k]);
    best = std::min(best, inst.cost(first, vs[j]) + brute_force_matching(rest, inst));
  }
  return best;
}

}  // namespace

TEST(Mst, TriangleLexicographicChoice) {
  const Instance inst = testutil::triangle();
  const EdgeMultiset tree = mst(inst);
  EXPECT_EQ(tree.cost(inst), 2.0);
  EXPECT_EQ(tree, EdgeMultiset(3, {Edge(0, 1), Edge(0, 2)}));
  // With a = 0, s = 1, t = 2 the lexicographic choice is the path s-a-t.
  const Instance relabelled = testutil::graph_instance(3, {{0, 1}, {1, 2}, {0, 2}}, 1, 2);
  EXPECT_EQ(mst(relabelled), EdgeMultiset(3, {Edge(1, 0), Edge(0, 2)}));
}

TEST(Mst, SquareMatchesSpanningTreeEnumeration) {
  const Instance inst = testutil::square();
  // Enumerate all 3-edge subsets of K4 and keep the spanning trees.
  const auto edges = complete_edges(4);
  int trees = 0;
  double best = 1e300;
  for (unsigned m = 0; m < (1u << edges.size()); ++m) {
    if (std::popcount(m) != 3) continue;
    EdgeMultiset t(4);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (m >> i & 1u) t.add(edges[i]);
    if (!t.is_spanning_tree()) continue;
    ++trees;
    best = std::min(best, t.cost(inst));
  }
  EXPECT_EQ(trees, 16);
  EXPECT_EQ(mst(inst).cost(inst), best);
  EXPECT_EQ(best, 3.0);
}

TEST(Mst, TwoVertices) {
  const Instance inst(2, {0, 1, 1, 0}, 0, 1);
  EXPECT_EQ(mst(inst), EdgeMultiset(2, {Edge(0, 1)}));
}

TEST(Mst, NoRandomSpanningTreeIsCheaper) {
  const Instance inst = random_metric(12, 4);
  const double best = mst(inst).cost(inst);
  std::mt19937_64 rng(17);
  auto edges = complete_edges(12);
  for (int i = 0; i < 1000; ++i) {
    std::shuffle(edges.begin(), edges.end(), rng);
    const EdgeMultiset t = kruskal(12, edges);
    ASSERT_TRUE(t.is_spanning_tree());
    EXPECT_LE(best, t.cost(inst) + 1e-12);
  }
}

TEST(WrongParity, PathTree) {
  EXPECT_TRUE(wrong_parity_set(EdgeMultiset(3, {Edge(0, 1), Edge(1, 2)}), 0, 2).empty());
}

TEST(WrongParity, StarAtS) {
  // s = 0, a = 1, t = 2; edges sa, st.
  EXPECT_EQ(wrong_parity_set(EdgeMultiset(3, {Edge(0, 1), Edge(0, 2)}), 0, 2).vertices(),
            (std::vector<Vertex>{0, 1}));
}

TEST(WrongParity, SquareTree) {
  const Instance inst = relabelled_square();
  const EdgeMultiset tree = mst(inst);
  EXPECT_EQ(tree, EdgeMultiset(4, {Edge(kS, kA), Edge(kT, kA), Edge(kT, kB)}));
  EXPECT_EQ(wrong_parity_set(tree, kS, kT).vertices(), (std::vector<Vertex>{kT, kB}));
}

TEST(Matching, SquarePair) {
  const Instance inst = relabelled_square();
  const EdgeMultiset m = min_perfect_matching({kB, kT}, inst);
  EXPECT_EQ(m, EdgeMultiset(4, {Edge(kB, kT)}));
  EXPECT_EQ(m.cost(inst), 1.0);
}

TEST(Matching, Empty) { EXPECT_TRUE(min_perfect_matching({}, testutil::square()).empty()); }

TEST(Matching, SixPointsAgainstAllFifteenPairings) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_metric(6, seed);
    const std::vector<Vertex> vs{0, 1, 2, 3, 4, 5};
    const EdgeMultiset m = min_perfect_matching(vs, inst);
    EXPECT_NEAR(m.cost(inst), brute_force_matching(vs, inst), 1e-9);
    EXPECT_EQ(m.size(), 3);
    for (Vertex v : vs) EXPECT_EQ(m.degree(v), 1);
  }
}

TEST(Matching, SubsetDpMatchesEnumerationUpToEightPairs) {
  for (int pairs = 1; pairs <= 8; ++pairs) {
    const Instance inst = random_metric(2 * pairs + 2, 100 + pairs);
    std::vector<Vertex> vs;
    for (int i = 0; i < 2 * pairs; ++i) vs.push_back(i + 1);
    EXPECT_NEAR(min_perfect_matching(vs, inst).cost(inst), brute_force_matching(vs, inst), 1e-9) << pairs;
  }
}

TEST(Matching, Errors) {
  const Instance inst = random_metric(26, 1);
  EXPECT_THROW(min_perfect_matching({0, 1, 2}, inst), Error);
  std::vector<Vertex> all(26);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_THROW(min_perfect_matching(all, inst), SizeError);
}

TEST(TJoin, EmptyAndTriangle) {
  const Instance tri = testutil::triangle();
  EXPECT_TRUE(min_tjoin(ParitySet{}, tri).empty());
  const EdgeMultiset j = min_tjoin(ParitySet({0, 2}), tri);
  EXPECT_EQ(j, EdgeMultiset(3, {Edge(0, 2)}));
  EXPECT_EQ(j.cost(tri), 1.0);
}

TEST(TJoin, MatchesEdgeSubsetSearchOnFivePoints) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = trial % 2 ? random_metric(5, trial) : gen_random_graphical(5, 0.5, trial, 0, 4);
    std::vector<Vertex> t;
    for (Vertex v = 0; v < 5; ++v)
      if (rng() % 2) t.push_back(v);
    if (t.size() % 2) t.pop_back();
    const auto edges = complete_edges(5);
    double best = 1e300;
    for (unsigned m = 0; m < (1u << edges.size()); ++m) {
      EdgeMultiset j(5);
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (m >> i & 1u) j.add(edges[i]);
      if (j.odd_vertices() == t) best = std::min(best, j.cost(inst));
    }
    const EdgeMultiset got = min_tjoin(ParitySet(t), inst);
    EXPECT_EQ(got.odd_vertices(), t);
    EXPECT_NEAR(got.cost(inst), best, 1e-9) << trial;
  }
}

TEST(TJoin, MatchedPairsCannotBeShortcut) {
  const Instance inst = gen_random_graphical(14, 0.25, 8, 0, 13);
  const EdgeMultiset j = min_tjoin(ParitySet({0, 2, 3, 5, 8, 9, 11, 13}), inst);
  for (const Edge& e : j.edge_list())
    for (Vertex w = 0; w < inst.n(); ++w)
      EXPECT_LE(inst.cost(e), inst.cost(e.u, w) + inst.cost(w, e.v) + 1e-12);
}

TEST(TreePath, PathTree) {
  const EdgeMultiset tree(3, {Edge(0, 1), Edge(1, 2)});
  EXPECT_EQ(tree_path(tree, 0, 2), (std::vector<Edge>{Edge(0, 1), Edge(1, 2)}));
}

TEST(TreePath, StarAtA) {
  // s = 0, a = 1, t = 2, b = 3; star at a.
  const EdgeMultiset tree(4, {Edge(0, 1), Edge(1, 2), Edge(1, 3)});
  EXPECT_EQ(tree_path(tree, 0, 2), (std::vector<Edge>{Edge(0, 1), Edge(1, 2)}));
  EXPECT_EQ(tree_minus_path(tree, 0, 2), EdgeMultiset(4, {Edge(1, 3)}));
}

TEST(TreePath, SquareComplementIsTJoin) {
  const Instance inst = relabelled_square();
  const EdgeMultiset tree = mst(inst);
  EXPECT_EQ(tree_path(tree, kS, kT), (std::vector<Edge>{Edge(kS, kA), Edge(kA, kT)}));
  const EdgeMultiset rest = tree_minus_path(tree, kS, kT);
  EXPECT_EQ(rest, EdgeMultiset(4, {Edge(kT, kB)}));
  EXPECT_EQ(rest.odd_vertices(), wrong_parity_set(tree, kS, kT).vertices());
}

TEST(EulerPath, SimplePath) {
  EXPECT_EQ(euler_path(EdgeMultiset(3, {Edge(0, 1), Edge(1, 2)}), 0, 2), (std::vector<Vertex>{0, 1, 2}));
}

TEST(EulerPath, SquareWithDoubledEdge) {
  const EdgeMultiset g(4, {Edge(kS, kA), Edge(kT, kA), Edge(kT, kB), Edge(kT, kB)});
  EXPECT_EQ(euler_path(g, kS, kT), (std::vector<Vertex>{kS, kA, kT, kB, kT}));
}

TEST(EulerPath, Errors) {
  EXPECT_THROW(euler_path(EdgeMultiset(4, {Edge(0, 1), Edge(2, 3)}), 0, 1), Error);
  EXPECT_THROW(euler_path(EdgeMultiset(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 1)}), 0, 2), Error);
  // Two components, both with correct parity.
  EXPECT_THROW(euler_path(EdgeMultiset(6, {Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(4, 5), Edge(3, 5)}), 0, 2),
               Error);
}

TEST(EulerPath, UsesEveryEdgeOnce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_metric(10, trial);
    EdgeMultiset g = mst(inst);
    g += min_tjoin(wrong_parity_set(g, 0, 9), inst);
    const auto walk = euler_path(g, 0, 9);
    EdgeMultiset used(10);
    for (std::size_t i = 1; i < walk.size(); ++i) used.add(Edge(walk[i - 1], walk[i]));
    EXPECT_EQ(used, g);
    EXPECT_EQ(walk.front(), 0);
    EXPECT_EQ(walk.back(), 9);
  }
}

TEST(Shortcut, Examples) {
  EXPECT_EQ(shortcut({0, 1, 2}, 0, 2, 3), (std::vector<Vertex>{0, 1, 2}));
  const Instance inst = relabelled_square();
  const auto path = shortcut({kS, kA, kT, kB, kT}, kS, kT, 4);
  EXPECT_EQ(path, (std::vector<Vertex>{kS, kA, kB, kT}));
  EXPECT_EQ(inst.walk_cost(path), 4.0);
  // s, a, b, a, t with s = 0, a = 1, b = 2, t = 3.
  EXPECT_EQ(shortcut({0, 1, 2, 1, 3}, 0, 3, 4), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_THROW(shortcut({0, 1, 3}, 0, 3, 4), Error);
}

TEST(Shortcut, NeverIncreasesCost) {
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = trial % 2 ? random_metric(11, trial) : gen_random_graphical(11, 0.3, trial, 0, 10);
    EdgeMultiset g = mst(inst);
    g += min_tjoin(wrong_parity_set(g, 0, 10), inst);
    const auto walk = euler_path(g, 0, 10);
    const auto path = shortcut(walk, 0, 10, 11);
    EXPECT_TRUE(is_hamiltonian_path(path, 0, 10, 11));
    EXPECT_LE(inst.walk_cost(path), inst.walk_cost(walk) + 1e-9);
  }
}

TEST(EdgeMultisetType, Bookkeeping) {
  EdgeMultiset g(4);
  g.add(Edge(2, 1), 2);
  g.add(Edge(0, 3));
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.multiplicity(Edge(1, 2)), 2);
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_TRUE(g.remove(Edge(1, 2)));
  EXPECT_EQ(g.multiplicity(Edge(1, 2)), 1);
  EXPECT_FALSE(g.remove(Edge(0, 1)));
  EXPECT_EQ(g.odd_vertices(), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_THROW(g.add(Edge(1, 1)), Error);
  EXPECT_THROW(ParitySet({1, 2, 3}), Error);
}
