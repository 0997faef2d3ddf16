#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsppath/graph.hpp"

namespace tsppath {

// Unweighted undirected graph given by its edge list.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
};

// Complete graph with symmetric nonnegative costs and designated endpoints.
// Construction checks shape (symmetry, zero diagonal, distinct endpoints);
// the triangle inequality is checked separately by validate_metric so that
// non-metric inputs can still be inspected.
class Instance {
 public:
  Instance(int n, std::vector<double> cost, Vertex s, Vertex t,
           std::optional<std::vector<Edge>> origin = std::nullopt)
      : n_(n), cost_(std::move(cost)), s_(s), t_(t), origin_(std::move(origin)) {
    if (n_ < 2) throw Error("instance needs at least two vertices");
    if (cost_.size() != static_cast<std::size_t>(n_) * n_)
      throw Error("cost matrix must be n x n");
    if (s_ < 0 || s_ >= n_ || t_ < 0 || t_ >= n_) throw Error("endpoint out of range");
    if (s_ == t_) throw Error("endpoints s and t must differ");
    for (Vertex u = 0; u < n_; ++u) {
      if (at(u, u) != 0.0) throw Error("cost diagonal must be zero");
      for (Vertex v = 0; v < n_; ++v) {
        if (!std::isfinite(at(u, v)) || at(u, v) < 0.0)
          throw Error("costs must be finite and nonnegative");
        if (at(u, v) != at(v, u)) throw Error("cost matrix must be symmetric");
      }
    }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Vertex s() const { return s_; }
  [[nodiscard]] Vertex t() const { return t_; }
  [[nodiscard]] double cost(Vertex u, Vertex v) const { return at(u, v); }
  [[nodiscard]] double cost(const Edge& e) const { return at(e.u, e.v); }
  [[nodiscard]] double st_cost() const { return at(s_, t_); }
  [[nodiscard]] bool is_endpoint(Vertex v) const { return v == s_ || v == t_; }
  [[nodiscard]] const std::vector<double>& matrix() const { return cost_; }
  [[nodiscard]] const std::optional<std::vector<Edge>>& origin() const { return origin_; }

  // Cost of a vertex sequence taken as consecutive hops.
  [[nodiscard]] double walk_cost(const std::vector<Vertex>& order) const {
    double total = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) total += at(order[i - 1], order[i]);
    return total;
  }

  [[nodiscard]] double edge_vector_cost(const std::vector<double>& x) const {
    double total = 0.0;
    std::size_t idx = 0;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) total += x[idx++] * at(u, v);
    return total;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  [[nodiscard]] double at(Vertex u, Vertex v) const {
    return cost_[static_cast<std::size_t>(u) * n_ + v];
  }

  int n_;
  std::vector<double> cost_;
  Vertex s_;
  Vertex t_;
  std::optional<std::vector<Edge>> origin_;
};

// All-pairs hop distances; -1 marks unreachable pairs.
inline std::vector<int> bfs_distances(const Graph& g) {
  std::vector<std::vector<Vertex>> adj(g.n);
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.v >= g.n) throw Error("graph edge out of range");
    if (e.u == e.v) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> dist(static_cast<std::size_t>(g.n) * g.n, -1);
  for (Vertex src = 0; src < g.n; ++src) {
    int* row = &dist[static_cast<std::size_t>(src) * g.n];
    std::queue<Vertex> q;
    row[src] = 0;
    q.push(src);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : adj[u]) {
        if (row[w] >= 0) continue;
        row[w] = row[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  UnionFind uf(g.n);
  for (const Edge& e : g.edges) uf.unite(e.u, e.v);
  return uf.components() == 1;
}

// Unit-weight graphical metric: shortest hop counts of a connected graph.
inline Instance metric_from_graph(const Graph& g, Vertex s, Vertex t) {
  if (g.n < 2) throw Error("graph needs at least two vertices");
  if (s == t) throw Error("endpoints s and t must differ");
  const std::vector<int> dist = bfs_distances(g);
  std::vector<double> cost(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] < 0) throw Error("graph is disconnected: metric undefined");
    cost[i] = dist[i];
  }
  std::vector<Edge> origin = g.edges;
  std::sort(origin.begin(), origin.end());
  origin.erase(std::unique(origin.begin(), origin.end()), origin.end());
  return Instance(g.n, std::move(cost), s, t, std::move(origin));
}

struct TriangleViolation {
  Vertex u;  // cost(u, w) > cost(u, v) + cost(v, w), with u < w
  Vertex v;
  Vertex w;
  friend bool operator==(const TriangleViolation&, const TriangleViolation&) = default;
  friend auto operator<=>(const TriangleViolation&, const TriangleViolation&) = default;
};

inline constexpr double kMetricTolerance = 1e-9;

// Empty result means the instance is metric.
inline std::vector<TriangleViolation> validate_metric(const Instance& inst) {
  std::vector<TriangleViolation> out;
  const int n = inst.n();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex w = u + 1; w < n; ++w)
      for (Vertex v = 0; v < n; ++v) {
        if (v == u || v == w) continue;
        if (inst.cost(u, w) > inst.cost(u, v) + inst.cost(v, w) + kMetricTolerance)
          out.push_back({u, v, w});
      }
  return out;
}

enum class GapFamily { kCircuitFig1a, kPathFig1b };

struct GapFamilySpec {
  GapFamily family = GapFamily::kPathFig1b;
  int k = 1;
};

inline std::string_view to_string(GapFamily f) {
  return f == GapFamily::kCircuitFig1a ? "circuit_fig1a" : "path_fig1b";
}

inline GapFamily parse_gap_family(std::string_view tag) {
  if (tag == "circuit_fig1a") return GapFamily::kCircuitFig1a;
  if (tag == "path_fig1b") return GapFamily::kPathFig1b;
  throw Error("unknown gap family '" + std::string(tag) + "'");
}

namespace detail {

// Three parallel paths of k vertices each; the left ends form a triangle and
// so do the right ends. Vertex r*k + i is position i on path r. The circuit
// relaxation puts 1 on path edges and 1/2 on triangle edges (value 3k) while
// every tour pays about 4k.
inline Graph three_path_ladder(int k) {
  Graph g{3 * k, {}};
  auto id = [k](int r, int i) { return r * k + i; };
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i + 1 < k; ++i) g.edges.emplace_back(id(r, i), id(r, i + 1));
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    g.edges.emplace_back(id(a, 0), id(b, 0));
    if (k > 1) g.edges.emplace_back(id(a, k - 1), id(b, k - 1));
  }
  return g;
}

// Cycle on 2(k+1) vertices; s = 0 and t = k+1 sit antipodally, joined by two
// internally disjoint paths of length k+1. The path relaxation has value n,
// while any Hamiltonian s-t path must walk one side, jump back and walk the
// other: 3(k+1) - 2.
inline Graph antipodal_cycle(int k) {
  const int n = 2 * (k + 1);
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

}  // namespace detail

inline Instance gen_gap_family(const GapFamilySpec& spec) {
  if (spec.k < 1) throw Error("gap family size parameter k must be >= 1");
  switch (spec.family) {
    case GapFamily::kCircuitFig1a: {
      // Circuit family has no natural endpoints; the first two path heads
      // are used so the instance still carries a valid (s, t).
      const int k = spec.k;
      return metric_from_graph(detail::three_path_ladder(k), 0, k);
    }
    case GapFamily::kPathFig1b:
      return metric_from_graph(detail::antipodal_cycle(spec.k), 0, spec.k + 1);
  }
  throw Error("unknown gap family");
}

// Erdos-Renyi G(n, p) graph resampled until connected, as a graphical metric.
inline Instance gen_random_graphical(int n, double edge_probability, std::uint64_t seed,
                                     Vertex s, Vertex t) {
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
    throw Error("edge probability must lie in [0, 1]");
  if (n < 2) throw Error("instance needs at least two vertices");
  if (n == 2) return metric_from_graph(Graph{2, {Edge(0, 1)}}, s, t);
  std::mt19937_64 rng = seeded_engine(seed);
  // Compare raw 64-bit draws against a fixed threshold so the stream is
  // identical across standard library implementations.
  const long double scaled = static_cast<long double>(edge_probability) * 18446744073709551616.0L;
  const bool always = edge_probability >= 1.0;
  const auto threshold = static_cast<std::uint64_t>(always ? 0.0L : scaled);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Graph g{n, {}};
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (always || rng() < threshold) g.edges.emplace_back(u, v);
    if (is_connected(g)) return metric_from_graph(g, s, t);
  }
  throw Error("could not draw a connected graph; edge probability too small");
}

}  // namespace tsppath
