#pragma once

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tsppath/graph.hpp"
#include "tsppath/instance.hpp"

namespace tsppath {

// Multigraph over vertices 0..n-1 with degree bookkeeping. Holds trees,
// matchings, T-joins and their Eulerian unions.
class EdgeMultiset {
 public:
  explicit EdgeMultiset(int n) : n_(n), degree_(n, 0) {}

  EdgeMultiset(int n, const std::vector<Edge>& edges) : EdgeMultiset(n) {
    for (const Edge& e : edges) add(e);
  }

  void add(const Edge& e, int copies = 1) {
    if (e.u == e.v) throw Error("self-loops are not allowed");
    if (e.u < 0 || e.v >= n_) throw Error("edge endpoint out of range");
    if (copies < 1) return;
    mult_[e] += copies;
    degree_[e.u] += copies;
    degree_[e.v] += copies;
    size_ += copies;
  }

  // Removes one copy; false when the edge is absent.
  bool remove(const Edge& e) {
    auto it = mult_.find(e);
    if (it == mult_.end()) return false;
    if (--it->second == 0) mult_.erase(it);
    --degree_[e.u];
    --degree_[e.v];
    --size_;
    return true;
  }

  EdgeMultiset& operator+=(const EdgeMultiset& other) {
    for (const auto& [e, k] : other.mult_) add(e, k);
    return *this;
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] int degree(Vertex v) const { return degree_[v]; }
  [[nodiscard]] const std::vector<int>& degrees() const { return degree_; }
  [[nodiscard]] const std::map<Edge, int>& multiplicities() const { return mult_; }

  [[nodiscard]] int multiplicity(const Edge& e) const {
    auto it = mult_.find(e);
    return it == mult_.end() ? 0 : it->second;
  }

  // Expanded edge list, one entry per copy, in lexicographic order.
  [[nodiscard]] std::vector<Edge> edge_list() const {
    std::vector<Edge> out;
    out.reserve(size_);
    for (const auto& [e, k] : mult_)
      for (int i = 0; i < k; ++i) out.push_back(e);
    return out;
  }

  [[nodiscard]] double cost(const Instance& inst) const {
    double total = 0.0;
    for (const auto& [e, k] : mult_) total += k * inst.cost(e);
    return total;
  }

  [[nodiscard]] std::vector<Vertex> odd_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v)
      if (degree_[v] % 2 != 0) out.push_back(v);
    return out;
  }

  [[nodiscard]] bool is_spanning_tree() const {
    if (size_ != n_ - 1) return false;
    UnionFind uf(n_);
    for (const auto& [e, k] : mult_)
      if (k != 1 || !uf.unite(e.u, e.v)) return false;
    return uf.components() == 1;
  }

  friend bool operator==(const EdgeMultiset& a, const EdgeMultiset& b) {
    return a.n_ == b.n_ && a.mult_ == b.mult_;
  }

 private:
  int n_;
  std::map<Edge, int> mult_;
  std::vector<int> degree_;
  int size_ = 0;
};

// Vertex set of even cardinality, kept sorted.
class ParitySet {
 public:
  ParitySet() = default;
  explicit ParitySet(std::vector<Vertex> vs) : vs_(std::move(vs)) {
    std::sort(vs_.begin(), vs_.end());
    vs_.erase(std::unique(vs_.begin(), vs_.end()), vs_.end());
    if (vs_.size() % 2 != 0) throw Error("parity set must have even cardinality");
  }

  [[nodiscard]] const std::vector<Vertex>& vertices() const { return vs_; }
  [[nodiscard]] std::size_t size() const { return vs_.size(); }
  [[nodiscard]] bool empty() const { return vs_.empty(); }
  friend bool operator==(const ParitySet&, const ParitySet&) = default;

 private:
  std::vector<Vertex> vs_;
};

// Kruskal over the given candidates, which must already be in priority order.
inline EdgeMultiset kruskal(int n, const std::vector<Edge>& ordered) {
  EdgeMultiset tree(n);
  UnionFind uf(n);
  for (const Edge& e : ordered) {
    if (uf.unite(e.u, e.v)) tree.add(e);
    if (tree.size() == n - 1) break;
  }
  return tree;
}

// Minimum spanning tree of the complete graph; ties go to the
// lexicographically smaller (u, v).
inline EdgeMultiset mst(const Instance& inst) {
  std::vector<Edge> edges = complete_edges(inst.n());
  std::stable_sort(edges.begin(), edges.end(),
                   [&](const Edge& a, const Edge& b) { return inst.cost(a) < inst.cost(b); });
  return kruskal(inst.n(), edges);
}

// Internal vertices of odd degree plus endpoints of even degree.
inline ParitySet wrong_parity_set(const EdgeMultiset& tree, Vertex s, Vertex t) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.n(); ++v) {
    const bool odd = tree.degree(v) % 2 != 0;
    const bool endpoint = v == s || v == t;
    if (odd != endpoint) out.push_back(v);
  }
  return ParitySet(std::move(out));
}

inline constexpr int kMatchingCap = 24;

// Exact minimum-cost perfect matching on a vertex subset by subset DP:
// best[S] = min_j c(lowest(S), j) + best[S - {lowest, j}].
inline EdgeMultiset min_perfect_matching(const std::vector<Vertex>& vertices, const Instance& inst) {
  const int m = static_cast<int>(vertices.size());
  if (m % 2 != 0) throw Error("perfect matching needs an even number of vertices");
  if (m > kMatchingCap) throw SizeError("matching limited to 24 vertices");
  EdgeMultiset out(inst.n());
  if (m == 0) return out;

  std::vector<double> c(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c[i * m + j] = inst.cost(vertices[i], vertices[j]);

  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<double> best(std::size_t{1} << m, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << i);
    double b = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      const double cand = c[i * m + j] + best[rest & ~(std::uint32_t{1} << j)];
      if (cand < b) b = cand;
    }
    best[mask] = b;
  }

  std::uint32_t mask = full;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << i);
    int pick = -1;
    double b = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      const double cand = c[i * m + j] + best[rest & ~(std::uint32_t{1} << j)];
      if (cand < b) {
        b = cand;
        pick = j;
      }
    }
    out.add(Edge(vertices[i], vertices[pick]));
    mask = rest & ~(std::uint32_t{1} << pick);
  }
  return out;
}

// Under a metric a minimum T-join is a minimum perfect matching on T using
// direct edges of the complete graph.
inline EdgeMultiset min_tjoin(const ParitySet& T, const Instance& inst) {
  return min_perfect_matching(T.vertices(), inst);
}

// Edges of the unique s-t path in a tree, in order from s.
inline std::vector<Edge> tree_path(const EdgeMultiset& tree, Vertex s, Vertex t) {
  const int n = tree.n();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& [e, k] : tree.multiplicities()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> stack{s};
  parent[s] = s;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adj[u])
      if (parent[w] < 0) {
        parent[w] = u;
        stack.push_back(w);
      }
  }
  if (parent[t] < 0) throw Error("t is not reachable from s in the tree");
  std::vector<Edge> path;
  for (Vertex v = t; v != s; v = parent[v]) path.emplace_back(parent[v], v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Tree minus its s-t path (a T-join for the tree's wrong-parity set).
inline EdgeMultiset tree_minus_path(const EdgeMultiset& tree, Vertex s, Vertex t) {
  EdgeMultiset rest = tree;
  for (const Edge& e : tree_path(tree, s, t)) rest.remove(e);
  return rest;
}

// Hierholzer walk from s to t consuming every edge copy once. Requires s and t
// to be the only odd vertices and every vertex to lie in one component.
inline std::vector<Vertex> euler_path(const EdgeMultiset& g, Vertex s, Vertex t) {
  const int n = g.n();
  if (s == t) throw Error("euler_path needs distinct endpoints");
  for (Vertex v = 0; v < n; ++v) {
    const bool should_be_odd = v == s || v == t;
    if ((g.degree(v) % 2 != 0) != should_be_odd)
      throw Error("vertex " + std::to_string(v) + " has the wrong degree parity for an s-t Euler path");
    if (g.degree(v) == 0) throw Error("vertex " + std::to_string(v) + " is isolated");
  }
  UnionFind uf(n);
  for (const auto& [e, k] : g.multiplicities()) uf.unite(e.u, e.v);
  if (uf.components() != 1) {
    for (Vertex v = 0; v < n; ++v)
      if (uf.find(v) != uf.find(s))
        throw Error("multigraph is disconnected: vertex " + std::to_string(v) +
                    " is not in the component of s");
  }

  const std::vector<Edge> copies = g.edge_list();
  std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
  for (int id = 0; id < static_cast<int>(copies.size()); ++id) {
    adj[copies[id].u].emplace_back(copies[id].v, id);
    adj[copies[id].v].emplace_back(copies[id].u, id);
  }
  // Reverse so that pop_back visits the smallest neighbour first.
  for (auto& a : adj) std::sort(a.rbegin(), a.rend());
  std::vector<char> used(copies.size(), 0);
  std::vector<Vertex> stack{s};
  std::vector<Vertex> walk;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    auto& a = adj[u];
    while (!a.empty() && used[a.back().second]) a.pop_back();
    if (a.empty()) {
      walk.push_back(u);
      stack.pop_back();
    } else {
      auto [w, id] = a.back();
      used[id] = 1;
      stack.push_back(w);
    }
  }
  std::reverse(walk.begin(), walk.end());
  if (walk.size() != copies.size() + 1 || walk.back() != t)
    throw Error("internal error: Euler walk did not consume every edge");
  return walk;
}

// Hamiltonian s-t order from a covering walk: keep the first visit of each
// vertex, bypass every visit to t until the very end, then append t.
inline std::vector<Vertex> shortcut(const std::vector<Vertex>& walk, Vertex s, Vertex t, int n) {
  if (walk.empty() || walk.front() != s || walk.back() != t)
    throw Error("walk must start at s and end at t");
  std::vector<char> seen(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex v : walk) {
    if (v < 0 || v >= n) throw Error("walk vertex out of range");
    if (v == t || seen[v]) continue;
    seen[v] = 1;
    order.push_back(v);
  }
  order.push_back(t);
  if (static_cast<int>(order.size()) != n) throw Error("walk does not cover every vertex");
  return order;
}

// True when order visits every vertex once, starting at s and ending at t.
inline bool is_hamiltonian_path(const std::vector<Vertex>& order, Vertex s, Vertex t, int n) {
  if (static_cast<int>(order.size()) != n || order.front() != s || order.back() != t) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace tsppath
