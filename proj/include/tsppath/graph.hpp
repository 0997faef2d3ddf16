#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsppath {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mersenne Twister seeded through splitmix64: raw small consecutive seeds
// give visibly correlated streams.
inline std::mt19937_64 seeded_engine(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

using Vertex = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive routine is asked to go past its enumeration cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

  [[nodiscard]] bool touches(Vertex w) const { return u == w || v == w; }
  [[nodiscard]] Vertex other(Vertex w) const { return w == u ? v : u; }
};

// Edges of the complete graph K_n are indexed 0..n(n-1)/2-1 in lexicographic
// (u, v) order; edge-indexed vectors (LP solutions, duals) use this layout.
inline std::size_t edge_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

inline std::size_t edge_index(int n, Vertex a, Vertex b) {
  const Vertex u = a < b ? a : b;
  const Vertex v = a < b ? b : a;
  // Rows 0..u-1 contribute (n-1) + (n-2) + ... + (n-u) entries.
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline std::vector<Edge> complete_edges(int n) {
  std::vector<Edge> out;
  out.reserve(edge_count(n));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

// Vertex subsets of desk-scale graphs are bitmasks.
using VertexMask = std::uint64_t;

inline bool in_mask(VertexMask m, Vertex v) { return (m >> v) & 1u; }

inline std::vector<Vertex> mask_members(VertexMask m, int n) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (in_mask(m, v)) out.push_back(v);
  return out;
}

inline VertexMask members_mask(const std::vector<Vertex>& vs) {
  VertexMask m = 0;
  for (Vertex v : vs) m |= VertexMask{1} << v;
  return m;
}

// Disjoint-set forest used by Kruskal, contraction and connectivity checks.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0), components_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --components_;
    return true;
  }

  [[nodiscard]] int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

}  // namespace tsppath
