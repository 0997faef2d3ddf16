#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "tsppath/graph.hpp"

namespace tsppath {

// Dense symmetric weight matrix, row-major n x n.
struct WeightMatrix {
  int n = 0;
  std::vector<double> w;

  explicit WeightMatrix(int size) : n(size), w(static_cast<std::size_t>(size) * size, 0.0) {}

  double& operator()(int u, int v) { return w[static_cast<std::size_t>(u) * n + v]; }
  double operator()(int u, int v) const { return w[static_cast<std::size_t>(u) * n + v]; }

  void add(int u, int v, double x) {
    (*this)(u, v) += x;
    (*this)(v, u) += x;
  }

  // Lift an edge-indexed vector over K_n.
  static WeightMatrix from_edge_vector(int n, const std::vector<double>& x) {
    WeightMatrix m(n);
    std::size_t idx = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        m(u, v) = x[idx];
        m(v, u) = x[idx];
        ++idx;
      }
    return m;
  }

  [[nodiscard]] double cut_value(VertexMask side) const {
    double total = 0.0;
    for (int u = 0; u < n; ++u) {
      if (!in_mask(side, u)) continue;
      for (int v = 0; v < n; ++v)
        if (!in_mask(side, v)) total += (*this)(u, v);
    }
    return total;
  }
};

struct WeightedCut {
  VertexMask side = 0;
  double value = 0.0;
};

struct StoerWagnerResult {
  WeightedCut minimum;
  std::vector<WeightedCut> phase_cuts;  // one cut-of-the-phase per merge
};

// Stoer-Wagner global minimum cut. Every cut-of-the-phase is a genuine
// bipartition, so callers hunting for several violated cuts can scan them.
inline StoerWagnerResult stoer_wagner(WeightMatrix g) {
  const int n = g.n;
  StoerWagnerResult res;
  res.minimum.value = std::numeric_limits<double>::infinity();
  if (n < 2) return res;
  std::vector<VertexMask> group(n);
  for (int v = 0; v < n; ++v) group[v] = VertexMask{1} << v;
  std::vector<int> alive(n);
  for (int v = 0; v < n; ++v) alive[v] = v;

  while (alive.size() > 1) {
    const int m = static_cast<int>(alive.size());
    std::vector<double> key(m, 0.0);
    std::vector<char> added(m, 0);
    int prev = -1;
    int last = -1;
    for (int step = 0; step < m; ++step) {
      int pick = -1;
      for (int i = 0; i < m; ++i)
        if (!added[i] && (pick < 0 || key[i] > key[pick])) pick = i;
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step == m - 1) {
        WeightedCut cut{group[alive[pick]], key[pick]};
        res.phase_cuts.push_back(cut);
        if (cut.value < res.minimum.value) res.minimum = cut;
      }
      for (int i = 0; i < m; ++i)
        if (!added[i]) key[i] += g(alive[pick], alive[i]);
    }
    const int a = alive[prev];
    const int b = alive[last];
    for (int i = 0; i < m; ++i) {
      const int v = alive[i];
      if (v == a || v == b) continue;
      g(a, v) += g(b, v);
      g(v, a) = g(a, v);
    }
    group[a] |= group[b];
    alive.erase(alive.begin() + last);
  }
  return res;
}

// Minimum s-t cut by shortest augmenting paths; the returned side is the set
// reachable from the source in the final residual graph.
inline WeightedCut min_st_cut(const WeightMatrix& g, int source, int sink) {
  const int n = g.n;
  std::vector<double> residual = g.w;
  auto res = [&](int u, int v) -> double& { return residual[static_cast<std::size_t>(u) * n + v]; };
  constexpr double kEps = 1e-12;
  std::vector<int> parent(n);
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && parent[sink] < 0) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && res(u, v) > kEps) {
          parent[v] = u;
          q.push(v);
        }
    }
    if (parent[sink] < 0) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = parent[v]) bottleneck = std::min(bottleneck, res(parent[v], v));
    for (int v = sink; v != source; v = parent[v]) {
      res(parent[v], v) -= bottleneck;
      res(v, parent[v]) += bottleneck;
    }
  }
  WeightedCut cut;
  for (int v = 0; v < n; ++v)
    if (parent[v] >= 0) cut.side |= VertexMask{1} << v;
  cut.value = g.cut_value(cut.side);
  return cut;
}

}  // namespace tsppath
