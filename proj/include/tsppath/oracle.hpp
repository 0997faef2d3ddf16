#pragma once

#include <limits>
#include <vector>

#include "tsppath/instance.hpp"
#include "tsppath/lpcore.hpp"

namespace tsppath {

struct OracleResult {
  double opt_cost = 0.0;
  std::vector<Vertex> opt_path;  // circuit: starts at 0, closing edge implied
  Variant variant = Variant::kPath;
};

inline constexpr int kOracleCap = 20;

namespace detail {

// best[mask * m + j]: cheapest path from `start` through exactly the inner
// vertices in mask, ending at inner[j].
struct HamiltonDp {
  int m = 0;
  std::vector<double> best;

  HamiltonDp(const Instance& inst, Vertex start, const std::vector<Vertex>& inner)
      : m(static_cast<int>(inner.size())),
        best((std::size_t{1} << inner.size()) * inner.size(),
             std::numeric_limits<double>::infinity()) {
    for (int j = 0; j < m; ++j) best[(std::size_t{1} << j) * m + j] = inst.cost(start, inner[j]);
    const std::size_t full = std::size_t{1} << m;
    for (std::size_t mask = 1; mask < full; ++mask)
      for (int j = 0; j < m; ++j) {
        if (!((mask >> j) & 1)) continue;
        const double here = best[mask * m + j];
        if (here == std::numeric_limits<double>::infinity()) continue;
        for (int w = 0; w < m; ++w) {
          if ((mask >> w) & 1) continue;
          double& next = best[(mask | (std::size_t{1} << w)) * m + w];
          const double cand = here + inst.cost(inner[j], inner[w]);
          if (cand < next) next = cand;
        }
      }
  }

  [[nodiscard]] double at(std::size_t mask, int j) const { return best[mask * m + j]; }

  // Inner vertices in visiting order for a path ending at inner[last].
  std::vector<Vertex> unwind(const Instance& inst, Vertex start, const std::vector<Vertex>& inner,
                             int last) const {
    std::vector<Vertex> rev;
    std::size_t mask = (std::size_t{1} << m) - 1;
    int j = last;
    while (true) {
      rev.push_back(inner[j]);
      const std::size_t prev = mask & ~(std::size_t{1} << j);
      if (prev == 0) break;
      int pick = -1;
      for (int w = 0; w < m; ++w) {
        if (!((prev >> w) & 1)) continue;
        if (at(prev, w) + inst.cost(inner[w], inner[j]) <= at(mask, j) + 1e-9) {
          pick = w;
          break;
        }
      }
      mask = prev;
      j = pick;
    }
    std::vector<Vertex> order{start};
    order.insert(order.end(), rev.rbegin(), rev.rend());
    return order;
  }
};

}  // namespace detail

// Minimum Hamiltonian s-t path by bitmask dynamic programming.
inline OracleResult exact_opt(const Instance& inst, int cap = kOracleCap) {
  const int n = inst.n();
  if (n > cap || n > kOracleCap) throw SizeError("exact oracle limited to n <= 20");
  OracleResult res;
  res.variant = Variant::kPath;
  if (n == 2) {
    res.opt_cost = inst.st_cost();
    res.opt_path = {inst.s(), inst.t()};
    return res;
  }
  std::vector<Vertex> inner;
  for (Vertex v = 0; v < n; ++v)
    if (!inst.is_endpoint(v)) inner.push_back(v);
  const detail::HamiltonDp dp(inst, inst.s(), inner);
  const std::size_t full = (std::size_t{1} << inner.size()) - 1;
  int last = 0;
  res.opt_cost = std::numeric_limits<double>::infinity();
  for (int j = 0; j < dp.m; ++j) {
    const double c = dp.at(full, j) + inst.cost(inner[j], inst.t());
    if (c < res.opt_cost) {
      res.opt_cost = c;
      last = j;
    }
  }
  res.opt_path = dp.unwind(inst, inst.s(), inner, last);
  res.opt_path.push_back(inst.t());
  return res;
}

// Minimum Hamiltonian circuit, anchored at vertex 0.
inline OracleResult exact_opt_circuit(const Instance& inst, int cap = kOracleCap) {
  const int n = inst.n();
  if (n > cap || n > kOracleCap) throw SizeError("exact oracle limited to n <= 20");
  OracleResult res;
  res.variant = Variant::kCircuit;
  if (n == 2) {
    res.opt_cost = 2.0 * inst.cost(0, 1);
    res.opt_path = {0, 1};
    return res;
  }
  std::vector<Vertex> inner;
  for (Vertex v = 1; v < n; ++v) inner.push_back(v);
  const detail::HamiltonDp dp(inst, 0, inner);
  const std::size_t full = (std::size_t{1} << inner.size()) - 1;
  int last = 0;
  res.opt_cost = std::numeric_limits<double>::infinity();
  for (int j = 0; j < dp.m; ++j) {
    const double c = dp.at(full, j) + inst.cost(inner[j], 0);
    if (c < res.opt_cost) {
      res.opt_cost = c;
      last = j;
    }
  }
  res.opt_path = dp.unwind(inst, 0, inner, last);
  return res;
}

}  // namespace tsppath
