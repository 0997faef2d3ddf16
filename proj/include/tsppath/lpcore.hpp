#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "tsppath/graph.hpp"
#include "tsppath/instance.hpp"
#include "tsppath/mincut.hpp"
#include "tsppath/simplex.hpp"

namespace tsppath {

enum class Variant { kPath, kCircuit };

inline const char* to_string(Variant v) { return v == Variant::kPath ? "path" : "circuit"; }

// x(delta(S)) >= required.
struct CutConstraint {
  VertexMask subset = 0;
  int required = 2;
  double lhs = 0.0;

  [[nodiscard]] double violation() const { return required - lhs; }
};

struct FractionalSolution {
  Variant variant = Variant::kPath;
  int n = 0;
  std::vector<double> x;  // indexed by edge_index(n, u, v)
  double value = 0.0;
  std::vector<CutConstraint> tight_cuts;
  int rounds = 0;

  [[nodiscard]] double at(Vertex u, Vertex v) const { return x[edge_index(n, u, v)]; }

  [[nodiscard]] double degree(Vertex v) const {
    double d = 0.0;
    for (Vertex u = 0; u < n; ++u)
      if (u != v) d += at(u, v);
    return d;
  }
};

struct HkOptions {
  double violation_tol = 1e-7;
  double objective_tol = 1e-7;
  int cuts_per_round = 3;
  int max_rounds = 0;  // 0 selects 10 n^2
  lp::SimplexOptions simplex;
};

inline double cut_lhs(int n, const std::vector<double>& x, VertexMask side) {
  double total = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    if (!in_mask(side, u)) continue;
    for (Vertex v = 0; v < n; ++v)
      if (!in_mask(side, v)) total += x[edge_index(n, u, v)];
  }
  return total;
}

inline int required_cut(Variant variant, const Instance& inst, VertexMask side) {
  if (variant == Variant::kCircuit) return 2;
  return in_mask(side, inst.s()) != in_mask(side, inst.t()) ? 1 : 2;
}

// Violated Held-Karp cut constraints, most violated first. Empty exactly when
// no cut of the variant is violated by more than tol.
inline std::vector<CutConstraint> separate_cuts(const std::vector<double>& x, Variant variant,
                                                const Instance& inst, double tol = 1e-7) {
  const int n = inst.n();
  if (x.size() != edge_count(n)) throw Error("edge vector has wrong length");
  const VertexMask full = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
  std::vector<CutConstraint> found;
  std::set<VertexMask> seen;
  auto record = [&](VertexMask side) {
    if (side == 0 || side == full) return;
    const VertexMask key = std::min(side, full & ~side);
    if (!seen.insert(key).second) return;
    CutConstraint c{side, required_cut(variant, inst, side), cut_lhs(n, x, side)};
    if (c.violation() > tol) found.push_back(c);
  };

  const WeightMatrix g = WeightMatrix::from_edge_vector(n, x);
  if (variant == Variant::kCircuit) {
    for (const WeightedCut& c : stoer_wagner(g).phase_cuts) record(c.side);
  } else {
    // Cuts separating s from t need weight >= 1.
    record(min_st_cut(g, inst.s(), inst.t()).side);
    // Every other cut needs weight >= 2; contracting s and t leaves exactly
    // those cuts.
    if (n > 2) {
      std::vector<int> to_merged(n);
      std::vector<Vertex> members;
      const Vertex s = inst.s();
      const Vertex t = inst.t();
      int next = 1;
      to_merged[s] = 0;
      to_merged[t] = 0;
      for (Vertex v = 0; v < n; ++v)
        if (v != s && v != t) to_merged[v] = next++;
      WeightMatrix merged(n - 1);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (to_merged[u] != to_merged[v]) merged.add(to_merged[u], to_merged[v], g(u, v));
      for (const WeightedCut& c : stoer_wagner(merged).phase_cuts) {
        VertexMask side = 0;
        for (Vertex v = 0; v < n; ++v)
          if (in_mask(c.side, to_merged[v])) side |= VertexMask{1} << v;
        record(side);
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const CutConstraint& a, const CutConstraint& b) {
    return a.violation() > b.violation();
  });
  return found;
}

namespace detail {

inline lp::Row cut_row(int n, VertexMask side, int required) {
  lp::Row row;
  row.sense = lp::Sense::kGreaterEqual;
  row.rhs = required;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (in_mask(side, u) != in_mask(side, v))
        row.terms.emplace_back(static_cast<int>(edge_index(n, u, v)), 1.0);
  return row;
}

}  // namespace detail

// Held-Karp relaxation by cutting planes: degree equalities first, then the
// most violated cuts found by separate_cuts, re-solving until none remain.
inline FractionalSolution solve_hk(const Instance& inst, Variant variant,
                                   const HkOptions& options = {}) {
  const int n = inst.n();
  const int m = static_cast<int>(edge_count(n));
  lp::Problem problem;
  problem.num_vars = m;
  problem.cost.resize(m);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) problem.cost[edge_index(n, u, v)] = inst.cost(u, v);
  for (Vertex v = 0; v < n; ++v) {
    lp::Row row;
    row.sense = lp::Sense::kEqual;
    row.rhs = (variant == Variant::kPath && inst.is_endpoint(v)) ? 1.0 : 2.0;
    for (Vertex u = 0; u < n; ++u)
      if (u != v) row.terms.emplace_back(static_cast<int>(edge_index(n, u, v)), 1.0);
    problem.rows.push_back(std::move(row));
  }

  const int max_rounds = options.max_rounds > 0 ? options.max_rounds : 10 * n * n;
  std::vector<CutConstraint> added;
  std::set<VertexMask> in_model;
  const VertexMask full = (VertexMask{1} << n) - 1;
  for (int round = 1; round <= max_rounds; ++round) {
    lp::Solution sol = lp::solve(problem, options.simplex);
    if (sol.status == lp::Status::kInfeasible)
      throw Error("internal error: Held-Karp LP reported infeasible");
    if (sol.status != lp::Status::kOptimal)
      throw Error("internal error: simplex did not reach an optimum");
    for (double& xe : sol.x)
      if (xe < 1e-12) xe = 0.0;

    std::vector<CutConstraint> violated =
        separate_cuts(sol.x, variant, inst, options.violation_tol);
    int taken = 0;
    for (const CutConstraint& c : violated) {
      if (taken == options.cuts_per_round) break;
      const VertexMask key = std::min(c.subset, full & ~c.subset);
      if (!in_model.insert(key).second) continue;
      problem.rows.push_back(detail::cut_row(n, c.subset, c.required));
      added.push_back(c);
      ++taken;
    }
    if (violated.empty() || taken == 0) {
      if (!violated.empty())
        throw Error("internal error: separation returned only cuts already in the model");
      FractionalSolution out;
      out.variant = variant;
      out.n = n;
      out.x = std::move(sol.x);
      out.value = inst.edge_vector_cost(out.x);
      out.rounds = round;
      for (CutConstraint c : added) {
        c.lhs = cut_lhs(n, out.x, c.subset);
        if (c.lhs <= c.required + options.violation_tol) out.tight_cuts.push_back(c);
      }
      return out;
    }
  }
  throw Error("cutting-plane iteration cap exceeded");
}

inline FractionalSolution solve_hk_path(const Instance& inst, const HkOptions& options = {}) {
  return solve_hk(inst, Variant::kPath, options);
}

inline FractionalSolution solve_hk_circuit(const Instance& inst, const HkOptions& options = {}) {
  return solve_hk(inst, Variant::kCircuit, options);
}

// Invariant violations of a fractional point (nonnegativity, degrees, cuts).
inline std::vector<std::string> check_feasible(const FractionalSolution& sol, const Instance& inst,
                                               double tol = 1e-7) {
  std::vector<std::string> problems;
  for (double xe : sol.x)
    if (xe < -tol) {
      problems.emplace_back("negative edge value");
      break;
    }
  for (Vertex v = 0; v < sol.n; ++v) {
    const double want = (sol.variant == Variant::kPath && inst.is_endpoint(v)) ? 1.0 : 2.0;
    if (std::abs(sol.degree(v) - want) > tol)
      problems.push_back("degree of vertex " + std::to_string(v) + " is " +
                         std::to_string(sol.degree(v)));
  }
  if (!separate_cuts(sol.x, sol.variant, inst, tol).empty())
    problems.emplace_back("violated cut constraint");
  return problems;
}

// x*_circuit = x* + e_(s,t): the path point with one extra unit on the s-t edge.
inline FractionalSolution lift_to_circuit(const FractionalSolution& path, const Instance& inst) {
  if (path.variant != Variant::kPath) throw Error("lift expects a path-variant solution");
  FractionalSolution out = path;
  out.variant = Variant::kCircuit;
  out.x[edge_index(path.n, inst.s(), inst.t())] += 1.0;
  out.value = path.value + inst.st_cost();
  // A tight s-t cut of weight 1 becomes a tight circuit cut of weight 2.
  for (CutConstraint& c : out.tight_cuts) {
    if (c.required == 1) c.lhs += 1.0;
    c.required = 2;
  }
  return out;
}

struct TJoinDual {
  std::vector<double> y;  // edge-indexed
  std::vector<Vertex> T;
};

struct TJoinDualReport {
  bool feasible = true;
  VertexMask worst_cut = 0;
  double worst_value = std::numeric_limits<double>::infinity();
};

inline constexpr int kTJoinDualCap = 22;

// Exhaustive check of y(delta(S)) >= 1 over all S with |S cap T| odd. Gray-code
// order keeps each step O(n).
inline TJoinDualReport tjoin_dual_check(const TJoinDual& dual, const Instance& inst) {
  const int n = inst.n();
  if (n > kTJoinDualCap) throw SizeError("T-join dual check limited to n <= 22");
  if (dual.y.size() != edge_count(n)) throw Error("dual vector has wrong length");
  if (dual.T.size() % 2 != 0) throw Error("T must have even cardinality");
  TJoinDualReport rep;
  for (double ye : dual.y)
    if (ye < 0.0) {
      rep.feasible = false;
      break;
    }
  const VertexMask tmask = members_mask(dual.T);
  const WeightMatrix g = WeightMatrix::from_edge_vector(n, dual.y);
  // Vertex n-1 is kept outside S; complements give the same cut.
  const int free_bits = n - 1;
  VertexMask side = 0;
  double value = 0.0;
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int flip = std::countr_zero(i);
    const VertexMask bit = VertexMask{1} << flip;
    double delta = 0.0;
    for (Vertex u = 0; u < n; ++u) {
      if (u == flip) continue;
      delta += in_mask(side, u) ? -g(flip, u) : g(flip, u);
    }
    // Entering S adds edges to outside and removes edges to inside; leaving
    // does the opposite.
    value += (side & bit) ? -delta : delta;
    side ^= bit;
    if (std::popcount(side & tmask) % 2 == 1 && value < rep.worst_value) {
      rep.worst_value = value;
      rep.worst_cut = side;
    }
  }
  if (rep.worst_value < 1.0 - 1e-9) rep.feasible = false;
  return rep;
}

}  // namespace tsppath
