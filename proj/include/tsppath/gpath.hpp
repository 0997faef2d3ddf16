#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tsppath/combinat.hpp"
#include "tsppath/constants.hpp"
#include "tsppath/hoogeveen.hpp"
#include "tsppath/lpcore.hpp"
#include "tsppath/maxent.hpp"

namespace tsppath {

struct Alg2Params {
  double sigma_l = constants::kSigmaL;
  double sigma_u = constants::kSigmaU;
  double gamma = constants::kGamma;
  double eps2_prime = constants::kEps2Prime;
  double nu = constants::kNu;
  int k = constants::kExponent;
  std::uint64_t seed = 0;
  HkOptions lp;
};

enum class Alg2Case { kA1, kA2, kB };

inline const char* to_string(Alg2Case c) {
  switch (c) {
    case Alg2Case::kA1: return "A1";
    case Alg2Case::kA2: return "A2";
    case Alg2Case::kB: return "B";
  }
  return "?";
}

struct Alg2Trace {
  Alg2Case case_taken = Alg2Case::kB;
  double alpha = 0.0;
  double lp_value = 0.0;
  double tree_cost = 0.0;
  double tjoin_cost = 0.0;
  std::optional<bool> st_removed;  // A2 only: true if (s,t) was removed from L0
  double final_cost = 0.0;
  double ratio = 0.0;
  int nearly_integral_count = 0;
  int odd_vertices_in_l = 0;
  bool graphical = false;
  double sigma_l = 0.0;
  double sigma_u = 0.0;
  std::uint64_t seed = 0;
};

struct Alg2Run {
  std::vector<Vertex> path;
  Alg2Trace trace;
};

struct CaseA1Result {
  std::vector<Vertex> path;
  double cost = 0.0;
  std::vector<Edge> nearly_integral;  // S'
  EdgeMultiset spanning_subgraph;     // F'
  EdgeMultiset tree;                  // F
  EdgeMultiset tjoin;                 // J
  ParitySet parity_set;
  TJoinDual y_certificate;
  std::optional<TJoinDualReport> y_check;  // filled when n <= 22
  int odd_vertices_in_l = 0;
};

// Nearly integral edges, the cheapest connected spanning supergraph F' of
// them, a minimum spanning tree F of F', and a T-join fixing F's parity.
inline CaseA1Result case_a1(const Instance& inst, const FractionalSolution& x,
                            double gamma = constants::kGamma) {
  const int n = inst.n();
  CaseA1Result out{{}, 0.0, {}, EdgeMultiset(n), EdgeMultiset(n), EdgeMultiset(n), {}, {}, std::nullopt, 0};
  std::vector<int> s_degree(n, 0);
  std::vector<char> in_s_prime(edge_count(n), 0);
  for (const Edge& e : complete_edges(n))
    if (nearly_integral(x.at(e.u, e.v), gamma)) {
      out.nearly_integral.push_back(e);
      in_s_prime[edge_index(n, e.u, e.v)] = 1;
      if (++s_degree[e.u] > 2 || ++s_degree[e.v] > 2)
        throw Error("nearly integral edges are not a union of disjoint paths and cycles");
    }

  UnionFind uf(n);
  for (const Edge& e : out.nearly_integral) {
    out.spanning_subgraph.add(e);
    uf.unite(e.u, e.v);
  }
  std::vector<Edge> by_cost = complete_edges(n);
  std::stable_sort(by_cost.begin(), by_cost.end(),
                   [&](const Edge& a, const Edge& b) { return inst.cost(a) < inst.cost(b); });
  for (const Edge& e : by_cost)
    if (uf.unite(e.u, e.v)) out.spanning_subgraph.add(e);

  // Only cycles inside S' can close in F'; MST of F' drops one edge from each.
  std::vector<Edge> candidates;
  for (const auto& [e, k] : out.spanning_subgraph.multiplicities()) candidates.push_back(e);
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Edge& a, const Edge& b) {
    if (inst.cost(a) != inst.cost(b)) return inst.cost(a) < inst.cost(b);
    return in_s_prime[edge_index(n, a.u, a.v)] > in_s_prime[edge_index(n, b.u, b.v)];
  });
  out.tree = kruskal(n, candidates);
  out.parity_set = wrong_parity_set(out.tree, inst.s(), inst.t());
  out.tjoin = min_tjoin(out.parity_set, inst);
  EdgeMultiset l = out.tree;
  l += out.tjoin;
  out.odd_vertices_in_l = static_cast<int>(l.odd_vertices().size());
  out.path = shortcut(euler_path(l, inst.s(), inst.t()), inst.s(), inst.t(), n);
  out.cost = inst.walk_cost(out.path);

  // Fractional T-join: 1 on F \ S, x_e off F, x_e / (2(1 - gamma)) on S = S' cap F.
  out.y_certificate.T = out.parity_set.vertices();
  out.y_certificate.y.assign(edge_count(n), 0.0);
  for (const Edge& e : complete_edges(n)) {
    const std::size_t idx = edge_index(n, e.u, e.v);
    const double xe = x.x[idx];
    if (out.tree.multiplicity(e) == 0)
      out.y_certificate.y[idx] = xe;
    else if (in_s_prime[idx])
      out.y_certificate.y[idx] = xe / (2.0 * (1.0 - gamma));
    else
      out.y_certificate.y[idx] = 1.0;
  }
  if (n <= kTJoinDualCap) out.y_check = tjoin_dual_check(out.y_certificate, inst);
  return out;
}

struct CaseA2Result {
  std::vector<Vertex> path;
  double cost = 0.0;
  bool st_removed = false;
  EdgeMultiset tree;   // F
  EdgeMultiset tjoin;  // J
  EdgeMultiset l;      // L
};

// Sampled tree F, T-join on its odd vertices (L0 = F + J is Eulerian), then
// toggle one copy of (s,t) so exactly s and t are odd.
template <class Rng>
CaseA2Result case_a2(const Instance& inst, const MaxEntModel& model, Rng& rng) {
  const int n = inst.n();
  CaseA2Result out{{}, 0.0, false, sample_tree(model, rng), EdgeMultiset(n), EdgeMultiset(n)};
  out.tjoin = min_tjoin(ParitySet(out.tree.odd_vertices()), inst);
  out.l = out.tree;
  out.l += out.tjoin;
  const Edge st(inst.s(), inst.t());
  out.st_removed = out.l.remove(st);
  if (!out.st_removed) out.l.add(st);
  std::vector<Vertex> walk;
  try {
    walk = euler_path(out.l, inst.s(), inst.t());
  } catch (const Error& e) {
    throw Error(std::string("internal error: case A2 multigraph L is not traversable: ") + e.what());
  }
  out.path = shortcut(walk, inst.s(), inst.t(), n);
  out.cost = inst.walk_cost(out.path);
  return out;
}

inline CaseA2Result case_a2(const Instance& inst, const MaxEntModel& model, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_engine(seed);
  return case_a2(inst, model, rng);
}

inline MaxEntModel fit_case_a2_model(const Instance& inst, const FractionalSolution& x,
                                     double nu = constants::kNu, int k = constants::kExponent) {
  return fit_circuit_point(lift_to_circuit(x, inst), nu, k);
}

// Combined algorithm: near the critical ratio c(s,t) ~ c(x*)/3 use the
// structure-based cases, otherwise Hoogeveen.
inline Alg2Run run_algorithm2(const Instance& inst, const FractionalSolution& x,
                              const Alg2Params& params = {}) {
  Alg2Run run;
  Alg2Trace& tr = run.trace;
  tr.lp_value = x.value;
  tr.alpha = critical_alpha(inst, x);
  tr.graphical = inst.origin().has_value();
  tr.sigma_l = params.sigma_l;
  tr.sigma_u = params.sigma_u;
  tr.seed = params.seed;
  const StructureClass structure = classify_structure(x, params.gamma, params.eps2_prime);
  tr.nearly_integral_count = structure.nearly_integral_count;

  if (tr.alpha >= -params.sigma_l && tr.alpha <= params.sigma_u) {
    if (structure.which == StructureCase::kA1) {
      CaseA1Result a1 = case_a1(inst, x, params.gamma);
      tr.case_taken = Alg2Case::kA1;
      tr.tree_cost = a1.tree.cost(inst);
      tr.tjoin_cost = a1.tjoin.cost(inst);
      tr.odd_vertices_in_l = a1.odd_vertices_in_l;
      run.path = std::move(a1.path);
    } else {
      const MaxEntModel model = fit_case_a2_model(inst, x, params.nu, params.k);
      CaseA2Result a2 = case_a2(inst, model, params.seed);
      tr.case_taken = Alg2Case::kA2;
      tr.tree_cost = a2.tree.cost(inst);
      tr.tjoin_cost = a2.tjoin.cost(inst);
      tr.st_removed = a2.st_removed;
      tr.odd_vertices_in_l = static_cast<int>(a2.l.odd_vertices().size());
      run.path = std::move(a2.path);
    }
  } else {
    HoogeveenRun b = run_hoogeveen(inst, x);
    tr.case_taken = Alg2Case::kB;
    tr.tree_cost = b.certificate.tree_cost;
    tr.tjoin_cost = b.certificate.matching_cost;
    EdgeMultiset l = b.tree;
    l += b.matching;
    tr.odd_vertices_in_l = static_cast<int>(l.odd_vertices().size());
    run.path = std::move(b.path);
  }
  tr.final_cost = inst.walk_cost(run.path);
  tr.ratio = tr.lp_value > 0.0 ? tr.final_cost / tr.lp_value : 1.0;
  return run;
}

inline Alg2Run run_algorithm2(const Instance& inst, const Alg2Params& params = {}) {
  return run_algorithm2(inst, solve_hk_path(inst, params.lp), params);
}

// Case B guarantee: (5/3 - min(sigma_l / 2, sigma_u)) c(x*).
inline double case_b_bound(double lp_value, double sigma_l, double sigma_u) {
  return (5.0 / 3.0 - std::min(sigma_l / 2.0, sigma_u)) * lp_value;
}

// Case A1 guarantee: (3 / (2(1 - gamma)) + 2 eps2' + 2 gamma) c(x*).
inline double case_a1_bound(double lp_value, double gamma = constants::kGamma,
                            double eps2_prime = constants::kEps2Prime) {
  return (3.0 / (2.0 * (1.0 - gamma)) + 2.0 * eps2_prime + 2.0 * gamma) * lp_value;
}

}  // namespace tsppath
