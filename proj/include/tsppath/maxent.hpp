#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tsppath/combinat.hpp"
#include "tsppath/constants.hpp"
#include "tsppath/lpcore.hpp"
#include "tsppath/mincut.hpp"

namespace tsppath {

// Effective resistances between the endpoints of each listed edge in the
// graph (n vertices, weighted edges), via the Laplacian grounded at n-1.
inline std::vector<double> effective_resistances(int n, const std::vector<Edge>& edges,
                                                 const std::vector<double>& weight,
                                                 const std::vector<Edge>& queries) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (weight[i] > 0.0) uf.unite(edges[i].u, edges[i].v);
  if (uf.components() != 1) throw Error("support graph is disconnected: Laplacian is singular");
  std::vector<double> out(queries.size(), 0.0);
  if (n == 1) return out;
  const int r = n - 1;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(r, r);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    const double w = weight[i];
    if (u < r) lap(u, u) += w;
    if (v < r) lap(v, v) += w;
    if (u < r && v < r) {
      lap(u, v) -= w;
      lap(v, u) -= w;
    }
  }
  const Eigen::MatrixXd inv = lap.llt().solve(Eigen::MatrixXd::Identity(r, r));
  auto entry = [&](int a, int b) { return (a < r && b < r) ? inv(a, b) : 0.0; };
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto [u, v] = queries[q];
    out[q] = entry(u, u) + entry(v, v) - 2.0 * entry(u, v);
  }
  return out;
}

// P[e in T] for T drawn with probability proportional to prod lambda_e:
// lambda_e times the effective resistance of e.
inline std::vector<double> tree_marginals(int n, const std::vector<Edge>& support,
                                          const std::vector<double>& lambda) {
  if (support.size() != lambda.size()) throw Error("lambda length does not match support");
  for (double l : lambda)
    if (!(l > 0.0)) throw Error("lambda must be positive");
  std::vector<double> p = effective_resistances(n, support, lambda, support);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(lambda[i] * p[i], 0.0, 1.0);
  return p;
}

struct MaxEntModel {
  int n = 0;
  std::vector<Edge> support;
  std::vector<double> lambda;
  std::vector<double> target;  // z
  std::vector<double> fitted;  // p(lambda)
  double nu = constants::kNu;
  int k = constants::kExponent;
  int iterations = 0;
  double max_ratio = 0.0;  // max_e fitted_e / target_e

  [[nodiscard]] double bound() const { return 1.0 + nu / std::pow(static_cast<double>(n), k); }
};

struct FitOptions {
  int max_iterations = 100000;
};

// Multiplicative fixed point lambda_e <- lambda_e * (z_e / p_e), damped
// (exponent halved) whenever the worst ratio gets worse, until
// max_e p_e / z_e <= 1 + nu / n^k.
inline MaxEntModel fit_lambda(int n, const std::vector<Edge>& support,
                              const std::vector<double>& z, double nu = constants::kNu,
                              int k = constants::kExponent, const FitOptions& options = {}) {
  if (support.size() != z.size()) throw Error("target length does not match support");
  if (support.empty()) throw Error("empty support");
  double total = 0.0;
  for (double ze : z) {
    if (!(ze > 0.0)) throw Error("targets must be positive on the support");
    total += ze;
  }
  if (std::abs(total - (n - 1)) > 1e-6 * n)
    throw Error("target marginals must sum to n - 1 (spanning tree polytope)");

  MaxEntModel model;
  model.n = n;
  model.support = support;
  model.target = z;
  model.nu = nu;
  model.k = k;
  model.lambda.assign(z.size(), 1.0);
  const double bound = model.bound();
  double step = 1.0;
  double prev_worst = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= options.max_iterations; ++it) {
    model.fitted = tree_marginals(n, support, model.lambda);
    double worst = 0.0;
    for (std::size_t e = 0; e < z.size(); ++e) worst = std::max(worst, model.fitted[e] / z[e]);
    model.iterations = it;
    model.max_ratio = worst;
    if (worst <= bound) return model;
    if (worst > prev_worst) step = std::max(step * 0.5, 1.0 / 1024.0);
    prev_worst = worst;
    double log_mean = 0.0;
    for (std::size_t e = 0; e < z.size(); ++e) {
      model.lambda[e] *= std::pow(z[e] / std::max(model.fitted[e], 1e-300), step);
      log_mean += std::log(model.lambda[e]);
    }
    // lambda is scale-free; keep it centred to avoid drift.
    const double scale = std::exp(-log_mean / static_cast<double>(z.size()));
    for (double& l : model.lambda) l *= scale;
  }
  throw Error("lambda fitting did not converge: max marginal ratio " +
              std::to_string(model.max_ratio) + " vs bound " + std::to_string(bound));
}

// Support and target (1 - 1/n) x of a circuit-feasible point.
inline MaxEntModel fit_circuit_point(const FractionalSolution& x_circuit,
                                     double nu = constants::kNu, int k = constants::kExponent,
                                     const FitOptions& options = {}) {
  const int n = x_circuit.n;
  std::vector<Edge> support;
  std::vector<double> z;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const double xe = x_circuit.at(u, v);
      if (xe > 1e-9) {
        support.emplace_back(u, v);
        z.push_back((1.0 - 1.0 / n) * xe);
      }
    }
  // Renormalise away LP round-off so that z(E) = n - 1 exactly.
  double total = 0.0;
  for (double ze : z) total += ze;
  for (double& ze : z) ze *= (n - 1) / total;
  return fit_lambda(n, support, z, nu, k, options);
}

// Exact sampler for the lambda-weighted spanning-tree measure: walk the
// support in order, keep each edge with its conditional marginal given the
// decisions so far (contract on keep, delete on drop).
template <class Rng>
EdgeMultiset sample_tree(const MaxEntModel& model, Rng& rng) {
  const int n = model.n;
  EdgeMultiset tree(n);
  UnionFind chosen(n);
  const std::size_t m = model.support.size();
  std::vector<char> dropped(m, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < m && tree.size() < n - 1; ++i) {
    const Edge e = model.support[i];
    if (chosen.find(e.u) == chosen.find(e.v)) {
      dropped[i] = 1;
      continue;
    }
    // Quotient graph: components of chosen edges, live edges between them.
    std::vector<int> label(n, -1);
    int r = 0;
    for (Vertex v = 0; v < n; ++v) {
      const int root = chosen.find(v);
      if (label[root] < 0) label[root] = r++;
      label[v] = label[root];
    }
    std::vector<Edge> live;
    std::vector<double> w;
    for (std::size_t j = i; j < m; ++j) {
      if (dropped[j]) continue;
      const int a = label[model.support[j].u];
      const int b = label[model.support[j].v];
      if (a == b) continue;
      live.emplace_back(a, b);
      w.push_back(model.lambda[j]);
    }
    const Edge q(label[e.u], label[e.v]);
    const double p = std::clamp(model.lambda[i] * effective_resistances(r, live, w, {q})[0], 0.0, 1.0);
    if (unit(rng) < p) {
      tree.add(e);
      chosen.unite(e.u, e.v);
    } else {
      dropped[i] = 1;
    }
  }
  if (!tree.is_spanning_tree()) throw Error("internal error: sampler produced a non-tree");
  return tree;
}

inline EdgeMultiset sample_tree(const MaxEntModel& model, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_engine(seed);
  return sample_tree(model, rng);
}

struct CutCatalog {
  int n = 0;
  std::vector<double> reference_weight;  // edge-indexed
  double min_cut = 0.0;
  double delta = 0.0;
  std::vector<VertexMask> cuts;  // sides S with vertex 0 outside S
};

inline constexpr int kCutEnumerationCap = 20;

namespace detail {

// Visits every S subset of {1..n-1}, S nonempty, with its cut weight.
template <class Visit>
void for_each_bipartition(const WeightMatrix& g, Visit&& visit) {
  const int n = g.n;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  VertexMask side = 0;
  double value = 0.0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int flip = std::countr_zero(i) + 1;
    const VertexMask bit = VertexMask{1} << flip;
    double delta = 0.0;
    for (Vertex u = 0; u < n; ++u) {
      if (u == flip) continue;
      delta += in_mask(side, u) ? -g(flip, u) : g(flip, u);
    }
    value += (side & bit) ? -delta : delta;
    side ^= bit;
    visit(side, value);
  }
}

}  // namespace detail

// All (1 + delta)-near-minimum cuts by exhaustive enumeration.
inline CutCatalog near_min_cuts(int n, const std::vector<double>& x, double delta,
                                int n_cap = kCutEnumerationCap) {
  if (n > n_cap) throw SizeError("near-minimum cut enumeration limited to n <= " + std::to_string(n_cap));
  if (x.size() != edge_count(n)) throw Error("edge vector has wrong length");
  CutCatalog cat;
  cat.n = n;
  cat.reference_weight = x;
  cat.delta = delta;
  if (n < 2) return cat;
  const WeightMatrix g = WeightMatrix::from_edge_vector(n, x);
  double best = std::numeric_limits<double>::infinity();
  detail::for_each_bipartition(g, [&](VertexMask, double v) { best = std::min(best, v); });
  cat.min_cut = best;
  const double limit = (1.0 + delta) * best + 1e-12 * std::max(1.0, best);
  detail::for_each_bipartition(g, [&](VertexMask side, double v) {
    if (v <= limit) cat.cuts.push_back(side);
  });
  std::sort(cat.cuts.begin(), cat.cuts.end());
  return cat;
}

// Flag per K_n edge: even iff every catalog cut it crosses meets F an even
// number of times.
inline std::vector<char> even_edge_flags(const EdgeMultiset& F, const CutCatalog& catalog) {
  const int n = catalog.n;
  if (F.n() != n) throw Error("tree and catalog disagree on vertex count");
  std::vector<char> even(edge_count(n), 1);
  for (VertexMask side : catalog.cuts) {
    int crossing = 0;
    for (const auto& [e, k] : F.multiplicities())
      if (in_mask(side, e.u) != in_mask(side, e.v)) crossing += k;
    if (crossing % 2 == 0) continue;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (in_mask(side, u) != in_mask(side, v)) even[edge_index(n, u, v)] = 0;
  }
  return even;
}

inline std::vector<Edge> even_edges(const EdgeMultiset& F, const CutCatalog& catalog) {
  const std::vector<char> flags = even_edge_flags(F, catalog);
  std::vector<Edge> out;
  for (const Edge& e : complete_edges(catalog.n))
    if (flags[edge_index(catalog.n, e.u, e.v)]) out.push_back(e);
  return out;
}

struct GoodEdgeStat {
  Edge edge;
  double x = 0.0;
  double even_probability = 0.0;
  int sample_count = 0;
  bool good = false;
};

struct GoodEdgeReport {
  std::vector<GoodEdgeStat> edges;  // support of x_circuit
  double mass_of_good = 0.0;
  double rho_eff = constants::kRhoEff;
  double delta_eff = constants::kDeltaEff;
  double rho_theory = constants::kRho;
  double delta_theory = constants::kDelta;
  int samples = 0;
  std::uint64_t seed = 0;
  double min_cut = 0.0;
  int catalog_size = 0;
};

// Monte Carlo estimate of P[e even w.r.t. F] for each support edge of x_circuit.
inline GoodEdgeReport good_edge_report(const FractionalSolution& x_circuit, const MaxEntModel& model,
                                       int samples, double rho_eff, std::uint64_t seed,
                                       double delta_eff = constants::kDeltaEff) {
  if (samples <= 0) throw Error("good-edge report needs at least one sample");
  const int n = x_circuit.n;
  const CutCatalog catalog = near_min_cuts(n, x_circuit.x, delta_eff);
  GoodEdgeReport rep;
  rep.rho_eff = rho_eff;
  rep.delta_eff = delta_eff;
  rep.samples = samples;
  rep.seed = seed;
  rep.min_cut = catalog.min_cut;
  rep.catalog_size = static_cast<int>(catalog.cuts.size());
  std::vector<int> even_count(edge_count(n), 0);
  std::mt19937_64 rng = seeded_engine(seed);
  for (int i = 0; i < samples; ++i) {
    const std::vector<char> flags = even_edge_flags(sample_tree(model, rng), catalog);
    for (std::size_t e = 0; e < flags.size(); ++e) even_count[e] += flags[e];
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const double xe = x_circuit.at(u, v);
      if (xe <= 1e-9) continue;
      GoodEdgeStat st;
      st.edge = Edge(u, v);
      st.x = xe;
      st.sample_count = samples;
      st.even_probability = static_cast<double>(even_count[edge_index(n, u, v)]) / samples;
      st.good = st.even_probability >= rho_eff;
      if (st.good) rep.mass_of_good += xe;
      rep.edges.push_back(st);
    }
  return rep;
}

enum class StructureCase { kA1, kA2 };

inline const char* to_string(StructureCase c) { return c == StructureCase::kA1 ? "A1" : "A2"; }

struct StructureClass {
  StructureCase which = StructureCase::kA2;
  int nearly_integral_count = 0;
  double required = 0.0;  // (1 - eps2') (n - 1)
};

inline bool nearly_integral(double xe, double gamma) { return xe > 0.0 && xe >= 1.0 - gamma; }

// Case A1 iff at least (1 - eps2')(n - 1) edges have x_e >= 1 - gamma.
inline StructureClass classify_structure(const FractionalSolution& x, double gamma = constants::kGamma,
                                         double eps2_prime = constants::kEps2Prime) {
  StructureClass out;
  for (double xe : x.x)
    if (nearly_integral(xe, gamma)) ++out.nearly_integral_count;
  out.required = (1.0 - eps2_prime) * (x.n - 1);
  out.which = out.nearly_integral_count >= out.required ? StructureCase::kA1 : StructureCase::kA2;
  return out;
}

}  // namespace tsppath
