#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tsppath/combinat.hpp"
#include "tsppath/instance.hpp"
#include "tsppath/lpcore.hpp"

namespace tsppath {

// Per-instance record of the LP-based bounds on Hoogeveen's algorithm.
struct HoogeveenCertificate {
  double lp_value = 0.0;       // c(x*)
  double tree_cost = 0.0;      // c(H)
  double matching_cost = 0.0;  // c(M)
  double st_cost = 0.0;        // c(s, t)
  double bound_h2 = 0.0;       // (c(x*) + c(s,t)) / 2
  double bound_h3 = 0.0;       // c(x*) - c(s,t)
  double alg_cost = 0.0;
  double ratio = 0.0;  // alg_cost / lp_value
  double alpha = 0.0;  // c(s,t) / c(x*) - 1/3
  int parity_set_size = 0;

  // Names of the bounds that fail; empty on a valid run.
  [[nodiscard]] std::vector<std::string> violations(double tol = 1e-7) const {
    std::vector<std::string> out;
    const double slack = tol * std::max(1.0, lp_value);
    if (tree_cost > lp_value + slack) out.emplace_back("tree cost exceeds LP value");
    if (matching_cost > std::min(bound_h2, bound_h3) + slack)
      out.emplace_back("matching cost exceeds min of the two matching bounds");
    if (alg_cost > tree_cost + matching_cost + slack)
      out.emplace_back("output cost exceeds tree plus matching");
    if (ratio > 5.0 / 3.0 + tol) out.emplace_back("ratio exceeds 5/3");
    return out;
  }
};

struct HoogeveenRun {
  std::vector<Vertex> path;
  EdgeMultiset tree;
  EdgeMultiset matching;
  ParitySet parity_set;
  std::vector<Vertex> walk;
  HoogeveenCertificate certificate;
};

inline double critical_alpha(const Instance& inst, double lp_value) {
  if (!(lp_value > 0.0)) throw Error("critical alpha undefined for zero LP value");
  return inst.st_cost() / lp_value - 1.0 / 3.0;
}

inline double critical_alpha(const Instance& inst, const FractionalSolution& x) {
  return critical_alpha(inst, x.value);
}

// Tree, matching on the wrong-parity set, Euler path, shortcut; the LP value
// is only used to fill the certificate.
inline HoogeveenRun run_hoogeveen(const Instance& inst, const FractionalSolution& lp) {
  HoogeveenRun run{{}, mst(inst), EdgeMultiset(inst.n()), {}, {}, {}};
  run.parity_set = wrong_parity_set(run.tree, inst.s(), inst.t());
  run.matching = min_tjoin(run.parity_set, inst);
  EdgeMultiset both = run.tree;
  both += run.matching;
  run.walk = euler_path(both, inst.s(), inst.t());
  run.path = shortcut(run.walk, inst.s(), inst.t(), inst.n());

  HoogeveenCertificate& c = run.certificate;
  c.lp_value = lp.value;
  c.tree_cost = run.tree.cost(inst);
  c.matching_cost = run.matching.cost(inst);
  c.st_cost = inst.st_cost();
  c.bound_h2 = 0.5 * (c.lp_value + c.st_cost);
  c.bound_h3 = c.lp_value - c.st_cost;
  c.alg_cost = inst.walk_cost(run.path);
  c.ratio = c.lp_value > 0.0 ? c.alg_cost / c.lp_value : 1.0;
  c.alpha = c.lp_value > 0.0 ? critical_alpha(inst, c.lp_value) : 0.0;
  c.parity_set_size = static_cast<int>(run.parity_set.size());
  return run;
}

inline HoogeveenRun run_hoogeveen(const Instance& inst, const HkOptions& options = {}) {
  return run_hoogeveen(inst, solve_hk_path(inst, options));
}

struct LemmaH3Check {
  EdgeMultiset m_prime;
  bool is_tjoin = false;
  bool cost_bound_ok = false;
};

// M' = H minus its s-t path is a T-join for H's wrong-parity set, so the
// minimum matching costs no more than c(H) - c(P_st).
inline LemmaH3Check certify_lemma_h3_construction(const Instance& inst, const EdgeMultiset& tree,
                                                  double tol = 1e-9) {
  LemmaH3Check out{tree_minus_path(tree, inst.s(), inst.t())};
  const ParitySet T = wrong_parity_set(tree, inst.s(), inst.t());
  out.is_tjoin = out.m_prime.odd_vertices() == T.vertices();
  double path_cost = 0.0;
  for (const Edge& e : tree_path(tree, inst.s(), inst.t())) path_cost += inst.cost(e);
  const double m_prime_cost = out.m_prime.cost(inst);
  const double matching_cost = min_tjoin(T, inst).cost(inst);
  out.cost_bound_ok = matching_cost <= m_prime_cost + tol &&
                      std::abs(m_prime_cost - (tree.cost(inst) - path_cost)) <= tol;
  return out;
}

}  // namespace tsppath
