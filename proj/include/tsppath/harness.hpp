#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "tsppath/combinat.hpp"
#include "tsppath/constants.hpp"
#include "tsppath/gpath.hpp"
#include "tsppath/hoogeveen.hpp"
#include "tsppath/instance.hpp"
#include "tsppath/lpcore.hpp"
#include "tsppath/oracle.hpp"

namespace tsppath {

// Stable string hash, so seeds derived from ids do not depend on the library.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

struct InstanceMeta {
  std::string id;
  std::string family = "custom";
  int k = 0;
  std::uint64_t seed = 0;
};

struct EvalOptions {
  int oracle_cap = kOracleCap;
  bool run_alg2 = true;
  Alg2Params alg2;
  double rho_eff = constants::kRhoEff;
  double delta_eff = constants::kDeltaEff;
};

struct ReportRow {
  InstanceMeta meta;
  int n = 0;
  Vertex s = 0;
  Vertex t = 0;
  double lp_path = 0.0;
  double lp_circuit = 0.0;
  std::optional<double> opt_path;
  std::optional<double> opt_circuit;
  HoogeveenCertificate hoogeveen;
  std::optional<Alg2Trace> alg2;
  Alg2Params params;
  double rho_eff = 0.0;
  double delta_eff = 0.0;
  std::string error;
  std::vector<std::string> violations;
};

inline std::optional<double> path_gap(const ReportRow& r) {
  if (!r.opt_path || r.lp_path <= 0.0) return std::nullopt;
  return *r.opt_path / r.lp_path;
}

inline std::optional<double> circuit_gap(const ReportRow& r) {
  if (!r.opt_circuit || r.lp_circuit <= 0.0) return std::nullopt;
  return *r.opt_circuit / r.lp_circuit;
}

// LP values, oracle optima, Hoogeveen certificate and LP-guided algorithm trace for
// one instance, plus every cross-check that failed. Sub-module errors are
// caught and recorded on the row.
inline ReportRow evaluate_instance(const Instance& inst, const InstanceMeta& meta,
                                   const EvalOptions& options) {
  ReportRow row;
  row.meta = meta;
  row.n = inst.n();
  row.s = inst.s();
  row.t = inst.t();
  row.params = options.alg2;
  row.rho_eff = options.rho_eff;
  row.delta_eff = options.delta_eff;
  auto slack = [](double v) { return 1e-7 * std::max(1.0, std::abs(v)); };
  try {
    if (!validate_metric(inst).empty()) throw Error("instance violates the triangle inequality");
    const FractionalSolution path_lp = solve_hk_path(inst, options.alg2.lp);
    row.lp_path = path_lp.value;
    row.lp_circuit = solve_hk_circuit(inst, options.alg2.lp).value;
    if (inst.n() <= options.oracle_cap) {
      row.opt_path = exact_opt(inst, options.oracle_cap).opt_cost;
      row.opt_circuit = exact_opt_circuit(inst, options.oracle_cap).opt_cost;
    }
    const HoogeveenRun h = run_hoogeveen(inst, path_lp);
    row.hoogeveen = h.certificate;
    for (const std::string& v : h.certificate.violations()) row.violations.push_back("hoogeveen: " + v);
    if (!is_hamiltonian_path(h.path, inst.s(), inst.t(), inst.n()))
      row.violations.emplace_back("hoogeveen: output is not a Hamiltonian s-t path");
    if (row.opt_path) {
      if (row.lp_path > *row.opt_path + slack(*row.opt_path))
        row.violations.emplace_back("sandwich: path LP exceeds optimum");
      if (*row.opt_path > h.certificate.alg_cost + slack(*row.opt_path))
        row.violations.emplace_back("sandwich: optimum exceeds Hoogeveen cost");
    }
    if (row.opt_circuit && row.lp_circuit > *row.opt_circuit + slack(*row.opt_circuit))
      row.violations.emplace_back("sandwich: circuit LP exceeds circuit optimum");
    if (options.run_alg2) {
      Alg2Params p = options.alg2;
      p.seed = meta.seed;
      const Alg2Run a = run_algorithm2(inst, path_lp, p);
      row.alg2 = a.trace;
      if (!is_hamiltonian_path(a.path, inst.s(), inst.t(), inst.n()))
        row.violations.emplace_back("alg2: output is not a Hamiltonian s-t path");
      if (a.trace.odd_vertices_in_l != 2)
        row.violations.emplace_back("alg2: L does not have exactly two odd vertices");
      // Case A2 is only bounded in expectation; its per-run ratio is reported, not checked.
      if (a.trace.case_taken != Alg2Case::kA2 && a.trace.ratio > 5.0 / 3.0 + 1e-7)
        row.violations.emplace_back("alg2: ratio exceeds 5/3");
      if (a.trace.case_taken == Alg2Case::kA1 &&
          a.trace.final_cost > case_a1_bound(row.lp_path, p.gamma, p.eps2_prime) + slack(row.lp_path))
        row.violations.emplace_back("alg2: case A1 cost exceeds its bound");
      if (a.trace.case_taken == Alg2Case::kB &&
          a.trace.final_cost > case_b_bound(row.lp_path, p.sigma_l, p.sigma_u) + slack(row.lp_path))
        row.violations.emplace_back("alg2: case B cost exceeds its bound");
      if (row.opt_path && *row.opt_path > a.trace.final_cost + slack(*row.opt_path))
        row.violations.emplace_back("sandwich: optimum exceeds LP-guided algorithm cost");
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

// Runs fn(i) for i in [0, count) on a small worker pool; results are stored
// by index so output order never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, unsigned threads = 0) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(fn(i));
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline InstanceMeta family_meta(GapFamily family, int k) {
  InstanceMeta m;
  m.family = std::string(to_string(family));
  m.k = k;
  m.id = m.family + "-k" + std::to_string(k);
  m.seed = splitmix64(static_cast<std::uint64_t>(k) * 7919u + (family == GapFamily::kPathFig1b));
  return m;
}

// One row per k in [k_min, k_max]; an empty range gives an empty report.
inline std::vector<ReportRow> gap_scan(GapFamily family, int k_min, int k_max,
                                       const EvalOptions& options = {}, unsigned threads = 0) {
  if (k_max < k_min) return {};
  return parallel_map(
      static_cast<std::size_t>(k_max - k_min + 1),
      [&](std::size_t i) {
        const int k = k_min + static_cast<int>(i);
        return evaluate_instance(gen_gap_family({family, k}), family_meta(family, k), options);
      },
      threads);
}

struct RandomGraphicalSpec {
  int count = 0;
  int n_min = 6;
  int n_max = 14;
  double edge_probability = 0.3;
  std::uint64_t seed = 1;
};

struct FamilyRangeSpec {
  GapFamily family = GapFamily::kPathFig1b;
  int k_min = 1;
  int k_max = 1;
};

struct CorpusConfig {
  std::vector<RandomGraphicalSpec> random;
  std::vector<FamilyRangeSpec> families;
  std::vector<std::pair<std::string, Instance>> instances;  // (id, instance)
  EvalOptions eval;
  unsigned threads = 0;
};

struct CorpusEntry {
  Instance instance;
  InstanceMeta meta;
};

// The n-th instance drawn by a random spec: size, endpoints and graph seed all
// derive from (spec.seed, index).
inline CorpusEntry random_entry(const RandomGraphicalSpec& spec, int index) {
  const std::uint64_t h = splitmix64(spec.seed * 1000003u + static_cast<std::uint64_t>(index));
  const int n = spec.n_min + static_cast<int>(h % static_cast<std::uint64_t>(spec.n_max - spec.n_min + 1));
  const std::uint64_t h2 = splitmix64(h);
  const Vertex s = static_cast<Vertex>(h2 % n);
  const Vertex t = static_cast<Vertex>((s + 1 + (h2 >> 20) % (n - 1)) % n);
  const std::uint64_t graph_seed = splitmix64(h2);
  InstanceMeta meta;
  meta.family = "random_graphical";
  meta.seed = graph_seed;
  meta.id = "rg-" + std::to_string(spec.seed) + "-" + std::to_string(index);
  return {gen_random_graphical(n, spec.edge_probability, graph_seed, s, t), meta};
}

inline std::vector<CorpusEntry> expand_corpus(const CorpusConfig& config) {
  std::vector<CorpusEntry> out;
  for (const RandomGraphicalSpec& spec : config.random) {
    if (spec.n_min < 2 || spec.n_max < spec.n_min) throw Error("invalid random size range");
    for (int i = 0; i < spec.count; ++i) out.push_back(random_entry(spec, i));
  }
  for (const FamilyRangeSpec& f : config.families)
    for (int k = f.k_min; k <= f.k_max; ++k)
      out.push_back({gen_gap_family({f.family, k}), family_meta(f.family, k)});
  for (const auto& [id, inst] : config.instances) {
    InstanceMeta meta;
    meta.id = id;
    meta.seed = splitmix64(fnv1a(id));
    out.push_back({inst, meta});
  }
  return out;
}

struct CorpusViolation {
  std::string id;
  std::string message;
};

struct CorpusReport {
  std::vector<ReportRow> rows;
  std::vector<CorpusViolation> violations;
  int errors = 0;
};

inline CorpusReport run_corpus(const CorpusConfig& config) {
  const std::vector<CorpusEntry> entries = expand_corpus(config);
  CorpusReport rep;
  rep.rows = parallel_map(
      entries.size(),
      [&](std::size_t i) { return evaluate_instance(entries[i].instance, entries[i].meta, config.eval); },
      config.threads);
  for (const ReportRow& r : rep.rows) {
    for (const std::string& v : r.violations) rep.violations.push_back({r.meta.id, v});
    if (!r.error.empty()) ++rep.errors;
  }
  return rep;
}

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_num(*v) : ""; }

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline constexpr const char* kReportColumns =
    "id,family,k,n,s,t,seed,lp_path,lp_circuit,opt_path,opt_circuit,path_gap,circuit_gap,"
    "tree_cost,matching_cost,hoogeveen_cost,hoogeveen_ratio,alpha,alg2_case,alg2_cost,alg2_ratio,"
    "sigma_l,sigma_u,gamma,eps2_prime,rho_eff,delta_eff,violations,error";

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  using detail::fmt_num;
  using detail::fmt_opt;
  os << kReportColumns << '\n';
  for (const ReportRow& r : rows) {
    std::string violations;
    for (const std::string& v : r.violations) violations += (violations.empty() ? "" : "; ") + v;
    os << detail::csv_escape(r.meta.id) << ',' << r.meta.family << ',' << r.meta.k << ',' << r.n << ','
       << r.s << ',' << r.t << ',' << r.meta.seed << ',' << fmt_num(r.lp_path) << ','
       << fmt_num(r.lp_circuit) << ',' << fmt_opt(r.opt_path) << ',' << fmt_opt(r.opt_circuit) << ','
       << fmt_opt(path_gap(r)) << ',' << fmt_opt(circuit_gap(r)) << ','
       << fmt_num(r.hoogeveen.tree_cost) << ',' << fmt_num(r.hoogeveen.matching_cost) << ','
       << fmt_num(r.hoogeveen.alg_cost) << ',' << fmt_num(r.hoogeveen.ratio) << ','
       << fmt_num(r.hoogeveen.alpha) << ',' << (r.alg2 ? to_string(r.alg2->case_taken) : "") << ','
       << (r.alg2 ? fmt_num(r.alg2->final_cost) : "") << ',' << (r.alg2 ? fmt_num(r.alg2->ratio) : "")
       << ',' << fmt_num(r.params.sigma_l) << ',' << fmt_num(r.params.sigma_u) << ','
       << fmt_num(r.params.gamma) << ',' << fmt_num(r.params.eps2_prime) << ',' << fmt_num(r.rho_eff)
       << ',' << fmt_num(r.delta_eff) << ',' << detail::csv_escape(violations) << ','
       << detail::csv_escape(r.error) << '\n';
  }
}

}  // namespace tsppath
