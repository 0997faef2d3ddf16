// Command-line front end: LP solves, Hoogeveen, the LP-guided algorithm, the exact
// oracle, gap scans, corpus runs, tree sampling and instance generation.
//
// Exit status: 0 on success with no certificate violations, 1 when a
// certificate or cross-check was violated, 2 on errors.

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "tsppath/io.hpp"
#include "tsppath/oracle.hpp"

using namespace tsppath;
using nlohmann::json;

namespace {

struct Common {
  std::string instance;
  std::string out;
  std::string format = "doc";
  std::uint64_t seed = 0;
  double sigma_l = constants::kSigmaL;
  double sigma_u = constants::kSigmaU;
  double gamma = constants::kGamma;
  double eps2_prime = constants::kEps2Prime;
  double rho_eff = constants::kRhoEff;
  double delta_eff = constants::kDeltaEff;
  int samples = 1000;
  unsigned threads = 0;
};

Alg2Params params_of(const Common& c) {
  Alg2Params p;
  p.sigma_l = c.sigma_l;
  p.sigma_u = c.sigma_u;
  p.gamma = c.gamma;
  p.eps2_prime = c.eps2_prime;
  p.seed = c.seed;
  return p;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

void emit_doc(const Common& c, const json& doc) { emit(c, doc.dump(2) + "\n"); }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line + "\n";
}

json path_json(const std::vector<Vertex>& path) { return path; }

Instance load(const Common& c) {
  if (c.instance.empty()) throw Error("--instance is required");
  return io::load_instance(c.instance);
}

int cmd_solve_lp(const Common& c, const std::string& variant) {
  const Instance inst = load(c);
  const FractionalSolution x = variant == "circuit" ? solve_hk_circuit(inst) : solve_hk_path(inst);
  if (c.format == "csv") {
    std::string text = "u,v,x\n";
    for (Vertex u = 0; u < x.n; ++u)
      for (Vertex v = u + 1; v < x.n; ++v)
        if (x.at(u, v) > 1e-12) text += csv_line({std::to_string(u), std::to_string(v), detail::fmt_num(x.at(u, v))});
    emit(c, text);
  } else {
    emit_doc(c, io::fractional_to_json(x));
  }
  return 0;
}

int cmd_hoogeveen(const Common& c) {
  const Instance inst = load(c);
  const HoogeveenRun run = run_hoogeveen(inst);
  const HoogeveenCertificate& cert = run.certificate;
  if (c.format == "csv") {
    emit(c, "lp_value,tree_cost,matching_cost,st_cost,bound_h2,bound_h3,alg_cost,ratio,alpha,parity_set_size\n" +
                csv_line({detail::fmt_num(cert.lp_value), detail::fmt_num(cert.tree_cost),
                          detail::fmt_num(cert.matching_cost), detail::fmt_num(cert.st_cost),
                          detail::fmt_num(cert.bound_h2), detail::fmt_num(cert.bound_h3),
                          detail::fmt_num(cert.alg_cost), detail::fmt_num(cert.ratio), detail::fmt_num(cert.alpha),
                          std::to_string(cert.parity_set_size)}));
  } else {
    emit_doc(c, {{"path", path_json(run.path)},
                 {"tree", io::edge_list_json(run.tree.edge_list())},
                 {"parity_set", run.parity_set.vertices()},
                 {"matching", io::edge_list_json(run.matching.edge_list())},
                 {"certificate", io::certificate_to_json(cert)}});
  }
  return cert.violations().empty() ? 0 : 1;
}

int cmd_alg2(const Common& c) {
  const Instance inst = load(c);
  const Alg2Params p = params_of(c);
  const Alg2Run run = run_algorithm2(inst, p);
  const Alg2Trace& t = run.trace;
  if (c.format == "csv") {
    emit(c, "case,alpha,lp_value,tree_cost,tjoin_cost,st_toggled,final_cost,ratio,sigma_l,sigma_u,seed\n" +
                csv_line({to_string(t.case_taken), detail::fmt_num(t.alpha), detail::fmt_num(t.lp_value),
                          detail::fmt_num(t.tree_cost), detail::fmt_num(t.tjoin_cost),
                          t.st_removed ? (*t.st_removed ? "removed" : "added") : "",
                          detail::fmt_num(t.final_cost), detail::fmt_num(t.ratio), detail::fmt_num(t.sigma_l),
                          detail::fmt_num(t.sigma_u), std::to_string(t.seed)}));
  } else {
    emit_doc(c, {{"path", path_json(run.path)}, {"trace", io::trace_to_json(t)}, {"params", io::params_to_json(p)}});
  }
  const bool hamiltonian = is_hamiltonian_path(run.path, inst.s(), inst.t(), inst.n());
  const bool ratio_ok = t.case_taken == Alg2Case::kA2 || t.ratio <= 5.0 / 3.0 + 1e-7;
  return hamiltonian && ratio_ok && t.odd_vertices_in_l == 2 ? 0 : 1;
}

int cmd_oracle(const Common& c, const std::string& variant) {
  const Instance inst = load(c);
  const OracleResult r = variant == "circuit" ? exact_opt_circuit(inst) : exact_opt(inst);
  if (c.format == "csv")
    emit(c, "variant,opt_cost\n" + csv_line({to_string(r.variant), detail::fmt_num(r.opt_cost)}));
  else
    emit_doc(c, {{"variant", to_string(r.variant)}, {"opt_cost", r.opt_cost}, {"opt_path", r.opt_path}});
  return 0;
}

int emit_rows(const Common& c, const std::vector<ReportRow>& rows) {
  if (c.format == "csv") {
    std::ostringstream os;
    write_csv(os, rows);
    emit(c, os.str());
  } else {
    json doc = json::array();
    for (const ReportRow& r : rows) doc.push_back(io::row_to_json(r));
    emit_doc(c, doc);
  }
  bool errors = false, violations = false;
  for (const ReportRow& r : rows) {
    errors = errors || !r.error.empty();
    violations = violations || !r.violations.empty();
  }
  return errors ? 2 : (violations ? 1 : 0);
}

EvalOptions eval_of(const Common& c, int oracle_cap) {
  EvalOptions e;
  e.alg2 = params_of(c);
  e.oracle_cap = std::min(oracle_cap, kOracleCap);
  e.rho_eff = c.rho_eff;
  e.delta_eff = c.delta_eff;
  return e;
}

int cmd_gap_scan(const Common& c, const std::string& family, int k_min, int k_max, int oracle_cap) {
  return emit_rows(c, gap_scan(parse_gap_family(family), k_min, k_max, eval_of(c, oracle_cap), c.threads));
}

int cmd_corpus(const Common& c, const std::string& config_path, std::string manifest_path) {
  const json config = json::parse(io::read_file(config_path));
  CorpusConfig cfg = io::corpus_config_from_json(config);
  if (c.threads) cfg.threads = c.threads;
  const CorpusReport rep = run_corpus(cfg);
  if (manifest_path.empty() && !c.out.empty()) manifest_path = c.out + ".manifest.json";
  if (!manifest_path.empty()) io::save_json(manifest_path, io::manifest(config, rep, cfg.eval));
  for (const CorpusViolation& v : rep.violations) std::cerr << "violation: " << v.id << ": " << v.message << "\n";
  for (const ReportRow& r : rep.rows)
    if (!r.error.empty()) std::cerr << "error: " << r.meta.id << ": " << r.error << "\n";
  return emit_rows(c, rep.rows);
}

int cmd_sample_trees(const Common& c) {
  if (c.samples <= 0) throw Error("--samples must be positive");
  const Instance inst = load(c);
  const FractionalSolution x = solve_hk_path(inst);
  const FractionalSolution lift = lift_to_circuit(x, inst);
  const MaxEntModel model = fit_circuit_point(lift);
  std::mt19937_64 rng = seeded_engine(c.seed);
  std::vector<double> tree_cost, join_cost;
  for (int i = 0; i < c.samples; ++i) {
    const EdgeMultiset f = sample_tree(model, rng);
    tree_cost.push_back(f.cost(inst));
    join_cost.push_back(min_tjoin(ParitySet(f.odd_vertices()), inst).cost(inst));
  }
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  json doc = {{"seed", c.seed},
              {"samples", c.samples},
              {"lp_path", x.value},
              {"lp_circuit_lift", lift.value},
              {"model", {{"iterations", model.iterations}, {"max_ratio", model.max_ratio}, {"bound", model.bound()}}},
              {"mean_tree_cost", mean(tree_cost)},
              {"mean_tjoin_cost", mean(join_cost)},
              {"tree_cost_envelope", (1.0 + model.nu / (inst.n() * inst.n())) * (1.0 - 1.0 / inst.n()) * lift.value},
              {"tjoin_cost_envelope", 0.5 * lift.value}};
  if (inst.n() <= kCutEnumerationCap) {
    const GoodEdgeReport rep = good_edge_report(lift, model, c.samples, c.rho_eff, c.seed, c.delta_eff);
    doc["good_edges"] = io::good_edges_to_json(rep);
    doc["catalog"] = io::catalog_to_json(near_min_cuts(inst.n(), lift.x, c.delta_eff));
  }
  if (c.format == "csv") {
    std::string text = "u,v,x,even_probability,good\n";
    if (doc.contains("good_edges"))
      for (const json& e : doc["good_edges"]["edges"])
        text += csv_line({std::to_string(e["u"].get<int>()), std::to_string(e["v"].get<int>()),
                          detail::fmt_num(e["x"].get<double>()), detail::fmt_num(e["even_probability"].get<double>()),
                          e["good"].get<bool>() ? "1" : "0"});
    emit(c, text);
  } else {
    emit_doc(c, doc);
  }
  return 0;
}

int cmd_generate(const Common& c, const std::string& family, int k, int n, double p) {
  Instance inst = family.empty() ? gen_random_graphical(n, p, c.seed, 0, n - 1)
                                 : gen_gap_family({parse_gap_family(family), k});
  emit_doc(c, io::instance_to_json(inst));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s-t path TSP laboratory: Held-Karp LPs, Hoogeveen, LP-guided algorithm, exact oracle"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool needs_instance) {
    if (needs_instance) sub->add_option("--instance", c.instance, "Instance document (JSON)")->required();
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "doc"}));
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--sigma-l", c.sigma_l, "Dispatch window below the critical ratio")->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma-u", c.sigma_u, "Dispatch window above the critical ratio")->check(CLI::NonNegativeNumber);
    sub->add_option("--gamma", c.gamma, "Nearly-integral threshold");
    sub->add_option("--eps2-prime", c.eps2_prime, "Case A1 fraction threshold");
    sub->add_option("--rho-eff", c.rho_eff, "Operative good-edge probability threshold");
    sub->add_option("--delta-eff", c.delta_eff, "Operative near-minimum cut slack");
    sub->add_option("--samples", c.samples, "Monte Carlo samples");
    sub->add_option("--threads", c.threads, "Worker threads (0 = hardware)");
  };

  std::string variant = "path";
  auto* solve = app.add_subcommand("solve-lp", "Solve a Held-Karp relaxation by cutting planes");
  add_common(solve, true);
  solve->add_option("--variant", variant)->check(CLI::IsMember({"path", "circuit"}));

  auto* hoog = app.add_subcommand("hoogeveen", "Run Hoogeveen's algorithm and print its certificate");
  add_common(hoog, true);

  auto* alg2 = app.add_subcommand("alg2", "Run the LP-guided three-case algorithm (A1 / A2 / B)");
  add_common(alg2, true);

  auto* oracle = app.add_subcommand("oracle", "Exact optimum by bitmask dynamic programming (n <= 20)");
  add_common(oracle, true);
  oracle->add_option("--variant", variant)->check(CLI::IsMember({"path", "circuit"}));

  std::string family;
  int k_min = 1, k_max = 1, oracle_cap = kOracleCap;
  auto* scan = app.add_subcommand("gap-scan", "Integrality-gap scan over a gap family");
  add_common(scan, false);
  scan->add_option("--family", family)->required()->check(CLI::IsMember({"circuit_fig1a", "path_fig1b"}));
  scan->add_option("--k-min", k_min);
  scan->add_option("--k-max", k_max);
  scan->add_option("--oracle-cap", oracle_cap, "Largest n given to the oracle (at most 20)");

  std::string config_path, manifest_path;
  auto* corpus = app.add_subcommand("corpus", "Run every pipeline over a configured corpus");
  add_common(corpus, false);
  corpus->add_option("--config", config_path, "Corpus configuration (JSON)")->required();
  corpus->add_option("--manifest", manifest_path, "Run manifest output (default <out>.manifest.json)");

  auto* sample = app.add_subcommand("sample-trees", "Sample max-entropy trees on the lifted LP point");
  add_common(sample, true);

  int k = 1, n = 10;
  double p = 0.3;
  auto* gen = app.add_subcommand("generate", "Write a generated instance document");
  add_common(gen, false);
  gen->add_option("--family", family)->check(CLI::IsMember({"circuit_fig1a", "path_fig1b"}));
  gen->add_option("--k", k);
  gen->add_option("--n", n, "Vertex count for a random graphical instance");
  gen->add_option("--edge-probability", p);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return cmd_solve_lp(c, variant);
    if (*hoog) return cmd_hoogeveen(c);
    if (*alg2) return cmd_alg2(c);
    if (*oracle) return cmd_oracle(c, variant);
    if (*scan) return cmd_gap_scan(c, family, k_min, k_max, oracle_cap);
    if (*corpus) return cmd_corpus(c, config_path, manifest_path);
    if (*sample) return cmd_sample_trees(c);
    if (*gen) return cmd_generate(c, family, k, n, p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
