#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tsppath/gpath.hpp"
#include "tsppath/harness.hpp"
#include "tsppath/hoogeveen.hpp"
#include "tsppath/instance.hpp"
#include "tsppath/lpcore.hpp"
#include "tsppath/maxent.hpp"

namespace tsppath::io {

using nlohmann::json;

inline constexpr int kInstanceFormatVersion = 1;

// Integral costs are written as JSON integers so they round-trip exactly.
inline json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15)
    return static_cast<std::int64_t>(v);
  return v;
}

inline json edge_list_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

inline json instance_to_json(const Instance& inst) {
  json rows = json::array();
  for (Vertex i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (Vertex j = 0; j < i; ++j) row.push_back(number(inst.cost(i, j)));
    rows.push_back(std::move(row));
  }
  json doc = {{"version", kInstanceFormatVersion},
              {"n", inst.n()},
              {"s", inst.s()},
              {"t", inst.t()},
              {"cost", std::move(rows)}};
  if (inst.origin()) doc["origin_edges"] = edge_list_json(*inst.origin());
  return doc;
}

// Parses and validates an instance document; non-metric costs are rejected.
inline Instance instance_from_json(const json& doc) {
  if (doc.value("version", 0) != kInstanceFormatVersion) throw Error("unsupported instance version");
  const int n = doc.at("n").get<int>();
  if (n < 2) throw Error("instance needs at least two vertices");
  const json& rows = doc.at("cost");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw Error("cost must list n lower-triangular rows");
  std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != i)
      throw Error("cost row " + std::to_string(i) + " must have " + std::to_string(i) + " entries");
    for (int j = 0; j < i; ++j) {
      const double c = row[j].get<double>();
      cost[static_cast<std::size_t>(i) * n + j] = c;
      cost[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
  std::optional<std::vector<Edge>> origin;
  if (doc.contains("origin_edges")) {
    origin.emplace();
    for (const json& e : doc.at("origin_edges")) origin->emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  Instance inst(n, std::move(cost), doc.at("s").get<int>(), doc.at("t").get<int>(), origin);
  const auto bad = validate_metric(inst);
  if (!bad.empty()) {
    const auto& b = bad.front();
    throw Error("costs violate the triangle inequality at (" + std::to_string(b.u) + ", " +
                std::to_string(b.v) + ", " + std::to_string(b.w) + ")");
  }
  if (origin) {
    const Instance rederived = metric_from_graph(Graph{n, *origin}, inst.s(), inst.t());
    if (rederived.matrix() != inst.matrix()) throw Error("costs do not match the origin graph's distances");
  }
  return inst;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) {
  return instance_from_json(json::parse(read_file(path)));
}

inline void save_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

inline json mask_json(VertexMask m, int n) { return mask_members(m, n); }

inline json cut_json(const CutConstraint& c, int n) {
  return {{"subset", mask_json(c.subset, n)}, {"required", c.required}, {"lhs", c.lhs}};
}

inline json fractional_to_json(const FractionalSolution& sol) {
  json edges = json::array();
  for (Vertex u = 0; u < sol.n; ++u)
    for (Vertex v = u + 1; v < sol.n; ++v) {
      const double xe = sol.at(u, v);
      if (xe > 1e-12) edges.push_back({{"u", u}, {"v", v}, {"x", xe}});
    }
  json cuts = json::array();
  for (const CutConstraint& c : sol.tight_cuts) cuts.push_back(cut_json(c, sol.n));
  return {{"variant", to_string(sol.variant)}, {"n", sol.n},       {"value", sol.value},
          {"rounds", sol.rounds},              {"edges", edges},   {"tight_cuts", cuts}};
}

inline json certificate_to_json(const HoogeveenCertificate& c) {
  return {{"lp_value", c.lp_value},   {"tree_cost", c.tree_cost}, {"matching_cost", c.matching_cost},
          {"st_cost", c.st_cost},     {"bound_h2", c.bound_h2},   {"bound_h3", c.bound_h3},
          {"alg_cost", c.alg_cost},   {"ratio", c.ratio},         {"alpha", c.alpha},
          {"parity_set_size", c.parity_set_size}, {"violations", c.violations()}};
}

inline json params_to_json(const Alg2Params& p) {
  return {{"sigma_l", p.sigma_l},         {"sigma_u", p.sigma_u}, {"gamma", p.gamma},
          {"eps2_prime", p.eps2_prime},   {"nu", p.nu},           {"k", p.k},
          {"seed", p.seed},
          {"theory", {{"sigma_l", constants::kSigmaL}, {"sigma_u", constants::kSigmaU},
                     {"gamma", constants::kGamma}, {"eps2_prime", constants::kEps2Prime},
                     {"nu", constants::kNu}, {"k", constants::kExponent}}}};
}

inline json trace_to_json(const Alg2Trace& t) {
  json doc = {{"case", to_string(t.case_taken)},
              {"alpha", t.alpha},
              {"lp_value", t.lp_value},
              {"tree_cost", t.tree_cost},
              {"tjoin_cost", t.tjoin_cost},
              {"final_cost", t.final_cost},
              {"ratio", t.ratio},
              {"nearly_integral_count", t.nearly_integral_count},
              {"odd_vertices_in_l", t.odd_vertices_in_l},
              {"graphical", t.graphical},
              {"sigma_l", t.sigma_l},
              {"sigma_u", t.sigma_u},
              {"seed", t.seed}};
  doc["st_toggled"] = t.st_removed ? json(*t.st_removed ? "removed" : "added") : json(nullptr);
  return doc;
}

inline json catalog_to_json(const CutCatalog& c) {
  json cuts = json::array();
  for (VertexMask m : c.cuts) cuts.push_back(mask_json(m, c.n));
  return {{"n", c.n}, {"min_cut", c.min_cut}, {"delta", c.delta}, {"cuts", cuts}};
}

inline json good_edges_to_json(const GoodEdgeReport& r) {
  json edges = json::array();
  for (const GoodEdgeStat& st : r.edges)
    edges.push_back({{"u", st.edge.u},
                     {"v", st.edge.v},
                     {"x", st.x},
                     {"even_probability", st.even_probability},
                     {"sample_count", st.sample_count},
                     {"good", st.good}});
  return {{"edges", edges},
          {"mass_of_good", r.mass_of_good},
          {"rho_eff", r.rho_eff},
          {"delta_eff", r.delta_eff},
          {"rho_theory", r.rho_theory},
          {"delta_theory", r.delta_theory},
          {"samples", r.samples},
          {"seed", r.seed},
          {"min_cut", r.min_cut},
          {"catalog_size", r.catalog_size}};
}

inline json row_to_json(const ReportRow& r) {
  json doc = {{"id", r.meta.id},
              {"family", r.meta.family},
              {"k", r.meta.k},
              {"seed", r.meta.seed},
              {"n", r.n},
              {"s", r.s},
              {"t", r.t},
              {"lp_path", r.lp_path},
              {"lp_circuit", r.lp_circuit},
              {"opt_path", r.opt_path ? json(*r.opt_path) : json(nullptr)},
              {"opt_circuit", r.opt_circuit ? json(*r.opt_circuit) : json(nullptr)},
              {"hoogeveen", certificate_to_json(r.hoogeveen)},
              {"alg2", r.alg2 ? trace_to_json(*r.alg2) : json(nullptr)},
              {"rho_eff", r.rho_eff},
              {"delta_eff", r.delta_eff},
              {"violations", r.violations},
              {"error", r.error}};
  return doc;
}

inline Alg2Params params_from_json(const json& doc, Alg2Params p = {}) {
  p.sigma_l = doc.value("sigma_l", p.sigma_l);
  p.sigma_u = doc.value("sigma_u", p.sigma_u);
  p.gamma = doc.value("gamma", p.gamma);
  p.eps2_prime = doc.value("eps2_prime", p.eps2_prime);
  p.nu = doc.value("nu", p.nu);
  p.k = doc.value("k", p.k);
  p.seed = doc.value("seed", p.seed);
  return p;
}

// Corpus configuration document:
// {"random": [{"count", "n_min", "n_max", "edge_probability", "seed"}],
//  "families": [{"family", "k_min", "k_max"}], "instances": [{"id", "file"}],
//  "params": {...}, "oracle_cap", "rho_eff", "delta_eff", "threads"}
inline CorpusConfig corpus_config_from_json(const json& doc) {
  CorpusConfig cfg;
  for (const json& r : doc.value("random", json::array())) {
    RandomGraphicalSpec spec;
    spec.count = r.value("count", spec.count);
    spec.n_min = r.value("n_min", spec.n_min);
    spec.n_max = r.value("n_max", spec.n_max);
    spec.edge_probability = r.value("edge_probability", spec.edge_probability);
    spec.seed = r.value("seed", spec.seed);
    cfg.random.push_back(spec);
  }
  for (const json& f : doc.value("families", json::array()))
    cfg.families.push_back({parse_gap_family(f.at("family").get<std::string>()), f.value("k_min", 1),
                            f.value("k_max", 1)});
  for (const json& i : doc.value("instances", json::array()))
    cfg.instances.emplace_back(i.at("id").get<std::string>(), load_instance(i.at("file").get<std::string>()));
  if (doc.contains("params")) cfg.eval.alg2 = params_from_json(doc.at("params"));
  cfg.eval.oracle_cap = std::min(doc.value("oracle_cap", kOracleCap), kOracleCap);
  cfg.eval.rho_eff = doc.value("rho_eff", cfg.eval.rho_eff);
  cfg.eval.delta_eff = doc.value("delta_eff", cfg.eval.delta_eff);
  cfg.threads = doc.value("threads", 0u);
  return cfg;
}

// Everything needed to reproduce a corpus run.
inline json manifest(const json& config_echo, const CorpusReport& rep, const EvalOptions& eval) {
  json seeds = json::array();
  for (const ReportRow& r : rep.rows) seeds.push_back({{"id", r.meta.id}, {"seed", r.meta.seed}});
  json violations = json::array();
  for (const CorpusViolation& v : rep.violations) violations.push_back({{"id", v.id}, {"message", v.message}});
  return {{"config", config_echo},
          {"params", params_to_json(eval.alg2)},
          {"rho_eff", eval.rho_eff},
          {"delta_eff", eval.delta_eff},
          {"constants", {{"eps1", constants::kEps1}, {"eps2", constants::kEps2}, {"delta", constants::kDelta},
                         {"rho", constants::kRho}, {"c_a1", constants::kCA1}, {"c_a2", constants::kCA2},
                         {"epsilon", constants::kEpsilon}}},
          {"oracle_cap", eval.oracle_cap},
          {"rows", rep.rows.size()},
          {"errors", rep.errors},
          {"seeds", seeds},
          {"violations", violations},
          {"columns", kReportColumns}};
}

}  // namespace tsppath::io
