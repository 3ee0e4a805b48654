#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gensum/campaign.hpp"
#include "gensum/classify.hpp"

namespace gensum {

using nlohmann::json;

inline json to_json(const CycleCert& c) { return json(c.vertices); }

inline json to_json(const ConstructionTrace& t) {
  json j;
  j["pattern"] = t.pattern;
  j["params"] = json::object();
  for (const auto& [key, value] : t.params) j["params"][key] = value;
  if (!t.detail.empty()) j["detail"] = t.detail;
  j["cycle"] = to_json(t.cycle);
  return j;
}

inline ConstructionTrace trace_from_json(const json& j) {
  ConstructionTrace t;
  t.pattern = j.at("pattern").get<std::string>();
  if (j.contains("params"))
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      t.params[it.key()] = it.value().get<int>();
  if (j.contains("detail")) t.detail = j["detail"].get<std::string>();
  t.cycle.vertices = j.at("cycle").get<std::vector<int>>();
  return t;
}

// ---------------------------------------------------------------------------
// Instance files: {"summands":[{"order":n,"extra_arcs":[[a,b],...]},...],
//                  "orientation_bits":"<hex>","bit_count":N}
// The Hamiltonian order inside each summand is implicitly 0..n-1.
// ---------------------------------------------------------------------------

inline json instance_to_json(const GenSum& g) {
  json j;
  j["summands"] = json::array();
  for (int i = 0; i < g.summand_count(); ++i) {
    json s;
    s["order"] = g.summand_order(i);
    s["extra_arcs"] = json::array();
    for (auto [a, b] : g.summand(i).extra_arcs()) s["extra_arcs"].push_back({a, b});
    j["summands"].push_back(std::move(s));
  }
  j["orientation_bits"] = g.orientation().to_hex();
  j["bit_count"] = g.orientation().bit_count();
  return j;
}

inline GenSum instance_from_json(const json& j) {
  std::vector<SummandSpec> specs;
  for (const json& s : j.at("summands")) {
    int order = s.at("order").get<int>();
    std::vector<std::pair<int, int>> extra;
    if (s.contains("extra_arcs"))
      for (const json& arc : s["extra_arcs"]) extra.emplace_back(arc.at(0).get<int>(), arc.at(1).get<int>());
    specs.push_back(SummandSpec::cycle_with_extra(order, extra));
  }
  const int bits = j.at("bit_count").get<int>();
  OrientationMap orientation =
      OrientationMap::from_hex(bits, j.at("orientation_bits").get<std::string>());
  return GenSum::build(std::move(specs), std::move(orientation));
}

inline GenSum load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json j;
  in >> j;
  return instance_from_json(j);
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

// ---------------------------------------------------------------------------
// Verification reports: schema gsl-report/1.
// ---------------------------------------------------------------------------

inline json to_json(const Finding& f) {
  json j;
  j["kind"] = f.kind == Finding::Kind::Q1 ? "Q1" : "Q2";
  if (f.kind == Finding::Kind::Q1) j["omission"] = {f.omission.first, f.omission.second};
  else j["missing"] = json(std::vector<int>(f.missing.begin(), f.missing.end()));
  return j;
}

inline json report_to_json(const VerificationReport& r) {
  json j;
  j["schema"] = "gsl-report/1";
  json inst;
  inst["orders"] = r.orders;
  inst["orientation_bits"] = r.orientation_hex;
  inst["bit_count"] = r.bit_count;
  inst["extra_arcs"] = json::array();
  for (const auto& arcs : r.extra_arcs) {
    json a = json::array();
    for (auto [u, v] : arcs) a.push_back({u, v});
    inst["extra_arcs"].push_back(std::move(a));
  }
  j["instance"] = std::move(inst);
  j["order"] = r.order();
  j["strong"] = r.strong;
  j["degenerate_summands"] = r.degenerate_summands;

  j["ladder"] = {{"verdict", to_string(r.ladder.verdict)},
                 {"rung", to_string(r.ladder.rung)},
                 {"guaranteed", std::vector<int>(r.ladder.guaranteed.begin(),
                                                 r.ladder.guaranteed.end())}};
  j["guaranteed"] = std::vector<int>(r.guaranteed.begin(), r.guaranteed.end());
  if (r.orders.size() == 2)
    j["guaranteed_pair"] = j["guaranteed"];
  j["guaranteed_k"] = [&] {
    auto s = guaranteed_lengths_k(r.orders);
    return std::vector<int>(s.begin(), s.end());
  }();

  json oracle;
  oracle["skipped"] = r.oracle_skipped;
  if (!r.oracle_skipped) {
    auto lengths = r.spectrum.lengths();
    oracle["spectrum"] = std::vector<int>(lengths.begin(), lengths.end());
    oracle["missing"] = std::vector<int>(r.missing.begin(), r.missing.end());
    oracle["pancyclic"] = r.pancyclic;
    oracle["vertex_pancyclic"] = r.vertex_pancyclic;
    oracle["omissions"] = json::array();
    for (auto [v, l] : r.omissions) oracle["omissions"].push_back({v, l});
    oracle["hamiltonian"] = r.hamiltonian;
    if (r.hamiltonian) oracle["hamiltonian_cycle"] = to_json(r.hamiltonian_cycle);
    json witnesses = json::object();
    for (const auto& [l, cert] : r.spectrum.witnesses) witnesses[std::to_string(l)] = to_json(cert);
    oracle["witnesses"] = std::move(witnesses);
  }
  j["oracle"] = std::move(oracle);

  json constructive;
  constructive["certified"] = json::object();
  for (const auto& [l, trace] : r.constructive)
    constructive["certified"][std::to_string(l)] = to_json(trace);
  constructive["gamma_missing"] = r.gamma_missing;
  j["constructive"] = std::move(constructive);
  j["knary_case"] = r.knary_case;

  j["violations"] = json::array();
  for (const Violation& v : r.violations) j["violations"].push_back({{"kind", v.kind}, {"detail", v.detail}});
  j["finding"] = r.finding ? to_json(*r.finding) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Campaign reports: schema gsl-campaign/1; checkpoints: gsl-checkpoint/1.
// ---------------------------------------------------------------------------

inline json to_json(const CampaignCounts& c) {
  return json{{"total", c.total},
              {"skipped_rotation", c.skipped_rotation},
              {"strong", c.strong},
              {"hamiltonian", c.hamiltonian},
              {"oracle_pancyclic", c.oracle_pancyclic},
              {"oracle_vertex_pancyclic", c.oracle_vertex_pancyclic},
              {"oracle_skipped", c.oracle_skipped},
              {"verdicts",
               {{"vertex_pancyclic", c.verdict_vertex_pancyclic},
                {"pancyclic", c.verdict_pancyclic},
                {"guaranteed_only", c.verdict_guaranteed_only}}},
              {"rungs",
               {{"no_good_pair", c.rung_no_good_pair},
                {"no_good_cycle", c.rung_no_good_cycle},
                {"singular", c.rung_singular},
                {"gcd_le_2", c.rung_small_gcd},
                {"d_non_singular", c.rung_d_non_singular},
                {"d_star_singular", c.rung_d_star},
                {"none", c.rung_none}}},
              {"violations", c.violations},
              {"q1", c.q1},
              {"q2", c.q2},
              {"knary_case1", c.knary_case1},
              {"knary_case2", c.knary_case2}};
}

inline CampaignCounts counts_from_json(const json& j) {
  CampaignCounts c;
  c.total = j.at("total").get<std::uint64_t>();
  c.skipped_rotation = j.at("skipped_rotation").get<std::uint64_t>();
  c.strong = j.at("strong").get<std::uint64_t>();
  c.hamiltonian = j.at("hamiltonian").get<std::uint64_t>();
  c.oracle_pancyclic = j.at("oracle_pancyclic").get<std::uint64_t>();
  c.oracle_vertex_pancyclic = j.at("oracle_vertex_pancyclic").get<std::uint64_t>();
  c.oracle_skipped = j.at("oracle_skipped").get<std::uint64_t>();
  c.verdict_vertex_pancyclic = j.at("verdicts").at("vertex_pancyclic").get<std::uint64_t>();
  c.verdict_pancyclic = j.at("verdicts").at("pancyclic").get<std::uint64_t>();
  c.verdict_guaranteed_only = j.at("verdicts").at("guaranteed_only").get<std::uint64_t>();
  c.rung_no_good_pair = j.at("rungs").at("no_good_pair").get<std::uint64_t>();
  c.rung_no_good_cycle = j.at("rungs").at("no_good_cycle").get<std::uint64_t>();
  c.rung_singular = j.at("rungs").at("singular").get<std::uint64_t>();
  c.rung_small_gcd = j.at("rungs").at("gcd_le_2").get<std::uint64_t>();
  c.rung_d_non_singular = j.at("rungs").at("d_non_singular").get<std::uint64_t>();
  c.rung_d_star = j.at("rungs").at("d_star_singular").get<std::uint64_t>();
  c.rung_none = j.at("rungs").at("none").get<std::uint64_t>();
  c.violations = j.at("violations").get<std::uint64_t>();
  c.q1 = j.at("q1").get<std::uint64_t>();
  c.q2 = j.at("q2").get<std::uint64_t>();
  c.knary_case1 = j.at("knary_case1").get<std::uint64_t>();
  c.knary_case2 = j.at("knary_case2").get<std::uint64_t>();
  return c;
}

inline json campaign_to_json(const CampaignReport& r) {
  json j;
  j["schema"] = "gsl-campaign/1";
  json cfg;
  cfg["orders"] = r.config.orders;
  cfg["extra_arcs"] = json::array();
  for (const auto& arcs : r.config.extra_arcs) {
    json a = json::array();
    for (auto [u, v] : arcs) a.push_back({u, v});
    cfg["extra_arcs"].push_back(std::move(a));
  }
  cfg["mode"] = r.config.exhaustive ? "exhaustive" : "sample";
  cfg["sample_count"] = r.config.sample_count;
  cfg["seed"] = r.config.seed;
  cfg["offset"] = r.config.offset;
  cfg["limit"] = r.config.limit;
  cfg["workers"] = r.config.workers;
  cfg["oracle_budget"] = r.config.oracle_budget;
  cfg["modulo_rotation"] = r.config.modulo_rotation;
  j["config"] = std::move(cfg);
  j["space_size"] = r.space_size;
  j["counts"] = to_json(r.counts);
  j["findings"] = json::array();
  for (const CampaignFinding& f : r.findings) {
    json e = to_json(f.finding);
    e["index"] = f.index;
    e["orientation_bits"] = f.orientation_hex;
    e["orders"] = r.config.orders;
    j["findings"].push_back(std::move(e));
  }
  j["violation_samples"] = json::array();
  for (const CampaignViolation& v : r.violation_samples)
    j["violation_samples"].push_back({{"index", v.index},
                                      {"orientation_bits", v.orientation_hex},
                                      {"kind", v.violation.kind},
                                      {"detail", v.violation.detail}});
  j["wall_ms"] = r.wall_ms;
  return j;
}

inline json checkpoint_to_json(const CampaignConfig& cfg, std::uint64_t done,
                               const CampaignCounts& counts) {
  json j;
  j["schema"] = "gsl-checkpoint/1";
  j["orders"] = cfg.orders;
  j["mode"] = cfg.exhaustive ? "exhaustive" : "sample";
  j["seed"] = cfg.seed;
  j["offset"] = cfg.offset;
  j["done"] = done;
  j["counts"] = to_json(counts);
  return j;
}

// ---------------------------------------------------------------------------
// DOT and flat arc-list exports.
// ---------------------------------------------------------------------------

/// DOT text with one cluster per summand; designated-cycle arcs solid,
/// exterior arcs dashed, optional highlighted cycle in red.
inline std::string to_dot(const GenSum& g, const CycleCert* highlight = nullptr) {
  VertexMask on_cycle_arc[kMaxOrder] = {};
  if (highlight)
    for (int t = 0; t < highlight->length(); ++t) {
      int u = highlight->vertices[static_cast<std::size_t>(t)];
      int v = highlight->vertices[static_cast<std::size_t>((t + 1) % highlight->length())];
      on_cycle_arc[u] |= vertex_bit(v);
    }
  std::ostringstream out;
  out << "digraph gensum {\n";
  for (int i = 0; i < g.summand_count(); ++i) {
    out << "  subgraph cluster_" << i << " {\n"
        << "    label=\"summand " << i << "\";\n";
    for (int p = 0; p < g.summand_order(i); ++p)
      out << "    v" << g.vertex(i, p) << " [label=\"" << i << ":" << p << "\"];\n";
    out << "  }\n";
  }
  for (auto [u, v] : g.compiled().arcs()) {
    out << "  v" << u << " -> v" << v;
    std::vector<std::string> attrs;
    if (g.summand_of(u) != g.summand_of(v)) attrs.push_back("style=dashed");
    if (on_cycle_arc[u] & vertex_bit(v)) {
      attrs.push_back("color=red");
      attrs.push_back("penwidth=2");
    }
    if (!attrs.empty()) {
      out << " [" << attrs[0];
      for (std::size_t a = 1; a < attrs.size(); ++a) out << ", " << attrs[a];
      out << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

/// Flat text arc list: "n m" header, then one "u v" line per arc.
inline std::string to_arc_list(const Digraph& d) {
  std::ostringstream out;
  out << d.order() << " " << d.arc_count() << "\n";
  for (auto [u, v] : d.arcs()) out << u << " " << v << "\n";
  return out.str();
}

}  // namespace gensum
