// Command-line front end: build instances, classify and certify them, export
// DOT drawings, and run verification / open-problem search campaigns.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "gensum/io.hpp"

namespace {

using namespace gensum;

std::vector<int> parse_orders(const std::string& csv) {
  std::vector<int> orders;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    orders.push_back(std::stoi(item));
  }
  if (orders.size() < 2) throw CLI::ValidationError("--cycles", "need at least two summand orders");
  return orders;
}

std::vector<SummandSpec> specs_from_summands_file(const std::string& path) {
  json j = load_json_file(path);
  std::vector<SummandSpec> specs;
  for (const json& s : j.at("summands")) {
    std::vector<std::pair<int, int>> extra;
    if (s.contains("extra_arcs"))
      for (const json& arc : s["extra_arcs"]) extra.emplace_back(arc.at(0).get<int>(), arc.at(1).get<int>());
    specs.push_back(SummandSpec::cycle_with_extra(s.at("order").get<int>(), extra));
  }
  return specs;
}

std::vector<int> orders_of(const std::vector<SummandSpec>& specs) {
  std::vector<int> o;
  for (const auto& s : specs) o.push_back(s.order());
  return o;
}

void print_kv(const std::string& format, const std::string& key, const std::string& value) {
  if (format == "csv")
    std::cout << key << "," << value << "\n";
  else
    std::cout << key << ": " << value << "\n";
}

std::string join_ints(const std::set<int>& s) {
  std::string out;
  for (int v : s) {
    if (!out.empty()) out += ",";
    out += std::to_string(v);
  }
  return out.empty() ? "-" : out;
}

std::string instance_key(const std::vector<int>& orders, const std::string& hex) {
  std::string out = "orders=";
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(orders[i]);
  }
  out += " bits=0x" + hex;
  return out;
}

int run_build(const std::string& cycles, const std::string& summands_file,
              const std::string& bits_hex, bool seeded, std::uint64_t seed,
              const std::string& out_path, const std::string& arcs_path,
              const std::string& format) {
  std::vector<SummandSpec> specs;
  if (!summands_file.empty())
    specs = specs_from_summands_file(summands_file);
  else
    for (int n : parse_orders(cycles)) specs.push_back(SummandSpec::cycle(n));
  const int bits = orientation_bit_count(orders_of(specs));
  OrientationMap orientation;
  if (!bits_hex.empty())
    orientation = OrientationMap::from_hex(bits, bits_hex);
  else if (seeded)
    orientation = sample_orientation(orders_of(specs), seed);
  else
    throw CLI::ValidationError("build", "provide --bits or --seed");
  GenSum g = GenSum::build(std::move(specs), std::move(orientation));
  write_json_file(out_path, instance_to_json(g));
  if (!arcs_path.empty()) {
    std::ofstream f(arcs_path);
    if (!f) throw std::runtime_error("cannot write file: " + arcs_path);
    f << to_arc_list(g.compiled());
  }
  print_kv(format, "order", std::to_string(g.order()));
  print_kv(format, "strong", is_strong(g.compiled()) ? "true" : "false");
  print_kv(format, "exterior_arcs", std::to_string(g.exterior_arc_count()));
  print_kv(format, "orientation_bits", "0x" + g.orientation().to_hex());
  print_kv(format, "file", out_path);
  return 0;
}

int run_classify(const std::string& instance_path, const std::string& report_path, int budget,
                 const std::string& format) {
  GenSum g = load_instance(instance_path);
  if (!is_strong(g.compiled())) {
    std::cerr << "not strong - theorems inapplicable\n";
    return 1;
  }
  VerificationReport r = verify_instance(g, budget);
  if (!report_path.empty()) write_json_file(report_path, report_to_json(r));
  if (format == "json") {
    std::cout << report_to_json(r).dump(2) << "\n";
  } else {
    print_kv(format, "instance", instance_key(r.orders, r.orientation_hex));
    print_kv(format, "verdict", to_string(r.ladder.verdict));
    print_kv(format, "rung", to_string(r.ladder.rung));
    print_kv(format, "guaranteed", join_ints(r.guaranteed));
    if (r.oracle_skipped) {
      print_kv(format, "oracle", "skipped (budget)");
    } else {
      print_kv(format, "spectrum", join_ints(r.spectrum.lengths()));
      print_kv(format, "pancyclic", r.pancyclic ? "true" : "false");
      print_kv(format, "vertex_pancyclic", r.vertex_pancyclic ? "true" : "false");
    }
    print_kv(format, "certified_lengths", std::to_string(r.constructive.size()));
    print_kv(format, "violations", std::to_string(r.violations.size()));
    for (const Violation& v : r.violations)
      print_kv(format, "violation", v.kind + " " + v.detail);
    if (r.finding)
      print_kv(format, "finding", r.finding->kind == Finding::Kind::Q1 ? "Q1" : "Q2");
  }
  return r.violations.empty() ? 0 : 2;
}

int run_search(CampaignConfig cfg, const std::string& report_path,
               const std::string& checkpoint_path, const std::string& resume_path,
               const std::string& format) {
  CampaignCounts resumed;
  if (!resume_path.empty()) {
    json ck = load_json_file(resume_path);
    if (ck.at("schema") != "gsl-checkpoint/1") throw std::runtime_error("not a checkpoint file");
    cfg.offset = ck.at("offset").get<std::uint64_t>() + ck.at("done").get<std::uint64_t>();
    resumed = counts_from_json(ck.at("counts"));
  }
  if (!checkpoint_path.empty()) {
    CampaignConfig* cfg_ptr = &cfg;
    cfg.checkpoint = [checkpoint_path, cfg_ptr](std::uint64_t done, const CampaignCounts& counts) {
      write_json_file(checkpoint_path, checkpoint_to_json(*cfg_ptr, done, counts));
    };
  }
  CampaignReport report;
  try {
    report = run_campaign(cfg);
  } catch (const enumeration_too_large_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  report.counts += resumed;
  if (!report_path.empty()) write_json_file(report_path, campaign_to_json(report));
  if (format == "json") {
    std::cout << campaign_to_json(report).dump(2) << "\n";
  } else {
    print_kv(format, "space", std::to_string(report.space_size));
    print_kv(format, "total", std::to_string(report.counts.total));
    if (cfg.modulo_rotation)
      print_kv(format, "skipped_rotation", std::to_string(report.counts.skipped_rotation));
    print_kv(format, "strong", std::to_string(report.counts.strong));
    print_kv(format, "hamiltonian", std::to_string(report.counts.hamiltonian));
    print_kv(format, "oracle_pancyclic", std::to_string(report.counts.oracle_pancyclic));
    print_kv(format, "oracle_vertex_pancyclic",
             std::to_string(report.counts.oracle_vertex_pancyclic));
    print_kv(format, "verdict_vertex_pancyclic",
             std::to_string(report.counts.verdict_vertex_pancyclic));
    print_kv(format, "verdict_pancyclic", std::to_string(report.counts.verdict_pancyclic));
    print_kv(format, "verdict_guaranteed_only",
             std::to_string(report.counts.verdict_guaranteed_only));
    print_kv(format, "violations", std::to_string(report.counts.violations));
    print_kv(format, "q1", std::to_string(report.counts.q1));
    print_kv(format, "q2", std::to_string(report.counts.q2));
    print_kv(format, "wall_ms", std::to_string(report.wall_ms));
    for (const CampaignFinding& f : report.findings) {
      std::string line = f.finding.kind == Finding::Kind::Q1 ? "Q1 " : "Q2 ";
      line += instance_key(cfg.orders, f.orientation_hex);
      if (f.finding.kind == Finding::Kind::Q1)
        line += " omission=(" + std::to_string(f.finding.omission.first) + "," +
                std::to_string(f.finding.omission.second) + ")";
      else {
        line += " missing=";
        line += join_ints(f.finding.missing);
      }
      print_kv(format, "finding", line);
    }
    for (const CampaignViolation& v : report.violation_samples)
      print_kv(format, "violation",
               instance_key(cfg.orders, v.orientation_hex) + " " + v.violation.kind + " " +
                   v.violation.detail);
  }
  return report.counts.violations == 0 ? 0 : 2;
}

int run_certify(const std::string& instance_path, int length, const std::string& out_path,
                const std::string& format) {
  GenSum g = load_instance(instance_path);
  if (!is_strong(g.compiled())) {
    std::cerr << "not strong - theorems inapplicable\n";
    return 1;
  }
  if (length < 2 || length > g.order()) {
    std::cerr << "no cycle of this length exists\n";
    return 3;
  }
  auto traces = certify_constructive(g);
  json out;
  std::string source;
  if (auto it = traces.find(length); it != traces.end()) {
    source = "constructive";
    out = to_json(it->second);
  } else if (auto witness = find_cycle_of_length(g.compiled(), length)) {
    source = "oracle";
    out["pattern"] = "oracle";
    out["params"] = json::object();
    out["cycle"] = to_json(*witness);
  } else {
    std::cerr << "no cycle of this length exists\n";
    return 3;
  }
  out["source"] = source;
  out["length"] = length;
  if (!out_path.empty()) write_json_file(out_path, out);
  print_kv(format, "length", std::to_string(length));
  print_kv(format, "source", source);
  print_kv(format, "pattern", out["pattern"].get<std::string>());
  print_kv(format, "cycle", to_json(CycleCert(out["cycle"].get<std::vector<int>>())).dump());
  return 0;
}

int run_export_dot(const std::string& instance_path, const std::string& highlight_path,
                   const std::string& out_path) {
  GenSum g = load_instance(instance_path);
  std::optional<CycleCert> highlight;
  if (!highlight_path.empty()) {
    json t = load_json_file(highlight_path);
    highlight = CycleCert(t.at("cycle").get<std::vector<int>>());
    if (!validate_cycle(g.compiled(), *highlight))
      throw std::runtime_error("highlight trace cycle does not validate on this instance");
  }
  std::string dot = to_dot(g, highlight ? &*highlight : nullptr);
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write file: " + out_path);
    f << dot;
  }
  return 0;
}

int run_spectrum(const std::string& instance_path, int min_len, int max_len, bool witnesses,
                 const std::string& format) {
  GenSum g = load_instance(instance_path);
  if (max_len <= 0) max_len = g.order();
  Spectrum s = cycle_spectrum(g.compiled(), min_len, max_len);
  if (format == "json") {
    json j;
    auto lengths = s.lengths();
    j["lengths"] = std::vector<int>(lengths.begin(), lengths.end());
    auto gaps = s.missing();
    j["missing"] = std::vector<int>(gaps.begin(), gaps.end());
    if (witnesses) {
      j["witnesses"] = json::object();
      for (const auto& [l, cert] : s.witnesses) j["witnesses"][std::to_string(l)] = to_json(cert);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    print_kv(format, "lengths", join_ints(s.lengths()));
    print_kv(format, "missing", join_ints(s.missing()));
    if (witnesses)
      for (const auto& [l, cert] : s.witnesses)
        print_kv(format, "witness_" + std::to_string(l), to_json(cert).dump());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized sums of Hamiltonian digraphs: build, classify, certify, search"};
  app.require_subcommand(1);

  int workers = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int budget = 14;
  std::string format = "text";
  app.add_option("--workers", workers, "worker thread count")->capture_default_str();
  app.add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) { seed_given = true; });
  app.add_option("--budget", budget, "oracle order budget")->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  auto* build = app.add_subcommand("build", "build an instance file");
  std::string cycles, summands_file, bits_hex, out_path = "instance.json", arcs_path;
  build->add_option("--cycles", cycles, "summand cycle orders, e.g. 4,3");
  build->add_option("--summands", summands_file, "summand spec JSON file");
  build->add_option("--bits", bits_hex, "orientation bits as hex");
  build->add_option("-o,--out", out_path, "output instance file")->capture_default_str();
  build->add_option("--arcs", arcs_path, "also write a flat arc-list text file");

  auto* classify = app.add_subcommand("classify", "classify and verify one instance");
  std::string classify_instance, classify_report;
  classify->add_option("instance", classify_instance, "instance JSON file")->required();
  classify->add_option("--report", classify_report, "write gsl-report/1 JSON here");

  auto* search = app.add_subcommand("search", "run a verification / search campaign");
  std::string search_cycles, search_report, checkpoint_path, resume_path;
  bool exhaustive = false, modulo_rotation = false;
  std::uint64_t sample_count = 0, offset = 0, limit = 0;
  search->add_option("--cycles", search_cycles, "summand cycle orders")->required();
  search->add_flag("--exhaustive", exhaustive, "enumerate the whole orientation space");
  search->add_option("--sample", sample_count, "number of seeded samples");
  search->add_option("--offset", offset, "start offset into the space");
  search->add_option("--limit", limit, "instance count limit");
  search->add_flag("--modulo-rotation", modulo_rotation,
                   "skip orientations that are not rotation-canonical");
  search->add_option("--report", search_report, "write gsl-campaign/1 JSON here");
  search->add_option("--checkpoint", checkpoint_path, "progress sidecar file");
  search->add_option("--resume", resume_path, "resume from a checkpoint file");

  auto* certify = app.add_subcommand("certify", "emit a cycle certificate for one length");
  std::string certify_instance, certify_out;
  int certify_length = 0;
  certify->add_option("instance", certify_instance, "instance JSON file")->required();
  certify->add_option("--length", certify_length, "cycle length to certify")->required();
  certify->add_option("-o,--out", certify_out, "trace JSON output file");

  auto* export_dot = app.add_subcommand("export-dot", "write a DOT drawing");
  std::string dot_instance, dot_highlight, dot_out;
  export_dot->add_option("instance", dot_instance, "instance JSON file")->required();
  export_dot->add_option("--highlight", dot_highlight, "trace JSON whose cycle gets highlighted");
  export_dot->add_option("-o,--out", dot_out, "output DOT file (stdout if omitted)");

  auto* spectrum = app.add_subcommand("spectrum", "print the exact cycle-length spectrum");
  std::string spectrum_instance;
  int spec_min = 2, spec_max = 0;
  bool spec_witnesses = false;
  spectrum->add_option("instance", spectrum_instance, "instance JSON file")->required();
  spectrum->add_option("--min", spec_min, "minimum length")->capture_default_str();
  spectrum->add_option("--max", spec_max, "maximum length (default: order)");
  spectrum->add_flag("--witnesses", spec_witnesses, "include witness cycles");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed())
      return run_build(cycles, summands_file, bits_hex, seed_given, seed, out_path, arcs_path,
                       format);
    if (classify->parsed()) return run_classify(classify_instance, classify_report, budget, format);
    if (search->parsed()) {
      gensum::CampaignConfig cfg;
      cfg.orders = parse_orders(search_cycles);
      cfg.exhaustive = exhaustive || sample_count == 0;
      cfg.sample_count = sample_count;
      cfg.seed = seed;
      cfg.offset = offset;
      cfg.limit = limit;
      cfg.workers = workers;
      cfg.oracle_budget = budget;
      cfg.modulo_rotation = modulo_rotation;
      if (!cfg.exhaustive && !seed_given) {
        std::cerr << "sample mode requires --seed\n";
        return 1;
      }
      return run_search(std::move(cfg), search_report, checkpoint_path, resume_path, format);
    }
    if (certify->parsed())
      return run_certify(certify_instance, certify_length, certify_out, format);
    if (export_dot->parsed()) return run_export_dot(dot_instance, dot_highlight, dot_out);
    if (spectrum->parsed())
      return run_spectrum(spectrum_instance, spec_min, spec_max, spec_witnesses, format);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
