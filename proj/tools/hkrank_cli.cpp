#include "hkrank/certificates.hpp"
#include "hkrank/cg.hpp"
#include "hkrank/graph.hpp"
#include "hkrank/polytopes.hpp"
#include "hkrank/rankbound.hpp"
#include "hkrank/repro.hpp"
#include "hkrank/shadow.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

using namespace hkrank;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("--out: cannot write " + path);
  out << text;
}

void emit_json(const std::string& out_path, const json& j) {
  if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
}

Rational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a rational number: " + text);
  }
}

// ---- graph ----------------------------------------------------------------

struct GraphConfig {
  std::string family = "hk";
  int k = 3;
  int l = 2;
  std::vector<int> distances{1};
  int n = 5;
  std::string destroy_label;
  std::string out;
};

Graph build_family(const GraphConfig& c) {
  if (c.family == "hk") return build_hk(c.k);
  if (c.family == "clebsch") return build_lk(build_cycle(4), 4);
  if (c.family == "petersen") return build_petersen();
  if (c.family == "qls") return build_qls(c.l, std::set<int>(c.distances.begin(), c.distances.end()));
  if (c.family == "cycle") return build_cycle(c.n);
  if (c.family == "path") return build_path(c.n);
  if (c.family == "complete") return build_complete(c.n);
  throw UsageError("--family: unknown family " + c.family);
}

int run_graph(const GraphConfig& c) {
  Graph g = build_family(c);
  if (!c.destroy_label.empty()) {
    if (!g.find(c.destroy_label)) throw UsageError("--destroy: no vertex labelled " + c.destroy_label);
    g = destroy(g, c.destroy_label);
  }
  json j = {{"graph", to_json(g)},
            {"order", g.order()},
            {"edges", g.size()},
            {"bipartite", is_bipartite(g)},
            {"connected", is_connected(g)},
            {"degrees", degree_sequence(g)}};
  std::cout << c.family << ": " << g.order() << " vertices, " << g.size() << " edges";
  if (g.order() <= kEnumerationGuard) {
    const auto a = alpha(g);
    j["alpha"] = a;
    std::cout << ", alpha " << a;
  }
  std::cout << (is_bipartite(g) ? ", bipartite" : "") << "\n";
  emit_json(c.out, j);
  return kOk;
}

// ---- stab -----------------------------------------------------------------

int run_stab(int k, const std::string& out) {
  const Graph g = build_hk(k);
  const auto sets = enumerate_stable_sets(g).sets;
  const auto maximal = maximal_stable_sets(g);
  json j = {{"k", k}, {"alpha", alpha(g)}, {"stable_sets", sets.size()}, {"maximal_stable_sets", maximal.size()}};
  bool ok = true;
  if (k <= 8) {
    const auto cls = classify_maximal_stable_sets(k);
    j["classification"] = {{"class_one", cls.class_one.size()},
                           {"class_two", cls.class_two.size()},
                           {"unclassified", cls.unclassified.size()}};
    ok = ok && cls.ok();
  }
  if (k >= 2) {
    const auto b = b_inequality(k, 1, 2);
    const auto rank = tight_affine_rank(g, b);
    const bool valid = is_valid(g, b);
    j["b_inequality"] = {{"inequality", to_json(g, b)}, {"valid", valid}, {"tight_affine_rank", rank},
                         {"facet", valid && rank == g.order()}};
    ok = ok && valid && rank == g.order();
  }
  if (k >= 3) {
    const auto s = symmetric_inequality(k);
    j["symmetric_inequality"] = {{"inequality", to_json(g, s)}, {"valid", is_valid(g, s)}};
  }
  std::cout << "H_" << k << ": alpha " << j["alpha"] << ", " << sets.size() << " stable sets, " << maximal.size()
            << " maximal\n";
  if (j.contains("b_inequality"))
    std::cout << "B(1,2) facet: " << (j["b_inequality"]["facet"].get<bool>() ? "yes" : "no") << "\n";
  emit_json(out, j);
  return ok ? kOk : kVerificationFailure;
}

// ---- shadow ---------------------------------------------------------------

int run_shadow(int k, const std::string& format, int samples, const std::string& out) {
  const ShadowFormat fmt = format == "svg" ? ShadowFormat::svg : ShadowFormat::csv;
  std::ostringstream body;
  emit_shadow(k, fmt, body, samples);
  if (out.empty()) {
    std::cout << body.str();
    return kOk;
  }
  write_file(out, body.str());
  json pts = json::array();
  for (const auto& s : shadow_samples(k, samples)) pts.push_back({{"x", s.x}, {"y", s.y}, {"curve", s.curve}});
  json poly = json::array();
  for (const auto& v : phi_stab(k)) poly.push_back({to_string(v.a), to_string(v.b)});
  emit_json(out + ".json", {{"k", k}, {"format", format}, {"samples", pts}, {"phi_stab", poly}});
  std::cout << "wrote " << out << " and " << out << ".json\n";
  return kOk;
}

// ---- certify --------------------------------------------------------------

struct CertifyConfig {
  std::string file;
  int k = 0;
  int p = 0;
  std::string a, b, c, d;
  bool exhaustive = false;
  std::string save;
  std::string out;
};

int run_certify(const CertifyConfig& cfg) {
  VerificationResult res;
  MembershipCertificate cert;
  if (!cfg.file.empty()) {
    std::ifstream in(cfg.file);
    if (!in) throw UsageError("--file: cannot read " + cfg.file);
    json j;
    try {
      j = json::parse(in);
      cert = certificate_from_json(j);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--file: malformed certificate: ") + e.what());
    }
    res = replay(cert);
  } else {
    if (cfg.k == 0 || cfg.p == 0 || cfg.a.empty() || cfg.b.empty())
      throw UsageError("--k, --p, --a and --b are required without --file");
    const Rational a = rational_flag("--a", cfg.a);
    const Rational b = rational_flag("--b", cfg.b);
    if (cfg.p == 1) {
      if (cfg.k < 4) throw UsageError("--k: depth 1 needs k >= 4");
      const auto rep = first_level_membership(cfg.k, a, b, cfg.exhaustive);
      res.ok = rep.ok();
      res.failures = rep.failures();
      if (res.ok) res.certificate = MembershipCertificate{rep.params, 1, {}};
    } else {
      if (cfg.c.empty() || cfg.d.empty()) throw UsageError("--c and --d are required for p >= 2");
      const CertificateParams params{cfg.k, a, b, rational_flag("--c", cfg.c), rational_flag("--d", cfg.d)};
      try {
        res = verify_recursive(cfg.p, params, closed_form_resolver(cfg.exhaustive));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--p/--k/--a/--b/--c: ") + e.what());
      }
    }
  }
  json j = {{"ok", res.ok}, {"failures", res.failures}};
  if (res.certificate) {
    j["certificate"] = to_json(*res.certificate);
    const auto& pr = res.certificate->params;
    j["violates_symmetric_facet"] = violates_symmetric_facet(pr);
    j["symmetric_facet_value"] = to_string(symmetric_facet_value(pr));
    if (res.ok && violates_symmetric_facet(pr)) j["rank_lower_bound"] = res.certificate->p + 1;
  }
  std::cout << (res.ok ? "certificate verified" : "certificate rejected") << "\n";
  for (const auto& f : res.failures) std::cout << "  " << f << "\n";
  if (j.contains("rank_lower_bound"))
    std::cout << "r+(H_" << res.certificate->params.k << ") >= " << j["rank_lower_bound"] << "\n";
  if (!cfg.save.empty() && res.certificate) write_file(cfg.save, to_json(*res.certificate).dump(2) + "\n");
  emit_json(cfg.out, j);
  return res.ok ? kOk : kVerificationFailure;
}

// ---- rank -----------------------------------------------------------------

struct RankConfig {
  int k = 0;
  std::string sweep;
  std::string eps = "1/1000000";
  std::string checkpoint;
  unsigned threads = 0;
  std::string out;
};

json rank_entry(int k, const Rational& eps, const ThresholdTable* table) {
  json reports = json::array();
  int best = 0;
  bool verified = k < 5;
  for (const auto& r : rank_reports(k, eps, table)) {
    reports.push_back(to_json(r));
    if (r.method == RankMethod::slope_sequence) {
      best = std::max(best, r.bound);
      verified = true;
    }
  }
  return {{"k", k}, {"verified_lower_bound", best}, {"verified", verified}, {"reports", reports}};
}

int run_rank(const RankConfig& cfg) {
  const Rational eps = rational_flag("--eps", cfg.eps);
  if (eps <= 0) throw UsageError("--eps: must be positive");
  if (cfg.sweep.empty()) {
    if (cfg.k < 3) throw UsageError("--k: need k >= 3 (or --sweep)");
    const json j = rank_entry(cfg.k, eps, nullptr);
    std::cout << "k=" << cfg.k << ": verified lower bound " << j["verified_lower_bound"] << "\n";
    for (const auto& r : j["reports"]) std::cout << "  " << r["method"].get<std::string>() << ": " << r["bound"] << "\n";
    emit_json(cfg.out, j);
    return j["verified"].get<bool>() ? kOk : kVerificationFailure;
  }
  int lo = 0, hi = 0;
  {
    const auto colon = cfg.sweep.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("");
      lo = std::stoi(cfg.sweep.substr(0, colon));
      hi = std::stoi(cfg.sweep.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--sweep: expected FIRST:LAST, got " + cfg.sweep);
    }
    if (lo < 3 || hi < lo) throw UsageError("--sweep: need 3 <= FIRST <= LAST");
  }
  std::map<int, json> done;
  if (!cfg.checkpoint.empty() && std::filesystem::exists(cfg.checkpoint)) {
    std::ifstream in(cfg.checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        json e = json::parse(line);
        done[e.at("k").get<int>()] = e;
      } catch (const std::exception&) {
        continue;  // partial line from an interrupted run
      }
    }
  }
  std::ofstream ckpt;
  if (!cfg.checkpoint.empty()) {
    bool needs_newline = false;
    if (std::ifstream prev(cfg.checkpoint, std::ios::ate); prev && prev.tellg() > 0) {
      prev.seekg(-1, std::ios::end);
      needs_newline = prev.get() != '\n';
    }
    ckpt.open(cfg.checkpoint, std::ios::app);
    if (!ckpt) throw UsageError("--checkpoint: cannot write " + cfg.checkpoint);
    if (needs_newline) ckpt << "\n";
  }
  const ThresholdTable table(hi);
  std::mutex writer;
  parallel_for(lo, hi, cfg.threads, [&](int k) {
    {
      std::lock_guard lock(writer);
      if (done.count(k)) return;
    }
    json e = rank_entry(k, eps, &table);
    std::lock_guard lock(writer);
    if (ckpt.is_open()) ckpt << e.dump() << "\n" << std::flush;
    done[k] = std::move(e);
  });
  json all = json::array();
  bool ok = true;
  for (int k = lo; k <= hi; ++k) {
    const auto& e = done.at(k);
    ok = ok && e["verified"].get<bool>();
    std::cout << "k=" << k << " " << e["verified_lower_bound"] << "\n";
    all.push_back(e);
  }
  emit_json(cfg.out, {{"sweep", {lo, hi}}, {"results", all}});
  return ok ? kOk : kVerificationFailure;
}

// ---- cg -------------------------------------------------------------------

int run_cg(int d, const std::string& mode, const std::string& out) {
  if (mode == "lower") {
    if (d < 1 || d > 12) throw UsageError("--d: lower mode needs 1 <= d <= 12");
    const auto w = verify_cg_lower_witness(d);
    std::cout << "k=" << w.k << ": point x^(" << d << ") = " << to_string(w.points.back()) << " violates B, "
              << (w.ok() ? "witness verified" : "witness rejected") << "\n";
    for (const auto& f : w.failures) std::cout << "  " << f << "\n";
    emit_json(out, to_json(w));
    return w.ok() ? kOk : kVerificationFailure;
  }
  if (d < 2 || d > 12) throw UsageError("--d: upper mode needs 2 <= d <= 12");
  const auto der = run_cg_upper_derivation(d);
  for (const auto& s : der.steps) std::cout << s.kind << ": " << s.name << " (rhs " << to_string(s.inequality.rhs) << ")\n";
  std::cout << "k=" << der.k << ": rhs " << to_string(der.final_rhs) << " rounds to " << to_string(der.floored_rhs)
            << (der.ok() ? ", derivation verified" : ", derivation rejected") << "\n";
  for (const auto& f : der.failures) std::cout << "  " << f << "\n";
  emit_json(out, to_json(der));
  return der.ok() ? kOk : kVerificationFailure;
}

// ---- repro ----------------------------------------------------------------

int run_repro(bool all, int criterion, const ReproOptions& opts, const std::string& out_dir) {
  if (!all && criterion == 0) throw UsageError("--all or --criterion is required");
  std::vector<CriterionResult> results;
  if (all) {
    results = run_all(opts);
  } else {
    if (criterion < 1 || criterion > static_cast<int>(repro_manifest().size()))
      throw UsageError("--criterion: no criterion " + std::to_string(criterion));
    results.push_back(run_criterion(criterion, opts));
  }
  std::ostringstream table;
  for (const auto& r : results) {
    table << std::setw(2) << r.id << "  " << std::left << std::setw(16) << verdict(r) << std::setw(46) << r.name
          << std::right << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << "s  " << r.detail
          << "\n";
  }
  std::cout << table.str();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    json j = json::array();
    for (const auto& r : results) j.push_back(to_json(r));
    write_file(out_dir + "/repro.json", json{{"results", j}, {"as_expected", all_as_expected(results)}}.dump(2) + "\n");
    write_file(out_dir + "/repro.txt", table.str());
  }
  return all_as_expected(results) ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lift-and-project rank tools for the graphs H_k"};
  app.require_subcommand(1);
  int precision = 0;
  app.add_option("--precision", precision, "Interval precision in bits (default: HKRANK_PRECISION_BITS or 128)")
      ->check(CLI::Range(53, 4096));

  GraphConfig gc;
  auto* graph = app.add_subcommand("graph", "Build a graph and print basic invariants");
  graph->add_option("--family", gc.family, "hk | clebsch | petersen | qls | cycle | path | complete")
      ->check(CLI::IsMember({"hk", "clebsch", "petersen", "qls", "cycle", "path", "complete"}));
  graph->add_option("--k", gc.k, "k for H_k")->check(CLI::Range(1, 1000));
  graph->add_option("--l", gc.l, "string length for qls")->check(CLI::Range(1, 20));
  graph->add_option("--distances", gc.distances, "Hamming distances for qls");
  graph->add_option("--n", gc.n, "order for cycle, path, complete")->check(CLI::Range(1, 100000));
  graph->add_option("--destroy", gc.destroy_label, "destroy the vertex with this label");
  graph->add_option("--out", gc.out, "JSON output file");

  int stab_k = 3;
  std::string stab_out;
  auto* stab = app.add_subcommand("stab", "Stable sets, maximal sets and facet checks for H_k");
  stab->add_option("--k", stab_k, "k")->required()->check(CLI::Range(2, 11));
  stab->add_option("--out", stab_out, "JSON output file");

  int shadow_k = 4, shadow_samples = kShadowSamples;
  std::string shadow_format = "csv", shadow_out;
  auto* shadow = app.add_subcommand("shadow", "Sample the first-level shadow boundary");
  shadow->add_option("--k", shadow_k, "k")->required()->check(CLI::Range(4, 100000));
  shadow->add_option("--format", shadow_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  shadow->add_option("--samples", shadow_samples, "boundary samples")->check(CLI::Range(2, 100000));
  shadow->add_option("--out", shadow_out, "output file; JSON is written next to it");

  CertifyConfig cc;
  auto* certify = app.add_subcommand("certify", "Verify a membership certificate");
  certify->add_option("--file", cc.file, "certificate JSON to replay");
  certify->add_option("--k", cc.k, "k")->check(CLI::Range(3, 100000));
  certify->add_option("--p", cc.p, "depth")->check(CLI::Range(1, 1000));
  certify->add_option("--a", cc.a, "a (decimal or fraction)");
  certify->add_option("--b", cc.b, "b");
  certify->add_option("--c", cc.c, "c");
  certify->add_option("--d", cc.d, "d");
  certify->add_flag("--exhaustive", cc.exhaustive, "check every column at depth 1 (k <= 8)");
  certify->add_option("--save", cc.save, "write the verified certificate tree here");
  certify->add_option("--out", cc.out, "JSON output file");

  RankConfig rc;
  auto* rank = app.add_subcommand("rank", "Certified lower bounds on the rank of H_k");
  rank->add_option("--k", rc.k, "k")->check(CLI::Range(3, 1000000));
  rank->add_option("--sweep", rc.sweep, "range FIRST:LAST");
  rank->add_option("--eps", rc.eps, "initial offset above u1");
  rank->add_option("--checkpoint", rc.checkpoint, "JSON-lines file for resumable sweeps");
  rank->add_option("--threads", rc.threads, "worker threads (0: all cores)");
  rank->add_option("--out", rc.out, "JSON output file");

  int cg_d = 2;
  std::string cg_mode = "upper", cg_out;
  auto* cg = app.add_subcommand("cg", "Chvatal-Gomory rank bounds");
  cg->add_option("--d", cg_d, "depth parameter")->required();
  cg->add_option("--mode", cg_mode, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
  cg->add_option("--out", cg_out, "JSON output file");

  bool repro_all = false;
  int repro_id = 0;
  ReproOptions ro;
  std::string repro_out;
  auto* repro = app.add_subcommand("repro", "Run the reproduction manifest");
  repro->add_flag("--all", repro_all, "run every criterion");
  repro->add_option("--criterion", repro_id, "run one criterion");
  repro->add_option("--threads", ro.threads, "worker threads (0: all cores)");
  repro->add_option("--seed", ro.seed, "seed for the sampled criteria");
  repro->add_flag("--long", ro.long_mode, "extend the greedy sweep to k <= 10000");
  repro->add_option("--out", repro_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (precision != 0) setenv("HKRANK_PRECISION_BITS", std::to_string(precision).c_str(), 1);

  try {
    if (*graph) return run_graph(gc);
    if (*stab) return run_stab(stab_k, stab_out);
    if (*shadow) return run_shadow(shadow_k, shadow_format, shadow_samples, shadow_out);
    if (*certify) return run_certify(cc);
    if (*rank) return run_rank(rc);
    if (*cg) return run_cg(cg_d, cg_mode, cg_out);
    if (*repro) return run_repro(repro_all, repro_id, ro, repro_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
