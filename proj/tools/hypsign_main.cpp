#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "hypsign/certificates.hpp"
#include "hypsign/deform.hpp"
#include "hypsign/errors.hpp"
#include "hypsign/io.hpp"
#include "hypsign/proofcheck.hpp"
#include "hypsign/reference.hpp"
#include "hypsign/search.hpp"

namespace {

using namespace hypsign;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kEvidenceNote =
    "note: 'none' means no witness was found within the sample budget; it is evidence, not a proof of "
    "non-realizability";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HYPSIGN_SEED")) {
    try {
      std::size_t used = 0;
      std::uint64_t s = std::stoull(env, &used);
      if (used == std::string(env).size()) return s;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("HYPSIGN_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

InterleavingCase parse_case_flag(const std::string& s) {
  try {
    return InterleavingCase::parse(s.front() == '(' ? s : "(" + s + ")");
  } catch (const std::exception& e) {
    throw UsageError("bad --case '" + s + "': " + e.what());
  }
}

std::vector<Strategy> parse_strategies(const std::string& s) {
  std::vector<Strategy> out;
  for (const auto& name : split(s, ',')) out.push_back(parse_strategy(name));
  return out;
}

std::string strategies_label(const std::vector<Strategy>& ss) {
  std::string out;
  for (auto s : ss) out += (out.empty() ? "" : ",") + to_string(s);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

class Manifest {
 public:
  Manifest(std::string command, std::ostream& out) : command_(std::move(command)), out_(out) {
    start_ = std::chrono::steady_clock::now();
    out_ << "hypsign " << kVersion << " " << command_ << "\n";
  }
  void echo(const std::string& key, const std::string& value) { out_ << "  " << key << ": " << value << "\n"; }
  void finish() {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << s << " s";
    echo("elapsed", t.str());
  }

 private:
  std::string command_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
};

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int cmd_verify_certs(const std::string& db, const std::string& format) {
  std::vector<Certificate> certs = db.empty() ? builtin_certificates() : certificates_from_json(read_json_file(db));
  std::vector<CertificateReport> reports;
  int failed = 0;
  for (const auto& c : certs) {
    reports.push_back(verify_certificate(c));
    if (!reports.back().all_pass()) ++failed;
  }
  if (format == "json") {
    Json arr = Json::array();
    for (std::size_t i = 0; i < certs.size(); ++i) {
      Json r = report_to_json(reports[i]);
      r["anchor"] = certs[i].anchor;
      arr.push_back(std::move(r));
    }
    Json doc{{"schema", kCertificatesSchema}, {"count", certs.size()}, {"failed", failed}, {"reports", arr}};
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto& r = reports[i];
      std::cout << (r.all_pass() ? "pass  " : "FAIL  ") << certs[i].id << "  " << certs[i].claimed_sp.to_string()
                << " " << certs[i].claimed_case.to_string() << "  [" << certs[i].anchor << "]\n";
      if (!r.expansion_match) {
        std::cout << "      expansion differs at x^";
        for (std::size_t k = 0; k < r.mismatched_powers.size(); ++k)
          std::cout << (k ? ",x^" : "") << r.mismatched_powers[k];
        std::cout << (r.printed_precision_match ? " (agrees to printed precision)" : "") << "\n";
      }
      if (!r.sp_match) std::cout << "      sign pattern mismatch\n";
      if (!r.case_match) std::cout << "      case mismatch\n";
      if (!r.detail.empty()) std::cout << "      " << r.detail << "\n";
    }
    std::cout << certs.size() << " certificates: ";
    if (failed == 0)
      std::cout << "all pass\n";
    else
      std::cout << failed << " fail\n";
  }
  return failed == 0 ? 0 : 1;
}

int cmd_export_certs(const std::string& out) {
  write_output(certificates_to_json(builtin_certificates()).dump(2) + "\n", out);
  return 0;
}

int cmd_classify(int d, int c, SearchConfig cfg, bool no_filter, bool reversion, const std::string& format,
                 const std::string& out, int precision) {
  std::ostream& log = out.empty() && format == "json" ? std::cerr : std::cout;
  Manifest m("classify", log);
  m.echo("d", std::to_string(d));
  m.echo("c", std::to_string(c));
  m.echo("seed", std::to_string(cfg.seed));
  m.echo("budget", std::to_string(cfg.budget));
  m.echo("strategies", strategies_label(cfg.strategies));
  m.echo("workers", std::to_string(cfg.workers));
  m.echo("theorem filter", no_filter ? "off" : "on");
  ClassifyOptions opts;
  opts.theorem_filter = !no_filter;
  opts.use_reversion = reversion;
  ClassificationTable table = classify(d, c, cfg, opts);
  std::string text;
  if (format == "json")
    text = table_to_json(table).dump(2) + "\n";
  else if (format == "csv")
    text = render_csv(table, precision);
  else
    text = render_markdown(table, precision);
  if (!out.empty()) {
    write_output(text, out);
  } else {
    if (format != "json") log << "\n";
    std::cout << text;
    if (format != "json") log << "\n";
  }
  log << table.count(CellStatus::Witness) << " witness, " << table.count(CellStatus::None) << " none, "
      << table.count(CellStatus::Excluded) << " excluded\n";
  TableDiff diff = compare_table(table, reference_table(d, c));
  log << "diff against reference: " << render_diff(diff);
  log << kEvidenceNote << "\n";
  m.finish();
  return diff.empty() ? 0 : 1;
}

int cmd_search(const std::string& sp_text, const std::string& case_text, const SearchConfig& cfg,
               const std::string& format, int precision) {
  SignPattern sp = SignPattern::parse(sp_text);
  InterleavingCase kase = parse_case_flag(case_text);
  if (kase.changes() != sp.changes() || kase.negatives() != sp.preservations())
    throw UsageError("case " + kase.to_string() + " does not fit sign pattern " + sp.to_string());
  std::ostream& log = format == "json" ? std::cerr : std::cout;
  Manifest m("search", log);
  m.echo("sp", sp.to_string());
  m.echo("case", kase.to_string());
  m.echo("seed", std::to_string(cfg.seed));
  m.echo("budget", std::to_string(cfg.budget));
  m.echo("strategies", strategies_label(cfg.strategies));
  m.echo("workers", std::to_string(cfg.workers));
  SearchResult res = search_realization(sp, kase, cfg);
  if (format == "json") {
    std::cout << search_to_json(sp, kase, res, cfg.seed, cfg.budget).dump(2) << "\n";
  } else if (res.witness) {
    std::cout << "witness after " << res.samples_used << " samples (" << to_string(*res.strategy) << ")\n  roots:";
    for (const auto& r : res.witness->roots()) std::cout << " " << to_display(r, precision);
    Polynomial p = res.witness->expand();
    std::cout << "\n  coefficients (x^" << p.degree() << " .. x^0):";
    for (int j = p.degree(); j >= 0; --j) std::cout << " " << to_display(p[j], precision);
    std::cout << "\n  sign pattern " << sign_pattern(p).to_string() << ", case " << case_of(*res.witness).to_string()
              << " (verified exactly)\n";
  } else {
    std::cout << "none: no witness within " << res.samples_used << " samples\n" << kEvidenceNote << "\n";
  }
  m.finish();
  return res.witness ? 0 : 1;
}

struct TraceArgs {
  std::string witness_file;
  std::string roots;
  std::string step;
  std::string t_max;
  bool until_first_event = false;
  bool until_first_root_event = false;
  bool list_steps = false;
  std::string format = "text";
};

int cmd_trace(const TraceArgs& a, int precision) {
  if (a.list_steps) {
    std::vector<Rational> demo{-6, -5, -4, -3, 1, 2};
    for (const auto& id : catalog_step_ids()) {
      auto dir = direction_catalog(id, demo);
      std::cout << id << "  " << dir.label << "\n";
    }
    return 0;
  }
  std::vector<Rational> roots;
  std::string step = a.step;
  TraceOptions opts;
  if (!a.witness_file.empty()) {
    Json doc = read_json_file(a.witness_file);
    roots = witness_roots_from_json(doc);
    if (doc.is_object() && doc.contains("input")) {
      const Json& in = doc.at("input");
      if (step.empty() && in.contains("step")) step = in.at("step").get<std::string>();
      if (a.t_max.empty() && in.contains("t_max")) opts.t_max = parse_rational(in.at("t_max").get<std::string>());
      if (!a.until_first_event && !a.until_first_root_event && in.contains("stop")) {
        std::string s = in.at("stop").get<std::string>();
        if (s == "first-event") opts.stop = StopRule::FirstEvent;
        if (s == "first-root-event") opts.stop = StopRule::FirstRootEvent;
      }
      if (in.contains("min_steps")) opts.min_steps = in.at("min_steps").get<int>();
      if (in.contains("max_halvings")) opts.max_halvings = in.at("max_halvings").get<int>();
      if (in.contains("precision")) opts.precision = parse_rational(in.at("precision").get<std::string>());
    }
  } else if (!a.roots.empty()) {
    for (const auto& r : split(a.roots, ',')) roots.push_back(parse_rational(r));
  } else {
    throw UsageError("trace needs --witness-file or --roots");
  }
  if (step.empty()) throw UsageError("trace needs --step (see --list-steps)");
  if (!a.t_max.empty()) opts.t_max = parse_rational(a.t_max);
  if (a.until_first_event) opts.stop = StopRule::FirstEvent;
  if (a.until_first_root_event) opts.stop = StopRule::FirstRootEvent;

  std::vector<Rational> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  DeformationDirection dir = direction_catalog(step, sorted);
  Polynomial p = expand_from_roots(roots);
  DeformationPath path = trace(p, dir.v, opts);
  if (a.format == "json") {
    std::cout << path_to_json(path, roots, step, opts, precision).dump(2) << "\n";
    return 0;
  }
  std::cout << "step " << step << ": V = " << dir.label << "  " << dir.annotation << "\n";
  std::cout << "roots:";
  for (const auto& r : sorted) std::cout << " " << to_display(r, precision);
  std::cout << "\ntraced t in [0, " << to_display(path.t_end, precision) << "] on " << path.grid.size()
            << " grid points\n";
  if (!path.stationary_roots.empty()) {
    std::cout << "stationary roots:";
    for (const auto& r : path.stationary_roots) std::cout << " " << to_display(r, precision);
    std::cout << "\n";
  }
  std::cout << "initial velocity signs:";
  for (int s : path.initial_velocity) std::cout << " " << (s > 0 ? "+" : s < 0 ? "-" : "0");
  std::cout << "\n";
  if (path.events.empty()) std::cout << "no events\n";
  for (const auto& e : path.events)
    std::cout << "  " << e.to_string(precision) << (bracket_certified(e) ? "" : "  [uncertified]") << "\n";
  if (const DeformationEvent* first = path.first_root_event())
    std::cout << "first root event: " << first->to_string(precision) << "\n";
  if (path.hyperbolic_until)
    std::cout << "hyperbolic until t in (" << to_decimal(path.hyperbolic_until->lo, precision) << ", "
              << to_decimal(path.hyperbolic_until->hi, precision) << ")\n";
  return 0;
}

int cmd_proofcheck(const std::string& fam_id, std::uint64_t samples, std::uint64_t seed, unsigned workers,
                   const std::string& region, const std::string& format) {
  std::vector<const ParametricFamily*> fams;
  for (const auto& f : builtin_families())
    if (fam_id == "all" || f.id == fam_id || f.name == fam_id) fams.push_back(&f);
  if (fams.empty()) throw UsageError("unknown family '" + fam_id + "'");
  auto selected = [&](const std::string& id) {
    for (auto* f : fams)
      if (f->id == id) return true;
    return false;
  };
  std::ostream& log = format == "json" ? std::cerr : std::cout;
  Manifest m("proofcheck", log);
  m.echo("family", fam_id);
  m.echo("samples", std::to_string(samples));
  m.echo("seed", std::to_string(seed));
  if (!region.empty()) m.echo("region override", region);
  bool ok = true;
  Json ids = Json::array();
  Json signs = Json::array();
  Json constraints = Json::array();
  if (format != "json") std::cout << "\nidentities\n";
  for (const auto& claim : builtin_identities()) {
    if (!selected(claim.family_id)) continue;
    bool pass = check_identity(claim);
    ok = ok && pass;
    ids.push_back(identity_to_json(claim, pass));
    if (format != "json")
      std::cout << "  " << (pass ? "pass  " : "FAIL  ") << claim.id << "  x^" << claim.power << " = " << claim.formula
                << (claim.denominator == "1" ? "" : " / " + claim.denominator) << "  [" << claim.anchor << "]\n";
  }
  if (format != "json") std::cout << "constraints\n";
  for (auto* f : fams) {
    if (!f->constraint) continue;
    bool pass = constraint_consistent(*f, 100, seed);
    ok = ok && pass;
    constraints.push_back(Json{{"family", f->id}, {"var", f->constraint->var},
                               {"value", f->constraint->numerator + " / (" + f->constraint->denominator + ")"},
                               {"pass", pass}});
    if (format != "json")
      std::cout << "  " << (pass ? "pass  " : "FAIL  ") << f->id << "  " << f->constraint->var << " = "
                << f->constraint->numerator << "/(" << f->constraint->denominator << ") on 100 region points\n";
  }
  if (format != "json") std::cout << "sign claims (sampling evidence)\n";
  for (auto* f : fams) {
    std::optional<std::string> over;
    if (!region.empty()) over = region;
    SignReport rep = sign_sample(*f, samples, seed, over, workers);
    ok = ok && rep.all_agree();
    signs.push_back(sign_report_to_json(*f, rep));
    if (format != "json") {
      std::cout << "  " << (rep.all_agree() ? "pass  " : "FAIL  ") << f->id << "  x^" << f->target
                << (f->claimed_sign > 0 ? " > 0" : " < 0") << " on " << rep.region << ": " << rep.agree << "/"
                << rep.samples << "  [" << f->anchor << "]\n";
      for (const auto& ce : rep.counterexamples) {
        std::cout << "        counterexample:";
        for (const auto& [k, v] : ce) std::cout << " " << k << "=" << to_exact_string(v);
        std::cout << "\n";
      }
    }
  }
  if (format == "json") {
    Json doc{{"schema", kProofcheckSchema}, {"seed", seed}, {"samples", samples}, {"pass", ok},
             {"identities", ids}, {"constraints", constraints}, {"signs", signs}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << (ok ? "all checks pass" : "checks FAILED") << "\n";
  }
  m.finish();
  return ok ? 0 : 1;
}

int cmd_compare(const std::string& path, const std::string& format) {
  ClassificationTable table = table_from_json(read_json_file(path));
  TableDiff diff = compare_table(table, reference_table(table.d, table.c));
  if (format == "json")
    std::cout << diff_to_json(diff).dump(2) << "\n";
  else
    std::cout << "d = " << table.d << ", c = " << table.c << ": " << render_diff(diff) << kEvidenceNote << "\n";
  return diff.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability of sign patterns by hyperbolic polynomials"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int precision = 12;
  app.add_option("--precision", precision, "Significant digits in decimal output")
      ->check(CLI::Range(2, 40))
      ->capture_default_str();

  std::string format = "text";
  std::string out;

  auto* verify = app.add_subcommand("verify-certs", "Verify the built-in witness certificates");
  std::string db;
  verify->add_option("--db", db, "Certificate database (JSON from export-certs) instead of the built-in one");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* exp = app.add_subcommand("export-certs", "Write the certificate database as JSON");
  exp->add_option("--out", out, "Output file (stdout when omitted)");

  SearchConfig cfg;
  cfg.workers = default_workers();
  std::string strategies;
  std::string seed_text;
  auto add_search_flags = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Samples per cell")->capture_default_str();
    sub->add_option("--seed", seed_text, "Random seed (default: $HYPSIGN_SEED or 20250601)");
    sub->add_option("--strategies", strategies, "Comma-separated: log-uniform,cluster-near-one,certificate-template,local-refine");
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* cls = app.add_subcommand("classify", "Search every (sign pattern, case) cell for degree d, c sign changes");
  int d = 6;
  int c = 2;
  bool no_filter = false;
  bool reversion = false;
  std::string table_format = "md";
  cls->add_option("--d", d, "Degree")->check(CLI::Range(2, 12))->capture_default_str();
  cls->add_option("--c", c, "Sign changes")->check(CLI::Range(1, 11))->capture_default_str();
  add_search_flags(cls);
  cls->add_option("--format", table_format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));
  cls->add_flag("--no-theorem-filter", no_filter, "Search cells excluded by the general restrictions too");
  cls->add_flag("--reversion", reversion, "Search one cell of each mirror pair and map witnesses by reversion");
  cls->add_option("--out", out, "Write the table to a file");

  auto* srch = app.add_subcommand("search", "Search one (sign pattern, case) cell");
  std::string sp_text;
  std::string case_text;
  srch->add_option("--sp", sp_text, "Sign pattern, e.g. ++----+")->required();
  srch->add_option("--case", case_text, "Case, e.g. 0,3,1")->required();
  add_search_flags(srch);
  srch->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* tr = app.add_subcommand("trace", "Trace a deformation P + tV of a witness");
  TraceArgs ta;
  tr->add_option("--witness-file", ta.witness_file, "JSON with witness_roots or roots (search, trace output)");
  tr->add_option("--roots", ta.roots, "Comma-separated roots");
  tr->add_option("--step", ta.step, "Deformation direction id");
  tr->add_option("--t-max", ta.t_max, "End of the traced range");
  tr->add_flag("--until-first-event", ta.until_first_event, "Stop at the first event");
  tr->add_flag("--until-first-root-event", ta.until_first_root_event, "Stop at the first non-coefficient event");
  tr->add_flag("--list-steps", ta.list_steps, "List deformation direction ids");
  tr->add_option("--format", ta.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* pc = app.add_subcommand("proofcheck", "Audit the parametric coefficient identities and sign claims");
  std::string fam = "all";
  std::uint64_t samples = 10000;
  std::string region;
  pc->add_option("--family", fam, "Family id or name, or all")->capture_default_str();
  pc->add_option("--samples", samples, "Sample points per family region")->capture_default_str();
  pc->add_option("--seed", seed_text, "Random seed (default: $HYPSIGN_SEED or 20250601)");
  pc->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  pc->add_option("--region", region, "Sample this region instead, e.g. \"0<A<B\"");
  pc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* cmp = app.add_subcommand("compare", "Compare a classification table (JSON) with the reference");
  std::string table_file;
  cmp->add_option("table", table_file, "JSON table from classify --format json")->required();
  cmp->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.seed = seed_text.empty() ? default_seed() : std::stoull(seed_text);
    if (!strategies.empty()) cfg.strategies = parse_strategies(strategies);
    cfg.validate();
    if (verify->parsed()) return cmd_verify_certs(db, format);
    if (exp->parsed()) return cmd_export_certs(out);
    if (cls->parsed()) return cmd_classify(d, c, cfg, no_filter, reversion, table_format, out, precision);
    if (srch->parsed()) return cmd_search(sp_text, case_text, cfg, format, precision);
    if (tr->parsed()) return cmd_trace(ta, precision);
    if (pc->parsed()) return cmd_proofcheck(fam, samples, cfg.seed, cfg.workers, region, format);
    if (cmp->parsed()) return cmd_compare(table_file, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
