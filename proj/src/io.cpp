#include "hypsign/io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace hypsign {

namespace {

std::string case_label(const InterleavingCase& k) { return k.to_string(); }

std::string sp_label(const SignPattern& sp) {
  auto blocks = block_form(sp);
  std::string out;
  if (blocks) {
    out = "Σ_{";
    for (std::size_t i = 0; i < blocks->size(); ++i) out += (i ? "," : "") + std::to_string((*blocks)[i]);
    out += "} ";
  }
  return out + sp.to_string();
}

InterleavingCase case_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("case must be a nonempty array of integers");
  InterleavingCase k;
  for (const auto& g : j) {
    if (!g.is_number_integer() || g.get<int>() < 0) throw std::invalid_argument("case entries must be nonnegative");
    k.gaps.push_back(g.get<int>());
  }
  return k;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string stop_name(StopRule s) {
  switch (s) {
    case StopRule::AtTmax:
      return "t-max";
    case StopRule::FirstEvent:
      return "first-event";
    case StopRule::FirstRootEvent:
      return "first-root-event";
  }
  return "t-max";
}

Json interval_json(const IsolatingInterval& iv, int precision) {
  return Json{{"lo", to_exact_string(iv.lo)}, {"hi", to_exact_string(iv.hi)}, {"approx", to_decimal(iv.midpoint(), precision)}};
}

Json point_json(const std::map<std::string, Rational>& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = to_exact_string(v);
  return out;
}

Json poly_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(to_exact_string(c));
  return out;
}

}  // namespace

Json roots_to_json(std::span<const Rational> roots) {
  Json out = Json::array();
  for (const auto& r : roots) out.push_back(to_exact_string(r));
  return out;
}

std::vector<Rational> roots_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("roots must be an array");
  std::vector<Rational> out;
  for (const auto& r : j) {
    if (r.is_string())
      out.push_back(parse_rational(r.get<std::string>()));
    else if (r.is_number_integer())
      out.emplace_back(r.get<long>());
    else
      throw std::invalid_argument("roots must be decimal or fraction strings");
  }
  return out;
}

Json table_to_json(const ClassificationTable& table) {
  Json cells = Json::array();
  for (const auto& cell : table.cells) {
    Json roots = cell.witness ? roots_to_json(cell.witness->roots()) : Json::array();
    cells.push_back(Json{{"sp", cell.sp.to_string()},
                         {"case", cell.kase.gaps},
                         {"status", to_string(cell.status)},
                         {"witness_roots", roots},
                         {"samples_used", cell.samples_used}});
  }
  return Json{{"schema", kTableSchema},
              {"d", table.d},
              {"c", table.c},
              {"theorem_filter", table.theorem_filter},
              {"cells", cells}};
}

ClassificationTable table_from_json(const Json& j) {
  try {
    ClassificationTable t;
    t.d = field(j, "d").get<int>();
    t.c = field(j, "c").get<int>();
    if (j.contains("theorem_filter")) t.theorem_filter = j.at("theorem_filter").get<bool>();
    for (const auto& cj : field(j, "cells")) {
      Cell cell;
      cell.sp = SignPattern::parse(field(cj, "sp").get<std::string>());
      cell.kase = case_from_json(field(cj, "case"));
      cell.status = parse_cell_status(field(cj, "status").get<std::string>());
      if (cj.contains("samples_used")) cell.samples_used = cj.at("samples_used").get<std::uint64_t>();
      auto roots = cj.contains("witness_roots") ? roots_from_json(cj.at("witness_roots")) : std::vector<Rational>{};
      if (!roots.empty()) cell.witness = RootConfiguration(std::move(roots));
      if ((cell.status == CellStatus::Witness) != cell.witness.has_value())
        throw std::invalid_argument("cell " + cell.sp.to_string() + " " + cell.kase.to_string() +
                                    ": witness_roots must be present exactly for witness cells");
      if (cell.sp.degree() != t.d) throw std::invalid_argument("cell degree differs from d");
      t.cells.push_back(std::move(cell));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed table: ") + e.what());
  }
}

std::string render_markdown(const ClassificationTable& table, int precision) {
  std::map<SignPattern, std::pair<std::vector<std::string>, std::vector<std::string>>> rows;
  std::vector<SignPattern> order;
  for (const auto& cell : table.cells) {
    if (!rows.count(cell.sp)) order.push_back(cell.sp);
    auto& row = rows[cell.sp];
    if (cell.status == CellStatus::Witness)
      row.first.push_back(case_label(cell.kase));
    else if (cell.status == CellStatus::None)
      row.second.push_back(case_label(cell.kase));
  }
  std::ostringstream out;
  out << "d = " << table.d << ", c = " << table.c << "\n\n";
  out << "| SP | Y (witness found) | N (no witness within budget) |\n|---|---|---|\n";
  for (const auto& sp : order) {
    const auto& [y, n] = rows[sp];
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
      return s.empty() ? std::string("-") : s;
    };
    out << "| " << sp_label(sp) << " | " << join(y) << " | " << join(n) << " |\n";
  }
  out << "\n| SP | case | status | samples | witness roots |\n|---|---|---|---|---|\n";
  for (const auto& cell : table.cells) {
    if (cell.status == CellStatus::Excluded) continue;
    std::string roots;
    if (cell.witness)
      for (const auto& r : cell.witness->roots()) roots += (roots.empty() ? "" : ", ") + to_display(r, precision);
    out << "| " << sp_label(cell.sp) << " | " << case_label(cell.kase) << " | " << to_string(cell.status) << " | "
        << cell.samples_used << " | " << (roots.empty() ? "-" : roots) << " |\n";
  }
  return out.str();
}

std::string render_csv(const ClassificationTable& table, int precision) {
  std::ostringstream out;
  out << "sp,case,status,samples_used,witness_roots\n";
  for (const auto& cell : table.cells) {
    std::string roots;
    if (cell.witness)
      for (const auto& r : cell.witness->roots()) roots += (roots.empty() ? "" : ";") + to_display(r, precision);
    out << cell.sp.to_string() << ",\"" << case_label(cell.kase) << "\"," << to_string(cell.status) << ","
        << cell.samples_used << "," << roots << "\n";
  }
  return out.str();
}

Json diff_to_json(const TableDiff& diff) {
  Json mism = Json::array();
  for (const auto& m : diff.mismatches)
    mism.push_back(Json{{"sp", m.sp.to_string()},
                        {"case", m.kase.gaps},
                        {"expected", to_string(m.expected)},
                        {"got", to_string(m.got)}});
  return Json{{"empty", diff.empty()},
              {"compared", diff.compared},
              {"skipped_unknown", diff.skipped_unknown},
              {"missing", diff.missing},
              {"mismatches", mism}};
}

std::string render_diff(const TableDiff& diff) {
  std::ostringstream out;
  out << "compared " << diff.compared << " cells, " << diff.skipped_unknown << " without reference, "
      << diff.missing << " missing, " << diff.mismatches.size() << " mismatches\n";
  for (const auto& m : diff.mismatches)
    out << "  " << sp_label(m.sp) << " " << case_label(m.kase) << ": expected " << to_string(m.expected) << ", got "
        << to_string(m.got) << "\n";
  return out.str();
}

Json certificate_to_json(const Certificate& cert) {
  return Json{{"id", cert.id},
              {"anchor", cert.anchor},
              {"factored", cert.factored},
              {"roots", roots_to_json(cert.roots)},
              {"printed", cert.printed},
              {"claimed_sp", cert.claimed_sp.to_string()},
              {"claimed_case", cert.claimed_case.gaps}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.id = field(j, "id").get<std::string>();
    if (j.contains("anchor")) c.anchor = j.at("anchor").get<std::string>();
    if (j.contains("factored")) c.factored = j.at("factored").get<std::string>();
    c.roots = j.contains("roots") ? roots_from_json(j.at("roots")) : parse_factored_roots(c.factored);
    c.printed = field(j, "printed").get<std::vector<std::string>>();
    c.claimed_sp = SignPattern::parse(field(j, "claimed_sp").get<std::string>());
    c.claimed_case = case_from_json(field(j, "claimed_case"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

Json report_to_json(const CertificateReport& rep) {
  Json j{{"id", rep.id},
         {"pass", rep.all_pass()},
         {"expansion_match", rep.expansion_match},
         {"mismatched_powers", rep.mismatched_powers},
         {"printed_precision_match", rep.printed_precision_match},
         {"sp_match", rep.sp_match},
         {"case_match", rep.case_match}};
  j["split_epsilon"] = rep.split_epsilon ? Json(to_exact_string(*rep.split_epsilon)) : Json(nullptr);
  j["detail"] = rep.detail;
  return j;
}

Json certificates_to_json(const std::vector<Certificate>& certs) {
  Json arr = Json::array();
  for (const auto& c : certs) arr.push_back(certificate_to_json(c));
  return Json{{"schema", kCertificatesSchema}, {"count", certs.size()}, {"certificates", arr}};
}

std::vector<Certificate> certificates_from_json(const Json& j) {
  std::vector<Certificate> out;
  for (const auto& c : field(j, "certificates")) out.push_back(certificate_from_json(c));
  return out;
}

Json search_to_json(const SignPattern& sp, const InterleavingCase& kase, const SearchResult& res, std::uint64_t seed,
                    std::uint64_t budget) {
  Json j{{"schema", kSearchSchema},
         {"sp", sp.to_string()},
         {"case", kase.gaps},
         {"status", res.witness ? "witness" : "none"},
         {"witness_roots", res.witness ? roots_to_json(res.witness->roots()) : Json::array()},
         {"samples_used", res.samples_used},
         {"seed", seed},
         {"budget", budget}};
  j["strategy"] = res.strategy ? Json(to_string(*res.strategy)) : Json(nullptr);
  return j;
}

std::vector<Rational> witness_roots_from_json(const Json& j) {
  if (j.is_object()) {
    if (j.contains("witness_roots")) return roots_from_json(j.at("witness_roots"));
    if (j.contains("roots")) return roots_from_json(j.at("roots"));
    if (j.contains("input") && j.at("input").contains("roots")) return roots_from_json(j.at("input").at("roots"));
  }
  if (j.is_array()) return roots_from_json(j);
  throw std::invalid_argument("no witness roots in document");
}

Json path_to_json(const DeformationPath& path, const std::vector<Rational>& roots, const std::string& step_id,
                  const TraceOptions& opts, int precision) {
  Json input{{"roots", roots_to_json(roots)},
             {"step", step_id},
             {"t_max", to_exact_string(opts.t_max)},
             {"stop", stop_name(opts.stop)},
             {"min_steps", opts.min_steps},
             {"max_halvings", opts.max_halvings},
             {"precision", to_exact_string(opts.precision)}};
  Json events = Json::array();
  for (const auto& e : path.events) {
    Json ej{{"kind", to_string(e.kind)}};
    if (e.i) ej["i"] = e.i;
    if (e.j) ej["j"] = e.j;
    if (e.index >= 0) ej["index"] = e.index;
    ej["t_star"] = interval_json(e.t_star, precision);
    ej["multiplicity"] = e.multiplicity;
    ej["certified"] = bracket_certified(e);
    ej["description"] = e.to_string(precision);
    events.push_back(std::move(ej));
  }
  Json persistent = Json::array();
  for (auto k : path.persistent) persistent.push_back(to_string(k));
  Json grid = Json::array();
  for (const auto& g : path.grid) {
    Json rj = Json::array();
    for (const auto& r : g.roots) rj.push_back(r.approx());
    grid.push_back(Json{{"t", to_decimal(g.t, precision)}, {"roots", rj}, {"stationary", g.stationary}});
  }
  Json j{{"schema", kTraceSchema},
         {"input", input},
         {"p", poly_json(path.p)},
         {"v", poly_json(path.v)},
         {"t_end", to_exact_string(path.t_end)},
         {"stationary_roots", roots_to_json(path.stationary_roots)},
         {"persistent", persistent},
         {"initial_velocity", path.initial_velocity},
         {"first_step_movement", path.first_step_movement},
         {"events", events}};
  j["hyperbolic_until"] = path.hyperbolic_until ? interval_json(*path.hyperbolic_until, precision) : Json(nullptr);
  j["grid"] = grid;
  return j;
}

Json identity_to_json(const IdentityClaim& claim, bool pass) {
  return Json{{"id", claim.id},
              {"family", claim.family_id},
              {"anchor", claim.anchor},
              {"power", claim.power},
              {"formula", claim.formula},
              {"denominator", claim.denominator},
              {"after_constraint", claim.after_constraint},
              {"pass", pass}};
}

Json sign_report_to_json(const ParametricFamily& fam, const SignReport& rep) {
  Json ces = Json::array();
  for (const auto& p : rep.counterexamples) ces.push_back(point_json(p));
  return Json{{"family", fam.id},
              {"name", fam.name},
              {"anchor", fam.anchor},
              {"factored", fam.factored},
              {"target_power", fam.target},
              {"claimed_sign", fam.claimed_sign},
              {"region", rep.region},
              {"samples", rep.samples},
              {"agree", rep.agree},
              {"zero", rep.zero},
              {"disagree", rep.disagree},
              {"witness", point_json(fam.witness)},
              {"witness_agrees", rep.witness_agrees},
              {"pass", rep.all_agree()},
              {"counterexamples", ces}};
}

}  // namespace hypsign
