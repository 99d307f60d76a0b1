#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hypsign/certificates.hpp"
#include "hypsign/deform.hpp"
#include "hypsign/errors.hpp"
#include "hypsign/proofcheck.hpp"
#include "hypsign/realroots.hpp"
#include "hypsign/reference.hpp"
#include "hypsign/search.hpp"
#include "hypsign/signcase.hpp"

using namespace hypsign;

namespace {

// Sign pattern of p, or nothing when a coefficient vanishes.
std::optional<SignPattern> complete_pattern(const Polynomial& p) {
  try {
    return sign_pattern(p);
  } catch (const ZeroCoefficient&) {
    return std::nullopt;
  }
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  if (!in_time) o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << s;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " [" << t.str() << " s";
  if (limit_s > 0) std::cout << " / limit " << limit_s << " s";
  std::cout << "] " << o.detail << std::endl;
}

SearchConfig config(std::uint64_t budget) {
  SearchConfig cfg;
  cfg.seed = kDefaultSeed;
  cfg.budget = budget;
  cfg.workers = workers();
  return cfg;
}

Outcome certificate_audit() {
  const auto& certs = builtin_certificates();
  std::vector<std::string> failed;
  for (const auto& c : certs) {
    auto rep = verify_certificate(c);
    if (!rep.all_pass()) {
      std::string why = c.id + " (";
      if (!rep.expansion_match) {
        why += "printed coefficient x^";
        for (std::size_t i = 0; i < rep.mismatched_powers.size(); ++i)
          why += (i ? ",x^" : "") + std::to_string(rep.mismatched_powers[i]);
        why += rep.printed_precision_match ? " agrees only after rounding" : " wrong";
      }
      if (!rep.sp_match) why += " sign pattern";
      if (!rep.case_match) why += " case";
      failed.push_back(why + ")");
    }
  }
  std::string detail = std::to_string(certs.size()) + " certificates, " + std::to_string(failed.size()) + " fail";
  for (const auto& f : failed) detail += "; " + f;
  return {certs.size() >= 24 && failed.empty(), detail};
}

Outcome algebra_audit() {
  int pass = 0;
  std::string bad;
  for (const auto& claim : builtin_identities()) {
    if (check_identity(claim))
      ++pass;
    else
      bad += " " + claim.id;
  }
  int n = static_cast<int>(builtin_identities().size());
  return {pass == n && n >= 10, std::to_string(pass) + "/" + std::to_string(n) + " identities exact" +
                                    (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome sign_evidence() {
  std::uint64_t total = 0, agree = 0;
  std::string bad;
  for (const auto& fam : builtin_families()) {
    auto rep = sign_sample(fam, 10000, kDefaultSeed, std::nullopt, workers());
    total += rep.samples;
    agree += rep.agree;
    if (!rep.all_agree() || rep.samples != 10000) bad += " " + fam.id;
  }
  return {bad.empty(), std::to_string(agree) + "/" + std::to_string(total) + " samples agree over " +
                           std::to_string(builtin_families().size()) + " family regions" +
                           (bad.empty() ? "" : "; counterexamples in:" + bad)};
}

Outcome table_reproduction() {
  auto table = classify(6, 2, config(100000));
  auto ref = reference_table(6, 2);
  auto diff = compare_table(table, ref);
  int y = 0, y_found = 0, n_witness = 0;
  for (const auto& [key, e] : ref.cells) {
    const Cell* cell = table.find(key.first, key.second);
    bool found = cell && cell->status == CellStatus::Witness;
    if (e == Expectation::Realizable) {
      ++y;
      if (found) ++y_found;
    } else if (e == Expectation::NotRealizable && found) {
      ++n_witness;
    }
  }
  for (const auto& cell : table.cells)
    if (cell.status == CellStatus::Witness && !verify_witness(*cell.witness, cell.sp, cell.kase))
      return {false, "unverified witness"};
  std::string detail = std::to_string(y_found) + "/" + std::to_string(y) + " Y-cells with witnesses, " +
                       std::to_string(n_witness) + " N-cells with witnesses, " +
                       std::to_string(diff.mismatches.size()) + " mismatches (seed " + std::to_string(kDefaultSeed) +
                       ", budget 100000; 'none' is evidence)";
  return {diff.empty() && y == 69 && y_found == 69 && n_witness == 0 && table.count(CellStatus::Witness) == 69, detail};
}

Outcome d5_crosschecks() {
  struct Item {
    SignPattern sp;
    InterleavingCase kase;
    bool expect_witness;
  };
  std::vector<Item> items{{sigma2(2, 4), {{3, 1}}, true},
                          {sigma2(2, 4), {{2, 2}}, true},
                          {sigma2(2, 4), {{1, 3}}, false},
                          {sigma2(2, 4), {{0, 4}}, false},
                          {sigma(3, 2, 1), {{0, 3, 0}}, false}};
  bool ok = true;
  std::string detail;
  for (const auto& it : items) {
    auto res = search_realization(it.sp, it.kase, config(1000000));
    bool found = res.witness.has_value();
    if (found && !verify_witness(*res.witness, it.sp, it.kase)) found = false;
    ok = ok && found == it.expect_witness;
    detail += it.sp.to_string() + " " + it.kase.to_string() + ": " +
              (found ? "witness after " + std::to_string(res.samples_used) : "none in " + std::to_string(res.samples_used)) +
              "; ";
  }
  return {ok, detail};
}

Outcome canonical_realization() {
  int found = 0;
  std::string missing;
  for (const auto& sp : block_patterns(6, 2)) {
    auto res = search_realization(sp, canonical_case(sp), config(10000));
    if (res.witness && verify_witness(*res.witness, sp, canonical_case(sp)))
      ++found;
    else
      missing += " " + sp.to_string();
  }
  return {found == 15, std::to_string(found) + "/15 canonical cases realized within 10^4 samples" +
                           (missing.empty() ? "" : "; missing:" + missing)};
}

Outcome padding() {
  const Certificate& base = builtin_certificate("d7-s323-050");
  Certificate a = pad_witness(base, 1, 1, Rational(1, 1000));
  Certificate b = pad_witness(base, 2, 0, Rational(1, 1000));
  RootConfiguration ra(a.roots), rb(b.roots);
  bool ok_a = sign_pattern(ra.expand()) == sigma(4, 2, 4) && case_of(ra) == InterleavingCase{{1, 5, 1}};
  bool ok_b = sign_pattern(rb.expand()) == sigma(5, 2, 3) && case_of(rb) == InterleavingCase{{0, 5, 2}};
  return {ok_a && ok_b, std::string("(1,1): ") + sign_pattern(ra.expand()).to_string() + " " + case_of(ra).to_string() +
                            ", (2,0): " + sign_pattern(rb.expand()).to_string() + " " + case_of(rb).to_string()};
}

Outcome deformation_properties() {
  auto ref = reference_table(6, 2);
  std::vector<std::pair<SignPattern, InterleavingCase>> cells;
  for (const auto& [key, e] : ref.cells)
    if (e == Expectation::Realizable) cells.push_back(key);
  Rng pick(kDefaultSeed);
  int configs = 0, traces = 0, stationary_checked = 0, events = 0;
  std::vector<std::string> bad;
  auto fail = [&](const std::string& what) {
    if (bad.size() < 5) bad.push_back(what);
  };
  while (configs < 100) {
    const auto& [sp, kase] = cells[pick.below(cells.size())];
    SearchConfig cfg = config(20000);
    cfg.workers = 1;
    cfg.seed = kDefaultSeed + static_cast<std::uint64_t>(configs);
    auto res = search_realization(sp, kase, cfg);
    if (!res.witness) continue;
    ++configs;
    std::vector<Rational> xi(res.witness->roots().begin(), res.witness->roots().end());
    std::sort(xi.begin(), xi.end());
    Polynomial p = res.witness->expand();
    for (const auto& step : catalog_step_ids()) {
      auto dir = direction_catalog(step, xi);
      auto path = trace(p, dir.v, TraceOptions{});
      ++traces;
      std::string tag = sp.to_string() + " " + kase.to_string() + " " + step;
      for (const auto& r : xi) {
        if (dir.v(r) != 0) continue;
        ++stationary_checked;
        if (std::find(path.stationary_roots.begin(), path.stationary_roots.end(), r) == path.stationary_roots.end())
          fail(tag + ": shared root not stationary");
        for (const auto& g : path.grid) {
          bool exact = false;
          for (std::size_t k = 0; k < g.roots.size(); ++k)
            if (g.roots[k].is_exact() && g.roots[k].lo == r && g.stationary[k]) exact = true;
          if (!exact || path.at(g.t)(r) != 0) fail(tag + ": stationary root moved");
        }
      }
      std::optional<Rational> first_zero;
      for (const auto& e : path.events)
        if (e.kind == EventKind::CoefficientZero) {
          first_zero = e.t_star.lo;
          break;
        }
      for (const auto& g : path.grid) {
        if (first_zero && g.t >= *first_zero) break;
        if (sign_pattern(path.at(g.t)) != sp) fail(tag + ": sign pattern changed before a coefficient event");
      }
      if (path.initial_velocity != path.first_step_movement) fail(tag + ": velocity/movement disagree");
      for (std::size_t k = 0; k < xi.size(); ++k)
        if (path.initial_velocity[k] != (dir.v(xi[k]) == 0 ? 0 : root_velocity_sign(p, dir.v, xi[k])))
          fail(tag + ": velocity sign");
      for (const auto& e : path.events) {
        ++events;
        if (!bracket_certified(e)) fail(tag + ": uncertified bracket " + e.to_string());
      }
    }
  }
  std::string detail = std::to_string(configs) + " witnesses, " + std::to_string(traces) + " traces, " +
                       std::to_string(stationary_checked) + " stationary roots, " + std::to_string(events) +
                       " certified events";
  for (const auto& b : bad) detail += "; " + b;
  return {bad.empty(), detail};
}

Outcome property_suites() {
  std::mt19937_64 rng(kDefaultSeed);
  auto draw_roots = [&](int n, bool distinct_moduli) {
    std::vector<Rational> out;
    std::set<Rational> moduli;
    while (static_cast<int>(out.size()) < n) {
      Rational m(1 + static_cast<long>(rng() % 997), 1 + static_cast<long>(rng() % 97));
      m.canonicalize();
      if (distinct_moduli && !moduli.insert(m).second) continue;
      out.push_back(rng() % 2 ? m : Rational(-m));
    }
    return out;
  };
  int descartes_bad = 0, reversion_bad = 0, rolle_bad = 0, sturm_bad = 0;
  for (int it = 0; it < 10000; ++it) {
    int d = 1 + static_cast<int>(rng() % 8);
    RootConfiguration rc(draw_roots(d, true));
    auto sp = complete_pattern(rc.expand());
    if (!sp) continue;
    if (sp->changes() != rc.positive_count() || sp->preservations() != rc.negative_count()) ++descartes_bad;
  }
  for (int it = 0; it < 2000; ++it) {
    RootConfiguration rc(draw_roots(2 + static_cast<int>(rng() % 6), true));
    if (rc.positive_count() == 0 || rc.negative_count() == 0) continue;
    Polynomial p = rc.expand();
    auto pattern = complete_pattern(p);
    if (!pattern) continue;
    SignPattern sp = *pattern;
    InterleavingCase k = case_of(rc);
    if (revert(revert(p)) != p || sign_pattern(revert(p)) != sp.reverted() || sp.reverted().reverted() != sp ||
        case_of(rc.reciprocal()) != k.reversed() || k.reversed().reversed() != k)
      ++reversion_bad;
    if (k.gaps.size() == 3 && k.reversed() != InterleavingCase{{k.gaps[2], k.gaps[1], k.gaps[0]}}) ++reversion_bad;
  }
  for (int it = 0; it < 2000; ++it) {
    auto roots = draw_roots(2 + static_cast<int>(rng() % 6), false);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (roots.size() < 2) continue;
    Polynomial dp = derivative(expand_from_roots(roots));
    if (count_real_roots(dp) != static_cast<int>(roots.size()) - 1) ++rolle_bad;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
      if (count_real_roots(dp, roots[i], roots[i + 1]) != 1) ++rolle_bad;
  }
  for (int it = 0; it < 10000; ++it) {
    Polynomial p = expand_from_roots(draw_roots(1 + static_cast<int>(rng() % 6), false));
    bool complex_pair = rng() % 2 == 0;
    if (complex_pair) {
      Rational b(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 5));
      b.canonicalize();
      Rational c = b * b / 4 + Rational(1, 1 + static_cast<long>(rng() % 1000));
      p = p * Polynomial({c, b, 1});
    }
    if (is_hyperbolic(p) == complex_pair) ++sturm_bad;
  }
  int total = descartes_bad + reversion_bad + rolle_bad + sturm_bad;
  return {total == 0, "failures: Descartes " + std::to_string(descartes_bad) + "/10000, reversion " +
                          std::to_string(reversion_bad) + ", Rolle " + std::to_string(rolle_bad) + ", Sturm " +
                          std::to_string(sturm_bad) + "/10000"};
}

}  // namespace

int main() {
  std::cout << "acceptance suite (seed " << kDefaultSeed << ", " << workers() << " workers)" << std::endl;
  report(1, "certificate audit (exact expansion, sign pattern, case)", 1.0, certificate_audit);
  report(2, "algebra audit of printed coefficient formulas", 1.0, algebra_audit);
  report(3, "sign-claim evidence, 10^4 points per region", 10.0, sign_evidence);
  report(4, "d=6, c=2 table reproduction at 10^5 samples per cell", 600.0, table_reproduction);
  report(5, "d=5 cross-checks at 10^6 samples", 120.0, d5_crosschecks);
  report(6, "canonical realization of all 15 block patterns", 0, canonical_realization);
  report(7, "padding of the degree-7 witness", 0, padding);
  report(8, "deformation properties on 100 seeded witnesses", 120.0, deformation_properties);
  report(9, "property suites", 0, property_suites);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
