#include "hypsign/certificates.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "hypsign/errors.hpp"
#include "hypsign/realroots.hpp"

namespace hypsign {

Polynomial Certificate::printed_polynomial() const {
  std::vector<Rational> v;
  for (auto it = printed.rbegin(); it != printed.rend(); ++it) v.push_back(parse_rational(*it));
  return Polynomial(std::move(v));
}

bool Certificate::has_multiple_roots() const {
  auto sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::vector<Rational> parse_factored_roots(const std::string& factored) {
  std::vector<Rational> roots;
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("bad factored form: '" + factored + "'"); };
  while (i < factored.size()) {
    if (std::isspace(static_cast<unsigned char>(factored[i]))) {
      ++i;
      continue;
    }
    if (factored[i] != '(') fail();
    std::size_t close = factored.find(')', i);
    if (close == std::string::npos) fail();
    std::string inner;
    for (std::size_t k = i + 1; k < close; ++k) {
      if (!std::isspace(static_cast<unsigned char>(factored[k]))) inner.push_back(factored[k]);
    }
    if (inner.size() < 3 || inner[0] != 'x' || (inner[1] != '+' && inner[1] != '-')) fail();
    Rational c = parse_decimal(inner.substr(2));
    Rational root = inner[1] == '-' ? c : Rational(-c);
    int mult = 1;
    i = close + 1;
    if (i < factored.size() && factored[i] == '^') {
      ++i;
      std::size_t start = i;
      while (i < factored.size() && std::isdigit(static_cast<unsigned char>(factored[i]))) ++i;
      if (start == i) fail();
      mult = std::stoi(factored.substr(start, i - start));
    }
    for (int k = 0; k < mult; ++k) roots.push_back(root);
  }
  if (roots.empty()) fail();
  return roots;
}

std::vector<Rational> split_multiple_roots(const std::vector<Rational>& roots, const Rational& eps) {
  std::map<Rational, int> mult;
  for (const auto& r : roots) ++mult[r];
  std::vector<Rational> out;
  for (const auto& [r, k] : mult) {
    if (k == 1) {
      out.push_back(r);
      continue;
    }
    int half = k / 2;
    for (int j = -half; j <= half; ++j) {
      if (j == 0 && k % 2 == 0) continue;
      out.push_back(r + eps * j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Certificate make(std::string id, std::string anchor, std::string factored, std::vector<std::string> printed,
                 std::vector<int> blocks, std::vector<int> kase) {
  Certificate c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.factored = std::move(factored);
  c.roots = parse_factored_roots(c.factored);
  c.printed = std::move(printed);
  c.claimed_sp = blocks.size() == 3 ? sigma(blocks[0], blocks[1], blocks[2]) : sigma2(blocks[0], blocks[1]);
  c.claimed_case = {std::move(kase)};
  return c;
}

std::vector<Certificate> build_inventory() {
  std::vector<Certificate> v;
  // Canonical realizations with multiple roots; the case is checked on a
  // split version.
  v.push_back(make("s151-040", "Σ_{1,5,1} canonical realization (0,4,0), quadruple root split",
                   "(x-0.01)(x+0.25)^4(x-1)",
                   {"1", "-0.01", "-0.625", "-0.30625", "-0.05546875", "-0.0033203125", "0.0000390625"}, {1, 5, 1},
                   {0, 4, 0}));
  v.push_back(make("s115-400", "Σ_{1,1,5} canonical realization (4,0,0), multiple roots split",
                   "(x+0.01)^4(x-1)^2", {"1", "-1.96", "0.9206", "0.038804", "0.00059201", "0.00000398", "1e-8"},
                   {1, 1, 5}, {4, 0, 0}));
  v.push_back(make("s214-301", "Σ_{2,1,4} canonical realization (3,0,1), multiple roots split",
                   "(x+0.01)^3(x-1)^2(x+4)", {"1", "2.03", "-6.9397", "3.790601", "0.117902", "0.001193", "0.000004"},
                   {2, 1, 4}, {3, 0, 1}));
  v.push_back(make("s313-202", "Σ_{3,1,3} canonical realization (2,0,2), multiple roots split",
                   "(x+0.01)^2(x-1)^2(x+4)^2", {"1", "6.02", "1.1201", "-23.9794", "15.5201", "0.3176", "0.0016"},
                   {3, 1, 3}, {2, 0, 2}));

  v.push_back(make("s241-022", "Σ_{2,4,1} realized in case (0,2,2)", "(x-0.001)(x+0.3)(x+0.4)(x-1)(x+1.01)(x+1.02)",
                   {"1", "1.729", "-0.16053", "-1.6063012", "-0.83950954", "-0.122782884", "0.000123624"}, {2, 4, 1},
                   {0, 2, 2}));
  v.push_back(make("s241-031", "Σ_{2,4,1} realized in case (0,3,1)", "(x-0.001)(x+0.3)(x+0.4)(x+1)(x-1.01)(x+1.02)",
                   {"1", "1.709", "-0.19491", "-1.6229468", "-0.84194086", "-0.122780436", "0.000123624"}, {2, 4, 1},
                   {0, 3, 1}));
  v.push_back(make("s241-040", "Σ_{2,4,1} realized in case (0,4,0)", "(x-0.001)(x+0.3)(x+0.4)(x+1)(x+1.01)(x-1.02)",
                   {"1", "1.689", "-0.22889", "-1.6393128", "-0.84432446", "-0.122778036", "0.000123624"}, {2, 4, 1},
                   {0, 4, 0}));

  v.push_back(make("s331-103", "Σ_{3,3,1} realized in case (1,0,3)", "(x+0.98)(x-0.99)(x-1)(x+2.05)(x+2.1)(x+40)",
                   {"1", "43.14", "124.7533", "-41.23068", "-294.614531", "-0.116529", "167.06844"}, {3, 3, 1},
                   {1, 0, 3}));
  v.push_back(make("s331-004", "Σ_{3,3,1} realized in case (0,0,4)", "(x-0.1)(x-9)(x+9.6)(x+9.7)(x+9.8)(x+9.9)",
                   {"1", "29.9", "216.35", "-1448.135", "-24185.4276", "-78877.71684", "8131.05216"}, {3, 3, 1},
                   {0, 0, 4}));
  v.push_back(make("s331-013", "Σ_{3,3,1} realized in case (0,1,3)", "(x-0.1)(x+0.99)(x-1)(x+1.01)(x+1.02)(x+40)",
                   {"1", "41.92", "76.6179", "-9.305992", "-81.6975778", "-32.6139222", "4.079592"}, {3, 3, 1},
                   {0, 1, 3}));
  v.push_back(make("s331-022", "Σ_{3,3,1} realized in case (0,2,2)", "(x-0.1)(x+0.99)(x+0.995)(x-1)(x+1.02)(x+40)",
                   {"1", "41.905", "76.00425", "-9.835474", "-81.0232111", "-32.0695689", "4.019004"}, {3, 3, 1},
                   {0, 2, 2}));
  v.push_back(make("s331-031", "Σ_{3,3,1} realized in case (0,3,1)", "(x-0.1)(x+0.99)(x+0.995)(x+0.999)(x-1)(x+40)",
                   {"1", "41.884", "75.145665", "-10.55580655", "-80.08192694", "-31.3281913", "3.9362598"}, {3, 3, 1},
                   {0, 3, 1}));
  v.push_back(make("s331-040", "Σ_{3,3,1} realized in case (0,4,0)", "(x-0.1)(x+9.6)(x+9.7)(x+9.8)(x+9.9)(x-10)",
                   {"1", "28.9", "177.45", "-2014.585", "-27835.3426", "-87541.52424", "9034.5024"}, {3, 3, 1},
                   {0, 4, 0}));

  v.push_back(make("s421-103", "Σ_{4,2,1} realized in case (1,0,3)", "(x+1)(x-1.5)(x-1.6)(x+10)(x+11)(x+12)",
                   {"1", "30.9", "292", "539.1", "-2946.2", "-55.2", "3168"}, {4, 2, 1}, {1, 0, 3}));
  v.push_back(make("s421-004", "Σ_{4,2,1} realized in case (0,0,4)", "(x-1)(x-4)(x+5)(x+6)(x+100)(x+101)",
                   {"1", "207", "11285", "56273", "-233286", "-1046480", "1212000"}, {4, 2, 1}, {0, 0, 4}));
  v.push_back(make("s421-013", "Σ_{4,2,1} realized in case (0,1,3)", "(x-1)(x+2)(x-4)(x+5)(x+100)(x+101)",
                   {"1", "203", "10481", "15957", "-216482", "-214160", "404000"}, {4, 2, 1}, {0, 1, 3}));
  v.push_back(make("s421-022", "Σ_{4,2,1} realized in case (0,2,2)", "(x-1)(x+2.1)(x+3)(x-4)(x+1000)(x+1001)",
                   {"1", "2001.1", "1.0011849e6", "69673.7", "-1.52373859e7", "-1.10606748e7", "2.52252e7"}, {4, 2, 1},
                   {0, 2, 2}));

  v.push_back(make("s232-103", "Σ_{2,3,2} realized in case (1,0,3)", "(x+0.01)(x-0.1)(x-1)(x+1.01)(x+1.02)(x+1.03)",
                   {"1", "1.97", "-0.1253", "-2.067553", "-0.87576764", "0.097559534", "0.001061106"}, {2, 3, 2},
                   {1, 0, 3}));
  v.push_back(make("s232-112", "Σ_{2,3,2} realized in case (1,1,2)", "(x+0.01)(x-0.1)(x+0.99)(x-1)(x+1.02)(x+1.03)",
                   {"1", "1.95", "-0.1445", "-2.045655", "-0.85653356", "0.095648466", "0.001040094"}, {2, 3, 2},
                   {1, 1, 2}));
  v.push_back(make("s232-121", "Σ_{2,3,2} realized in case (1,2,1)", "(x+0.01)(x-0.1)(x+0.98)(x+0.99)(x-1)(x+1.03)",
                   {"1", "1.91", "-0.1817", "-2.001931", "-0.81930584", "0.091937534", "0.000999306"}, {2, 3, 2},
                   {1, 2, 1}));
  v.push_back(make("s232-130", "Σ_{2,3,2} realized in case (1,3,0)", "(x+0.01)(x-0.1)(x+0.97)(x+0.98)(x+0.99)(x-1)",
                   {"1", "1.85", "-0.2345", "-1.936645", "-0.76643456", "0.086638466", "0.000941094"}, {2, 3, 2},
                   {1, 3, 0}));
  v.push_back(make("s232-022", "Σ_{2,3,2} realized in case (0,2,2)", "(x-1)(x+1.1)(x+2)(x-2.1)(x+2.2)(x+2.3)",
                   {"1", "4.5", "-0.25", "-24.205", "-23.6436", "19.2214", "23.3772"}, {2, 3, 2}, {0, 2, 2}));
  v.push_back(make("s232-013", "Σ_{2,3,2} realized in case (0,1,3)", "(x-1)(x+1.1)(x-2)(x+2.05)(x+2.1)(x+2.15)",
                   {"1", "4.4", "-0.0425", "-21.8665", "-20.921675", "17.068025", "20.36265"}, {2, 3, 2}, {0, 1, 3}));
  v.push_back(make("s232-040", "Σ_{2,3,2} realized in case (0,4,0)", "(x-1)(x+2.9)(x+3)(x+3.1)(x+3.2)(x-8)",
                   {"1", "3.2", "-46.01", "-291.172", "-487.418", "129.968", "690.432"}, {2, 3, 2}, {0, 4, 0}));
  v.push_back(make("s232-202", "Σ_{2,3,2} realized in case (2,0,2)", "(x+0.8)(x+0.9)(x-1)(x-5)(x+5.1)(x+5.2)",
                   {"1", "6", "-22.25", "-156", "-72.1556", "147.9336", "95.472"}, {2, 3, 2}, {2, 0, 2}));
  v.push_back(make("s232-004", "Σ_{2,3,2} realized in case (0,0,4)", "(x-1)(x-1.001)(x+1.002)(x+1.01)(x+1.02)(x+1.1)",
                   {"1", "2.131", "-0.867672", "-4.26624106", "-1.268949846", "2.135240980", "1.136621926"}, {2, 3, 2},
                   {0, 0, 4}));

  v.push_back(make("s322-040", "Σ_{3,2,2} realized in case (0,4,0)", "(x-1)(x+1.9)(x+1.91)(x+1.92)(x+2)(x-2.1)",
                   {"1", "4.63", "0.5412", "-24.36394", "-28.469668", "17.398152", "29.264256"}, {3, 2, 2}, {0, 4, 0}));

  v.push_back(make("d7-s323-050", "degree 7, Σ_{3,2,3} realized in case (0,5,0) (b = 5 with n = 2)",
                   "(x-0.9)(x+0.98)(x+0.99)(x+1)(x+1.01)(x+1.02)(x-1.1)",
                   {"1", "3", "0.9895", "-5.0505", "-5.09899496", "0.90101496", "2.94951496", "0.9895050396"},
                   {3, 2, 3}, {0, 5, 0}));
  return v;
}

// Number of digits after the decimal point in a printed literal, adjusted
// by its exponent; nullopt for fractions.
std::optional<int> printed_decimals(const std::string& s) {
  if (s.find('/') != std::string::npos) return std::nullopt;
  int frac = 0;
  auto dot = s.find('.');
  auto e = s.find_first_of("eE");
  std::size_t mant_end = e == std::string::npos ? s.size() : e;
  if (dot != std::string::npos && dot < mant_end) frac = static_cast<int>(mant_end - dot - 1);
  int exponent = e == std::string::npos ? 0 : std::stoi(s.substr(e + 1));
  return frac - exponent;
}

std::optional<SignPattern> try_sign_pattern(const Polynomial& p) {
  try {
    return sign_pattern(p);
  } catch (const ZeroCoefficient&) {
    return std::nullopt;
  }
}

}  // namespace

const std::vector<Certificate>& builtin_certificates() {
  static const std::vector<Certificate> inventory = build_inventory();
  return inventory;
}

const Certificate& builtin_certificate(const std::string& id) {
  for (const auto& c : builtin_certificates()) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("unknown certificate id '" + id + "'");
}

CertificateReport verify_certificate(const Certificate& cert) {
  CertificateReport rep;
  rep.id = cert.id;
  Polynomial exact = cert.exact_expansion();
  int d = cert.degree();
  bool precision_ok = true;
  if (static_cast<int>(cert.printed.size()) != d + 1) {
    rep.detail = "printed coefficient count does not match the degree";
    precision_ok = false;
    for (int j = 0; j <= d; ++j) rep.mismatched_powers.push_back(j);
  } else {
    for (int j = d; j >= 0; --j) {
      const std::string& s = cert.printed[static_cast<std::size_t>(d - j)];
      Rational printed;
      try {
        printed = parse_rational(s);
      } catch (const std::invalid_argument&) {
        rep.mismatched_powers.push_back(j);
        precision_ok = false;
        continue;
      }
      if (printed == exact[j]) continue;
      rep.mismatched_powers.push_back(j);
      auto decimals = printed_decimals(s);
      if (!decimals || abs(printed - exact[j]) > pow10(-*decimals) / 2) precision_ok = false;
    }
  }
  rep.expansion_match = rep.mismatched_powers.empty();
  rep.printed_precision_match = precision_ok;

  auto sp_exact = try_sign_pattern(exact);
  auto sp_printed = try_sign_pattern(cert.printed_polynomial());
  rep.sp_match = sp_exact && sp_printed && *sp_exact == cert.claimed_sp && *sp_printed == cert.claimed_sp;

  if (!cert.has_multiple_roots()) {
    RootConfiguration rc(cert.roots);
    try {
      rep.case_match = case_of(rc) == cert.claimed_case;
    } catch (const ModulusTie&) {
      rep.case_match = false;
      rep.detail = "modulus tie in the factored form";
    }
    rep.generic_roots = rc;
    return rep;
  }

  // Split the multiple roots and look for an eps keeping the sign pattern.
  Rational eps(1, 1000);
  for (int attempt = 0; attempt < 60; ++attempt, eps /= 2) {
    std::vector<Rational> split = split_multiple_roots(cert.roots, eps);
    if (std::any_of(split.begin(), split.end(), [](const Rational& r) { return r == 0; })) continue;
    RootConfiguration rc(split);
    if (!rc.has_distinct_moduli()) continue;
    auto sp = try_sign_pattern(rc.expand());
    if (!sp || *sp != cert.claimed_sp) continue;
    // Root signs must be preserved by the split.
    if (rc.positive_count() != RootConfiguration(cert.roots).positive_count()) continue;
    rep.split_epsilon = eps;
    rep.generic_roots = rc;
    rep.case_match = case_of(rc) == cert.claimed_case;
    return rep;
  }
  rep.case_match = false;
  rep.detail = "no splitting parameter preserved the sign pattern";
  return rep;
}

Certificate pad_witness(const Certificate& base, std::vector<Rational> mu_eps, std::vector<Rational> nu_eps,
                        int max_halvings) {
  const Rational bound(1, 1000);
  for (const auto* list : {&mu_eps, &nu_eps}) {
    for (const auto& e : *list) {
      if (e <= 0 || e > bound) throw std::invalid_argument("pad_witness: each epsilon must lie in (0, 1/1000]");
    }
  }
  if (base.has_multiple_roots()) throw std::invalid_argument("pad_witness: base must have simple roots");
  auto blocks = base.claimed_sp.blocks();
  int mu = static_cast<int>(mu_eps.size());
  int nu = static_cast<int>(nu_eps.size());

  // Predicted pattern: mu extra leading pluses, nu copies of the last sign.
  std::vector<bool> pred;
  pred.insert(pred.end(), static_cast<std::size_t>(mu), true);
  for (int i = 0; i < base.claimed_sp.size(); ++i) pred.push_back(base.claimed_sp.is_plus(i));
  bool last = base.claimed_sp.is_plus(base.claimed_sp.size() - 1);
  pred.insert(pred.end(), static_cast<std::size_t>(nu), last);
  SignPattern predicted_sp(pred);
  InterleavingCase predicted_case = base.claimed_case;
  predicted_case.gaps.front() += nu;
  predicted_case.gaps.back() += mu;

  for (int attempt = 0; attempt <= max_halvings; ++attempt) {
    Certificate out;
    out.roots = base.roots;
    out.factored = base.factored;
    for (const auto& e : mu_eps) {
      out.roots.push_back(-1 / e);
      out.factored += "(1+" + to_exact_string(e) + "x)";
    }
    for (const auto& e : nu_eps) {
      out.roots.push_back(-e);
      out.factored += "(x+" + to_exact_string(e) + ")";
    }
    Polynomial p = expand_from_roots(out.roots);
    for (int j = p.degree(); j >= 0; --j) out.printed.push_back(to_exact_string(p[j]));
    out.claimed_sp = predicted_sp;
    out.claimed_case = predicted_case;
    out.id = base.id + "+pad(" + std::to_string(mu) + "," + std::to_string(nu) + ")";
    out.anchor = "padding of " + base.id + " by " + std::to_string(mu) + " large and " + std::to_string(nu) +
                 " small negative roots";
    auto rep = verify_certificate(out);
    if (rep.all_pass()) return out;
    for (auto& e : mu_eps) e /= 2;
    for (auto& e : nu_eps) e /= 2;
  }
  throw PredictionFailed("padding of " + base.id + " did not realize " + predicted_sp.to_string() + " in case " +
                         predicted_case.to_string());
}

Certificate pad_witness(const Certificate& base, int mu_count, int nu_count, const Rational& eps) {
  std::vector<Rational> mu;
  std::vector<Rational> nu;
  Rational e = eps;
  for (int i = 0; i < mu_count; ++i, e /= 2) mu.push_back(e);
  e = eps;
  for (int i = 0; i < nu_count; ++i, e /= 2) nu.push_back(e);
  return pad_witness(base, std::move(mu), std::move(nu));
}

}  // namespace hypsign
