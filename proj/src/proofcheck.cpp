#include "hypsign/proofcheck.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hypsign/search.hpp"

namespace hypsign {

namespace {

constexpr std::uint64_t kChunk = 1024;
constexpr std::size_t kMaxCounterexamples = 10;

Rational q(const char* text) { return parse_rational(text); }

ParametricFamily family(std::string id, std::string name, std::string anchor, std::string factored,
                        std::vector<std::string> params, int target, std::string region, int claimed_sign,
                        std::map<std::string, Rational> witness) {
  ParametricFamily f;
  f.id = std::move(id);
  f.name = std::move(name);
  f.anchor = std::move(anchor);
  f.factored = std::move(factored);
  f.params = std::move(params);
  f.target = target;
  f.region = std::move(region);
  f.claimed_sign = claimed_sign;
  f.witness = std::move(witness);
  return f;
}

std::vector<ParametricFamily> make_families() {
  std::vector<ParametricFamily> out;

  auto f = family("F", "F", "Sigma_{2,4,1} case (0,1,3), after the coefficient of x vanishes",
                  "(x+g)^2(x^2-1)(x+B)(x-A)", {"g", "A", "B"}, 4, "1<A<B", +1, {{"A", q("2")}, {"B", q("3")}});
  f.constraint = Constraint{"g", 1, "2AB", "B-A"};
  out.push_back(f);

  out.push_back(family("T", "T", "Sigma_{2,4,1} case (0,1,3), constant term of R_r vanishing",
                       "(x+1)^2(x-1)(x+g)(x+h)", {"g", "h"}, 3, "1<g; 0<h<1", +1,
                       {{"g", q("2")}, {"h", q("1/2")}}));
  out.push_back(family("K", "K", "Sigma_{4,2,1} case (0,3,1), events A and D",
                       "(x+1)^2(x^2-g^2)(x+B)(x-A)", {"g", "A", "B"}, 3, "0<g<1; 1<A<B", -1,
                       {{"g", q("1/2")}, {"A", q("2")}, {"B", q("3")}}));
  out.push_back(family("K-BD", "(x+1)^2(x^2-A^2)(x-h)(x+g)", "Sigma_{4,2,1} case (0,3,1), events B and D",
                       "(x+1)^2(x^2-A^2)(x-h)(x+g)", {"g", "h", "A"}, 3, "1<A; 0<g<1; 0<h<1", -1,
                       {{"g", q("1/2")}, {"h", q("1/3")}, {"A", q("2")}}));
  out.push_back(family("G-E", "G", "Sigma_{4,2,1} case (0,3,1), events C and E",
                       "(x+1)^2(x-1)(x+g)(x+h)(x-k)", {"g", "h", "k"}, 3, "0<k<h<g<1", -1,
                       {{"g", q("3/4")}, {"h", q("1/2")}, {"k", q("1/4")}}));
  out.push_back(family("G-D", "G", "Sigma_{4,2,1} case (0,3,1), events C and D",
                       "(x+1)^2(x-1)(x+g)(x+h)(x-k)", {"g", "h", "k"}, 3, "1<g; 0<k<h<1", -1,
                       {{"g", q("2")}, {"h", q("1/2")}, {"k", q("1/4")}}));
  out.push_back(family("S322-130-AB", "(x+B)(x+1)^2(x^2-g^2)(x-A)", "Sigma_{3,2,2} case (1,3,0), events A and B",
                       "(x+B)(x+1)^2(x^2-g^2)(x-A)", {"g", "A", "B"}, 4, "0<g<1; 1<B<A", -1,
                       {{"g", q("1/2")}, {"B", q("2")}, {"A", q("3")}}));
  out.push_back(family("S322-130-BC", "Q_{v_0}", "Sigma_{3,2,2} case (1,3,0), events B and C",
                       "(x+1)^3(x+g)(x-h)(x-A)", {"g", "h", "A"}, 4, "0<g<h<1; 1<A", -1,
                       {{"g", q("1/4")}, {"h", q("1/2")}, {"A", q("2")}}));
  out.push_back(family("W-AB", "W", "Sigma_{3,2,2} case (2,2,0), events A and B",
                       "(x+1)^2(x-1)(x+g)(x+B)(x-A)", {"g", "A", "B"}, 4, "0<g<1; 1<B<A", -1,
                       {{"g", q("1/2")}, {"B", q("2")}, {"A", q("3")}}));
  out.push_back(family("W-AD", "W", "Sigma_{3,2,2} case (2,2,0), events A and D",
                       "(x+1)^2(x-1)(x+g)(x+B)(x-A)", {"g", "A", "B"}, 4, "1<g<B<A", -1,
                       {{"g", q("2")}, {"B", q("3")}, {"A", q("4")}}));
  out.push_back(family("S322-310-AD", "(x^2-1)(x+g)^2(x+B)(x-A)", "Sigma_{3,2,2} case (3,1,0), events A and D",
                       "(x^2-1)(x+g)^2(x+B)(x-A)", {"g", "A", "B"}, 4, "0<g<1; 1<B<A", -1,
                       {{"g", q("1/2")}, {"B", q("2")}, {"A", q("3")}}));
  out.push_back(family("S322-310-BD", "(x+1)^3(x-g)(x+B)(x-A)", "Sigma_{3,2,2} case (3,1,0), events B and D",
                       "(x+1)^3(x-g)(x+B)(x-A)", {"g", "A", "B"}, 4, "1<g<B<A", -1,
                       {{"g", q("2")}, {"B", q("3")}, {"A", q("4")}}));
  out.push_back(family("S322-310-BE", "(x+1)^2(x^2-B^2)(x+h)(x-A)", "Sigma_{3,2,2} case (3,1,0), events B and E",
                       "(x+1)^2(x^2-B^2)(x+h)(x-A)", {"h", "A", "B"}, 4, "0<h<1<B<A", -1,
                       {{"h", q("1/2")}, {"B", q("2")}, {"A", q("3")}}));
  return out;
}

IdentityClaim identity(std::string id, std::string family_id, std::string anchor, int power, std::string formula,
                       std::string denominator = "1", bool after_constraint = false) {
  IdentityClaim c;
  c.id = std::move(id);
  c.family_id = std::move(family_id);
  c.anchor = std::move(anchor);
  c.power = power;
  c.formula = std::move(formula);
  c.denominator = std::move(denominator);
  c.after_constraint = after_constraint;
  return c;
}

std::vector<IdentityClaim> make_identities() {
  return {
      identity("F1", "F", "coefficient of x in F", 1, "g(-gB+gA+2AB)"),
      identity("F4*", "F", "coefficient of x^4 in F at g = 2AB/(B-A)", 4,
               "-2A^2B^2-B^2+2AB-A^2+3AB^3+3A^3B", "(-B+A)^2", true),
      identity("T3", "T", "coefficient of x^3 in T", 3, "-1+g+h+gh"),
      identity("K3", "K", "coefficient of x^3 in K", 3, "-2g^2+g^2A-A-Bg^2+B-2AB"),
      identity("K-BD3", "K-BD", "coefficient of x^3 in (x+1)^2(x^2-A^2)(x-h)(x+g)", 3,
               "-2A^2-A^2g+g+hA^2-h-2gh"),
      identity("G3", "G-E", "coefficient of x^3 in G", 3, "-1-g-h+gh+k-kg-kh-ghk"),
      identity("S322-130-AB4", "S322-130-AB", "coefficient of x^4 in (x+B)(x+1)^2(x^2-g^2)(x-A)", 4,
               "2(B-A)+(1-AB)-g^2"),
      identity("S322-130-BC4", "S322-130-BC", "coefficient of x^4 in (x+1)^3(x+g)(x-h)(x-A)", 4,
               "3+3g-3h-gh-(3+g-h)A"),
      identity("W4", "W-AB", "coefficient of x^4 in W", 4, "-1+g+B+gB-A-Ag-AB"),
      identity("S322-310-AD4", "S322-310-AD", "coefficient of x^4 in (x^2-1)(x+g)^2(x+B)(x-A)", 4,
               "-1+g^2+2gB-2Ag-BA"),
      identity("S322-310-BD4", "S322-310-BD", "coefficient of x^4 in (x+1)^3(x-g)(x+B)(x-A)", 4,
               "3-3g+3B-gB-3A+Ag-AB"),
      identity("S322-310-BE4", "S322-310-BE", "coefficient of x^4 in (x+1)^2(x^2-B^2)(x+h)(x-A)", 4,
               "1-B^2+2h-2A-Ah"),
  };
}

struct ChainItem {
  bool is_const = false;
  Rational value;
  std::string var;
};

std::vector<std::vector<ChainItem>> parse_region(const std::string& region) {
  std::vector<std::vector<ChainItem>> chains;
  std::size_t start = 0;
  while (start <= region.size()) {
    std::size_t end = region.find(';', start);
    if (end == std::string::npos) end = region.size();
    std::string chain = region.substr(start, end - start);
    std::vector<ChainItem> items;
    std::size_t s = 0;
    while (s <= chain.size()) {
      std::size_t e = chain.find('<', s);
      if (e == std::string::npos) e = chain.size();
      std::string tok = chain.substr(s, e - s);
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }),
                tok.end());
      if (tok.empty()) throw std::invalid_argument("empty term in region '" + region + "'");
      ChainItem item;
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        if (tok.size() != 1) throw std::invalid_argument("region variables are single letters: '" + tok + "'");
        item.var = tok;
      } else {
        item.is_const = true;
        item.value = parse_rational(tok);
      }
      items.push_back(std::move(item));
      s = e + 1;
    }
    if (items.size() < 2) throw std::invalid_argument("region chain needs an inequality: '" + chain + "'");
    if (!items.front().is_const) throw std::invalid_argument("region chain must start with a constant: '" + chain + "'");
    chains.push_back(std::move(items));
    start = end + 1;
  }
  return chains;
}

Rational random_fraction(Rng& rng) {
  std::uint64_t k = 0;
  while (k == 0) k = rng.next() >> 32;
  return Rational(Integer(static_cast<unsigned long>(k)), Integer(1) << 32);
}

std::map<std::string, Rational> draw_region(const std::vector<std::vector<ChainItem>>& chains, Rng& rng) {
  std::map<std::string, Rational> point;
  for (const auto& items : chains) {
    std::size_t i = 0;
    while (i + 1 < items.size()) {
      Rational lo = items[i].is_const ? items[i].value : point.at(items[i].var);
      std::size_t j = i + 1;
      std::vector<std::string> run;
      while (j < items.size() && !items[j].is_const) run.push_back(items[j++].var);
      if (j < items.size()) {
        const Rational& hi = items[j].value;
        std::vector<Rational> us;
        for (std::size_t r = 0; r < run.size(); ++r) us.push_back(lo + (hi - lo) * random_fraction(rng));
        std::sort(us.begin(), us.end());
        for (std::size_t r = 0; r < run.size(); ++r) point[run[r]] = us[r];
      } else {
        Rational cur = lo;
        for (const auto& v : run) {
          cur += round_to_digits(std::pow(10.0, rng.uniform(-6.0, 6.0)), 8);
          point[v] = cur;
        }
      }
      i = j < items.size() ? j : items.size() - 1;
    }
  }
  return point;
}

bool region_holds(const std::vector<std::vector<ChainItem>>& chains, const std::map<std::string, Rational>& point) {
  auto value = [&](const ChainItem& it) -> Rational {
    if (it.is_const) return it.value;
    auto f = point.find(it.var);
    if (f == point.end()) throw std::invalid_argument("point lacks a value for '" + it.var + "'");
    return f->second;
  };
  for (const auto& items : chains)
    for (std::size_t i = 0; i + 1 < items.size(); ++i)
      if (!(value(items[i]) < value(items[i + 1]))) return false;
  return true;
}

std::map<std::string, Rational> with_constraint(const ParametricFamily& fam, std::map<std::string, Rational> point) {
  if (!fam.constraint) return point;
  const Constraint& c = *fam.constraint;
  Rational den = MultiPoly::parse(c.denominator).evaluate(point);
  if (den == 0) throw std::domain_error("constraint denominator vanishes");
  point[c.var] = MultiPoly::parse(c.numerator).evaluate(point) / den;
  return point;
}

}  // namespace

const std::vector<ParametricFamily>& builtin_families() {
  static const std::vector<ParametricFamily> families = make_families();
  return families;
}

const ParametricFamily& builtin_family(const std::string& id) {
  for (const auto& f : builtin_families())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown family '" + id + "'");
}

const std::vector<IdentityClaim>& builtin_identities() {
  static const std::vector<IdentityClaim> claims = make_identities();
  return claims;
}

std::vector<MultiPoly> expand_family(const ParametricFamily& fam) {
  MultiPoly p = MultiPoly::parse(fam.factored);
  int d = p.degree_in("x");
  std::vector<MultiPoly> out;
  for (int k = 0; k <= d; ++k) out.push_back(p.coefficient("x", k));
  return out;
}

bool check_identity(const ParametricFamily& fam, int k, const MultiPoly& formula) {
  auto coeffs = expand_family(fam);
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return formula.is_zero();
  return coeffs[k] == formula;
}

bool check_identity(const IdentityClaim& claim) {
  const ParametricFamily& fam = builtin_family(claim.family_id);
  MultiPoly num = MultiPoly::parse(claim.formula);
  MultiPoly den = MultiPoly::parse(claim.denominator);
  if (claim.after_constraint) {
    ParametricFamily at_power = fam;
    at_power.target = claim.power;
    RationalFunction rf = substitute_constraint(at_power);
    return rf.numerator * den == num * rf.denominator;
  }
  auto coeffs = expand_family(fam);
  if (claim.power < 0 || claim.power >= static_cast<int>(coeffs.size())) return num.is_zero();
  return coeffs[claim.power] * den == num;
}

RationalFunction substitute_constraint(const ParametricFamily& fam) {
  if (!fam.constraint) throw std::invalid_argument("family '" + fam.id + "' has no constraint");
  const Constraint& c = *fam.constraint;
  MultiPoly coeff = expand_family(fam).at(fam.target);
  MultiPoly n = MultiPoly::parse(c.numerator);
  MultiPoly dn = MultiPoly::parse(c.denominator);
  int m = coeff.degree_in(c.var);
  RationalFunction out;
  for (int k = 0; k <= m; ++k) out.numerator += coeff.coefficient(c.var, k) * n.pow(k) * dn.pow(m - k);
  out.denominator = dn.pow(m);
  return out;
}

Rational target_value(const ParametricFamily& fam, const std::map<std::string, Rational>& point) {
  auto full = with_constraint(fam, point);
  return expand_family(fam).at(fam.target).evaluate(full);
}

std::map<std::string, Rational> sample_region(const std::string& region, Rng& rng) {
  auto chains = parse_region(region);
  for (;;) {
    auto p = draw_region(chains, rng);
    if (region_holds(chains, p)) return p;
  }
}

bool in_region(const std::string& region, const std::map<std::string, Rational>& point) {
  return region_holds(parse_region(region), point);
}

SignReport sign_sample(const ParametricFamily& fam, std::uint64_t n, std::uint64_t seed,
                       const std::optional<std::string>& region_override, unsigned workers) {
  SignReport rep;
  rep.family_id = fam.id;
  rep.region = region_override.value_or(fam.region);
  auto chains = parse_region(rep.region);
  MultiPoly coeff = expand_family(fam).at(fam.target);

  auto classify = [&](const std::map<std::string, Rational>& point, SignReport& into) {
    int s = sign(coeff.evaluate(with_constraint(fam, point)));
    ++into.samples;
    if (s == fam.claimed_sign) {
      ++into.agree;
      return;
    }
    if (s == 0)
      ++into.zero;
    else
      ++into.disagree;
    if (into.counterexamples.size() < kMaxCounterexamples) into.counterexamples.push_back(point);
  };

  if (n == 0) return rep;
  bool witness_ok = region_holds(chains, fam.witness);
  if (witness_ok) {
    classify(fam.witness, rep);
    rep.witness_agrees = rep.agree == 1;
  }
  std::uint64_t random_count = witness_ok ? n - 1 : n;
  std::uint64_t chunks = (random_count + kChunk - 1) / kChunk;
  std::string key = "proofcheck|" + fam.id;
  std::vector<SignReport> parts(chunks);
  auto run_chunk = [&](std::uint64_t ch) {
    Rng rng(derive_seed(seed, key, ch));
    std::uint64_t begin = ch * kChunk;
    std::uint64_t end = std::min(random_count, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      std::map<std::string, Rational> p;
      do p = draw_region(chains, rng);
      while (!region_holds(chains, p));
      classify(p, parts[ch]);
    }
  };
  unsigned w = std::max(1u, workers);
  for (std::uint64_t wave = 0; wave < chunks; wave += w) {
    std::uint64_t top = std::min<std::uint64_t>(chunks, wave + w);
    if (top - wave == 1) {
      run_chunk(wave);
      continue;
    }
    std::vector<std::thread> threads;
    for (std::uint64_t ch = wave; ch < top; ++ch) threads.emplace_back(run_chunk, ch);
    for (auto& t : threads) t.join();
  }
  for (auto& part : parts) {
    rep.samples += part.samples;
    rep.agree += part.agree;
    rep.zero += part.zero;
    rep.disagree += part.disagree;
    for (auto& p : part.counterexamples)
      if (rep.counterexamples.size() < kMaxCounterexamples) rep.counterexamples.push_back(std::move(p));
  }
  return rep;
}

bool constraint_consistent(const ParametricFamily& fam, int n, std::uint64_t seed) {
  if (!fam.constraint) throw std::invalid_argument("family '" + fam.id + "' has no constraint");
  auto chains = parse_region(fam.region);
  auto coeffs = expand_family(fam);
  RationalFunction rf = substitute_constraint(fam);
  Rng rng(derive_seed(seed, "constraint|" + fam.id, 0));
  for (int i = 0; i < n; ++i) {
    std::map<std::string, Rational> p;
    do p = draw_region(chains, rng);
    while (!region_holds(chains, p));
    auto full = with_constraint(fam, p);
    if (coeffs.at(fam.constraint->from_power).evaluate(full) != 0) return false;
    Rational den = rf.denominator.evaluate(p);
    if (den == 0 || rf.numerator.evaluate(p) / den != coeffs.at(fam.target).evaluate(full)) return false;
  }
  return true;
}

}  // namespace hypsign
