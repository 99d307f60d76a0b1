#include "hypsign/realroots.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypsign {

namespace {

int sign_variations(const std::vector<int>& signs) {
  int v = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p;
  Polynomial g = gcd(p, derivative(p));
  return primitive(divmod(p, g).quotient);
}

bool is_squarefree(const Polynomial& p) {
  if (p.degree() < 1) return true;
  return gcd(p, derivative(p)).degree() == 0;
}

SturmChain::SturmChain(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
  Polynomial a = squarefree_part(p);
  chain_.push_back(a);
  if (a.degree() < 1) return;
  chain_.push_back(primitive(derivative(a)));
  while (true) {
    Polynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    chain_.push_back(primitive(-r));
  }
}

int SturmChain::variations_at(const Rational& x) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& q : chain_) s.push_back(q.sign_at(x));
  return sign_variations(s);
}

int SturmChain::variations_at_pos_inf() const {
  std::vector<int> s;
  for (const auto& q : chain_) s.push_back(sgn(q.leading()));
  return sign_variations(s);
}

int SturmChain::variations_at_neg_inf() const {
  std::vector<int> s;
  for (const auto& q : chain_) s.push_back(q.degree() % 2 == 0 ? sgn(q.leading()) : -sgn(q.leading()));
  return sign_variations(s);
}

int SturmChain::count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
  if (lo && hi && *lo >= *hi) return 0;
  int vlo = lo ? variations_at(*lo) : variations_at_neg_inf();
  int vhi = hi ? variations_at(*hi) : variations_at_pos_inf();
  int at_hi = hi && chain_.front().sign_at(*hi) == 0 ? 1 : 0;
  return vlo - vhi - at_hi;
}

int count_real_roots(const Polynomial& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (p.degree() < 1) return 0;
  return SturmChain(p).count(lo, hi);
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  std::vector<Polynomial> out;
  if (p.degree() < 1) return out;
  Polynomial f = monic(p);
  Polynomial fp = derivative(f);
  Polynomial a = gcd(f, fp);
  Polynomial b = divmod(f, a).quotient;
  Polynomial c = divmod(fp, a).quotient;
  Polynomial d = c - derivative(b);
  while (b.degree() > 0) {
    Polynomial ai = gcd(b, d);
    out.push_back(ai);
    b = divmod(b, ai).quotient;
    c = divmod(d, ai).quotient;
    d = c - derivative(b);
  }
  return out;
}

int count_real_roots_with_multiplicity(const Polynomial& p) {
  auto parts = squarefree_decomposition(p);
  int total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) total += static_cast<int>(i + 1) * count_real_roots(parts[i]);
  return total;
}

bool is_hyperbolic(const Polynomial& p) {
  if (p.degree() < 1) return true;
  return count_real_roots_with_multiplicity(p) == p.degree();
}

Rational root_bound(const Polynomial& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m = 0;
  for (int j = 0; j < p.degree(); ++j) {
    Rational r = abs(p[j] / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<IsolatingInterval> isolate_roots(const Polynomial& p) {
  if (p.degree() < 1) return {};
  if (!is_squarefree(p)) throw std::invalid_argument("isolate_roots requires a squarefree polynomial");
  SturmChain sc(p);
  std::vector<IsolatingInterval> out;
  Rational b = root_bound(p);
  struct Work {
    Rational lo, hi;
  };
  std::vector<Work> stack{{-b, b}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    int n = sc.count(w.lo, w.hi);
    if (n == 0) continue;
    if (n == 1 && p.sign_at(w.lo) != 0 && p.sign_at(w.hi) != 0) {
      out.push_back({w.lo, w.hi});
      continue;
    }
    Rational mid = (w.lo + w.hi) / 2;
    if (p.sign_at(mid) == 0) out.push_back({mid, mid});
    stack.push_back({mid, w.hi});
    stack.push_back({w.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

IsolatingInterval refine(const Polynomial& p, IsolatingInterval iv, const Rational& width) {
  if (iv.is_exact()) return iv;
  int slo = p.sign_at(iv.lo);
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s = p.sign_at(mid);
    if (s == 0) return {mid, mid};
    if (s == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

Rational refine_root(const Polynomial& p, const IsolatingInterval& iv, const Rational& width) {
  return refine(p, iv, width).midpoint();
}

namespace {

bool overlap(const IsolatingInterval& a, const IsolatingInterval& b) { return !(a.hi < b.lo || b.hi < a.lo); }

// Halves a non-exact interval.
void bisect_once(const Polynomial& p, IsolatingInterval& iv) {
  if (iv.is_exact()) return;
  iv = refine(p, iv, iv.width() / 2);
}

}  // namespace

std::vector<RealRoot> real_roots_with_multiplicity(const Polynomial& p) {
  std::vector<RealRoot> out;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (auto& iv : isolate_roots(parts[i])) out.push_back({iv, static_cast<int>(i + 1), parts[i]});
  }
  // Factors are coprime, so overlapping intervals separate under refinement.
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.interval.lo < y.interval.lo; });
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (overlap(out[i].interval, out[i + 1].interval)) {
        bisect_once(out[i].factor, out[i].interval);
        bisect_once(out[i + 1].factor, out[i + 1].interval);
        changed = true;
      }
    }
  }
  return out;
}

namespace {

// Distinct roots of p in the closed interval [lo, hi].
int count_closed(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (lo == hi) return p.sign_at(lo) == 0 ? 1 : 0;
  return count_real_roots(p, lo, hi) + (p.sign_at(lo) == 0) + (p.sign_at(hi) == 0);
}

}  // namespace

int compare_roots(const Polynomial& px, IsolatingInterval x, const Polynomial& py, IsolatingInterval y) {
  if (x.is_exact() && y.is_exact()) return sgn(x.lo - y.lo);
  // Equality is only possible for a common root, i.e. a root of gcd(px, py)
  // lying in both intervals.
  Polynomial g = squarefree_part(gcd(px, py));
  bool both_common = g.degree() >= 1 && count_closed(g, x.lo, x.hi) > 0 && count_closed(g, y.lo, y.hi) > 0;
  for (int iter = 0; iter < 4000; ++iter) {
    if (x.hi < y.lo) return -1;
    if (y.hi < x.lo) return 1;
    if (x.is_exact() && y.is_exact()) return sgn(x.lo - y.lo);
    if (both_common && count_closed(g, std::min(x.lo, y.lo), std::max(x.hi, y.hi)) == 1) return 0;
    bisect_once(px, x);
    bisect_once(py, y);
  }
  throw std::runtime_error("compare_roots: intervals failed to separate");
}

namespace {

// Simplest rational in [lo, hi] for 0 <= lo <= hi (continued fractions).
Rational simplest_nonnegative(Rational lo, Rational hi) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational inner = simplest_nonnegative(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

}  // namespace

Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("simplest_rational: empty interval");
  if (lo <= 0 && hi >= 0) return 0;
  if (lo > 0) return simplest_nonnegative(lo, hi);
  return -simplest_nonnegative(-hi, -lo);
}

IsolatingInterval exact_or_refined(const Polynomial& p, IsolatingInterval iv, const Rational& width) {
  if (iv.is_exact()) return iv;
  // A rational root n/m of an integer polynomial has m dividing the leading
  // coefficient; width 1/lc^2 then pins it down as the simplest rational.
  Polynomial q = primitive(p);
  Rational lc = abs(q.leading());
  Rational pin = 1 / (4 * lc * lc);
  if (pin < width) {
    iv = refine(p, iv, pin);
  } else {
    iv = refine(p, iv, width);
  }
  if (iv.is_exact()) return iv;
  Rational r = simplest_rational(iv.lo, iv.hi);
  if (p.sign_at(r) == 0) return {r, r};
  return refine(p, iv, width);
}

int sign_at_root(const Polynomial& q, const Polynomial& p, IsolatingInterval iv) {
  if (iv.is_exact()) return q.sign_at(iv.lo);
  Polynomial g = gcd(q, p);
  if (g.degree() >= 1) {
    // q vanishes at the root iff g has a root in the interval.
    int inside = count_real_roots(g, iv.lo, iv.hi);
    if (inside > 0) return 0;
  }
  for (int iter = 0; iter < 4000; ++iter) {
    if (count_real_roots(q, iv.lo, iv.hi) == 0 && q.sign_at(iv.lo) != 0 && q.sign_at(iv.hi) != 0) return q.sign_at(iv.lo);
    iv = refine(p, iv, iv.width() / 2);
    if (iv.is_exact()) return q.sign_at(iv.lo);
  }
  throw std::runtime_error("sign_at_root: refinement did not converge");
}

}  // namespace hypsign
