#pragma once

#include <optional>
#include <vector>

#include "hypsign/polynomial.hpp"

namespace hypsign {

/// Open interval (lo, hi) holding exactly one root of a squarefree
/// polynomial, with nonzero values of opposite sign at both ends; or the
/// degenerate interval [r, r] for an exact rational root r.
struct IsolatingInterval {
  Rational lo;
  Rational hi;

  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  double approx() const { return midpoint().get_d(); }
};

/// Sturm chain of the squarefree part of P: P, P', then negated remainders,
/// each rescaled by a positive constant to unit integer content.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p);

  const std::vector<Polynomial>& chain() const noexcept { return chain_; }
  /// Sign variations at x (zeros skipped).
  int variations_at(const Rational& x) const;
  int variations_at_neg_inf() const;
  int variations_at_pos_inf() const;
  /// Distinct real roots in the open interval (lo, hi); a missing bound
  /// stands for -inf / +inf. Endpoints may be roots.
  int count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const;

 private:
  std::vector<Polynomial> chain_;
};

/// P divided by gcd(P, P'), made primitive.
Polynomial squarefree_part(const Polynomial& p);
bool is_squarefree(const Polynomial& p);

/// Distinct real roots of P in (lo, hi).
int count_real_roots(const Polynomial& p, const std::optional<Rational>& lo = std::nullopt,
                     const std::optional<Rational>& hi = std::nullopt);

/// Real roots counted with multiplicity.
int count_real_roots_with_multiplicity(const Polynomial& p);

/// All roots real (counted with multiplicity, equal to the degree).
bool is_hyperbolic(const Polynomial& p);

/// Squarefree factors a_1, a_2, ... with P = lc * prod a_i^i (Yun).
/// Entry i-1 holds a_i; unit factors are kept as the constant 1.
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

/// Cauchy bound: every root has modulus strictly below it.
Rational root_bound(const Polynomial& p);

/// Sorted isolating intervals, one per real root; neighbours may share an
/// endpoint, which is then not a root.
/// Throws std::invalid_argument unless P is squarefree.
std::vector<IsolatingInterval> isolate_roots(const Polynomial& p);

/// Bisects an isolating interval for a root of odd multiplicity until its
/// width is at most `width`.
IsolatingInterval refine(const Polynomial& p, IsolatingInterval iv, const Rational& width);

/// Midpoint of the refined interval.
Rational refine_root(const Polynomial& p, const IsolatingInterval& iv, const Rational& width);

struct RealRoot {
  IsolatingInterval interval;
  int multiplicity = 1;
  /// Squarefree factor of P that has this root as a simple root.
  Polynomial factor;
};

/// Real roots of P with multiplicities, sorted, with pairwise disjoint
/// intervals.
std::vector<RealRoot> real_roots_with_multiplicity(const Polynomial& p);

/// Sign of (x - y) for two real algebraic numbers given by isolating
/// intervals of roots of simple-root polynomials px and py. Returns 0 only
/// when equality is proven (shared exact value or gcd-certified common root).
int compare_roots(const Polynomial& px, IsolatingInterval x, const Polynomial& py, IsolatingInterval y);

/// The rational with the smallest denominator (then numerator modulus) in
/// the closed interval [lo, hi].
Rational simplest_rational(const Rational& lo, const Rational& hi);

/// Refines an isolating interval of a squarefree p and returns the exact
/// interval [r, r] when the root is a rational r with moderate height,
/// otherwise an interval of width at most `width`.
IsolatingInterval exact_or_refined(const Polynomial& p, IsolatingInterval iv, const Rational& width);

/// Sign of q at the root isolated by iv (root simple for p).
int sign_at_root(const Polynomial& q, const Polynomial& p, IsolatingInterval iv);

}  // namespace hypsign
