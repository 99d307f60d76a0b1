#pragma once

#include <span>
#include <string>
#include <vector>

#include "hypsign/rational.hpp"

namespace hypsign {

/// Dense univariate polynomial over the rationals. Coefficient j multiplies
/// x^j. Trailing zeros are trimmed, so the zero polynomial has no
/// coefficients and degree -1.
///
/// The type itself places no sign constraint on the leading coefficient;
/// the operations that produce the polynomials studied here (expansion from
/// roots, reversion, rescaling) return monic results.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int power);
  /// Coefficients listed from x^d down to x^0, as decimal strings.
  static Polynomial from_descending_decimals(std::span<const std::string> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of x^j; zero outside the stored range.
  const Rational& operator[](int j) const;
  const Rational& leading() const;
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(int significant = 12) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Euclidean division; throws std::domain_error on a zero divisor.
DivMod divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Divides by the leading coefficient.
Polynomial monic(const Polynomial& p);

/// Positive rescaling to integer coefficients with unit content; keeps the
/// sign of every coefficient.
Polynomial primitive(const Polynomial& p);

/// Monic product of (x - r) over the given roots.
Polynomial expand_from_roots(std::span<const Rational> roots);

/// sgn(P(0)) * x^d * P(1/x) normalized to be monic. Roots are the
/// reciprocals of the roots of P. Throws std::domain_error if P(0) = 0.
Polynomial revert(const Polynomial& p);

/// Formal derivative.
Polynomial derivative(const Polynomial& p);

/// Monic-normalized P(c x) for c > 0; roots are divided by c.
/// Throws std::invalid_argument if c <= 0.
Polynomial scale_variable(const Polynomial& p, const Rational& c);

/// P(-x).
Polynomial reflect(const Polynomial& p);

/// Horner evaluation.
Rational evaluate(const Polynomial& p, const Rational& x);

/// Determinant of a square matrix (row-major) by exact elimination.
Rational determinant(std::vector<std::vector<Rational>> m);

/// Resultant via the Sylvester determinant. Constant inputs follow the
/// usual conventions (Res(a, c) = c^deg a); zero inputs give 0.
Rational resultant(const Polynomial& a, const Polynomial& b);

/// The unique polynomial of degree < n through (xs[i], ys[i]).
/// Throws std::invalid_argument on repeated nodes or size mismatch.
Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Sorted multiset of nonzero rational roots. Moduli may tie; the generic
/// setting (distinct moduli) is checked by has_distinct_moduli().
class RootConfiguration {
 public:
  RootConfiguration() = default;
  /// Throws std::invalid_argument if a root is zero or the list is empty.
  explicit RootConfiguration(std::vector<Rational> roots);

  std::span<const Rational> roots() const noexcept { return roots_; }
  int degree() const noexcept { return static_cast<int>(roots_.size()); }
  int positive_count() const;
  int negative_count() const;
  bool has_distinct_moduli() const;
  /// Root indices (into roots()) ordered by increasing modulus.
  std::vector<int> moduli_ranking() const;
  Polynomial expand() const { return expand_from_roots(roots_); }
  /// Reciprocal roots.
  RootConfiguration reciprocal() const;
  /// Roots divided by c > 0.
  RootConfiguration scaled(const Rational& c) const;

  friend bool operator==(const RootConfiguration&, const RootConfiguration&) = default;

 private:
  std::vector<Rational> roots_;
};

}  // namespace hypsign
