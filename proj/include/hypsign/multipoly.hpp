#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hypsign/rational.hpp"

namespace hypsign {

/// Variable name to exponent; zero exponents are never stored.
using Monomial = std::map<std::string, int>;

/// Sparse multivariate polynomial over the rationals. Terms are kept in the
/// canonical order of their monomials and zero terms are dropped.
class MultiPoly {
 public:
  MultiPoly() = default;
  static MultiPoly constant(const Rational& c);
  static MultiPoly variable(const std::string& name);

  /// Parses sums of products with integer powers and implicit
  /// multiplication, e.g. "(x+g)^2(x^2-1)(x+B)(x-A)" or "-2A^2B^2+3AB^3".
  /// Every letter is a separate variable. Throws std::invalid_argument.
  static MultiPoly parse(std::string_view text);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  int degree_in(const std::string& var) const;

  /// Coefficient of var^k as a polynomial in the remaining variables.
  MultiPoly coefficient(const std::string& var, int k) const;

  Rational evaluate(const std::map<std::string, Rational>& values) const;
  /// Substitutes the given variables by rationals and keeps the rest.
  MultiPoly partial(const std::map<std::string, Rational>& values) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  MultiPoly operator-() const;
  MultiPoly pow(int e) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace hypsign
