#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hypsign/polynomial.hpp"

namespace hypsign {

/// Sequence of strict coefficient signs, read from x^d down to x^0. The
/// first sign is always +.
class SignPattern {
 public:
  SignPattern() = default;
  /// `plus[i]` is the sign of the coefficient of x^(d-i). Throws
  /// std::invalid_argument when empty or when the first sign is -.
  explicit SignPattern(std::vector<bool> plus);
  /// Parses "++----+".
  static SignPattern parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(plus_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(plus_.size()); }
  bool is_plus(int i) const { return plus_.at(static_cast<std::size_t>(i)); }
  int changes() const;
  int preservations() const { return degree() - changes(); }
  /// The pattern read backward and renormalized to begin with + (the sign
  /// pattern of the reverted polynomial).
  SignPattern reverted() const;
  /// Block sizes of maximal runs of equal signs, e.g. (2,4,1) for ++----+.
  std::vector<int> blocks() const;

  std::string to_string() const;

  friend auto operator<=>(const SignPattern&, const SignPattern&) = default;
  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<bool> plus_;
};

/// Composition (n_0, ..., n_c) of d - c: n_k negative-root moduli lie between
/// the k-th and (k+1)-th smallest positive-root modulus. For c = 2 this is
/// (a, b, w); for c = 1 it is (a, b).
struct InterleavingCase {
  std::vector<int> gaps;

  int changes() const { return static_cast<int>(gaps.size()) - 1; }
  int negatives() const;
  InterleavingCase reversed() const;
  /// "(a,b,w)"
  std::string to_string() const;
  /// Parses "0,3,1" or "(0,3,1)".
  static InterleavingCase parse(std::string_view text);

  friend auto operator<=>(const InterleavingCase&, const InterleavingCase&) = default;
  friend bool operator==(const InterleavingCase&, const InterleavingCase&) = default;
};

/// Sign pattern of a polynomial with positive leading coefficient.
/// Throws ZeroCoefficient(j) when the coefficient of x^j vanishes.
SignPattern sign_pattern(const Polynomial& p);

/// Signs of every coefficient from x^d down, with 0 allowed; rendered as
/// "(0,0,+,0,-,0,0)" by format_zero_augmented.
std::vector<int> zero_augmented_signs(const Polynomial& p, int degree);
std::string format_zero_augmented(const std::vector<int>& signs);

/// m pluses, n minuses, q pluses. q = 0 gives the two-block pattern.
/// Throws std::invalid_argument if m < 1, n < 1 or q < 0.
SignPattern sigma(int m, int n, int q);
SignPattern sigma2(int m, int n);

/// Block sizes (m,n,q) or (m,n) when the pattern has that form.
std::optional<std::vector<int>> block_form(const SignPattern& sp);

/// Case realized by a root configuration. Requires at least one positive and
/// one negative root; throws ModulusTie if two moduli coincide.
InterleavingCase case_of(const RootConfiguration& rc);

/// Case of the canonical arrangement: reading the pattern backward, each
/// sign change places a positive-root modulus, each preservation a
/// negative-root modulus. For sigma(m,n,q) this is (q-1, n-1, m-1).
InterleavingCase canonical_case(const SignPattern& sp);

/// All compositions of `total` into `parts` nonnegative entries, in
/// lexicographic order.
std::vector<InterleavingCase> all_cases(int total, int parts);

/// Every block pattern of length d+1 with c sign changes (c = 1 or 2), in
/// lexicographic order of block sizes.
std::vector<SignPattern> block_patterns(int d, int c);

/// Cases not excluded by the general restrictions on block patterns (only
/// the canonical case for Σ_{1,d}, Σ_{d,1}, Σ_{1,d-1,1} and Σ_{m,1,d-m};
/// only (1,0,d-3) and (0,b,w) for Σ_{d-2,2,1} and Σ_{d-3,3,1}; only (0,b,w)
/// for Σ_{m,n,1} with n >= 4; the mirrored statements for Σ_{1,n,q}).
/// Throws std::invalid_argument for a non-block pattern.
std::set<InterleavingCase> admissible_cases(const SignPattern& sp);

}  // namespace hypsign
