#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypsign/polynomial.hpp"
#include "hypsign/signcase.hpp"

namespace hypsign {

/// A witness polynomial: its factored form, its expansion as printed in the
/// source, and the sign pattern and case it is claimed to realize.
struct Certificate {
  std::string id;
  /// Human-readable description of what the witness shows.
  std::string anchor;
  /// Factored form, e.g. "(x-0.001)(x+0.3)(x+0.4)(x-1)(x+1.01)(x+1.02)".
  std::string factored;
  /// Root multiset of the factored form (repeated for multiple factors).
  std::vector<Rational> roots;
  /// Printed coefficients from x^d down to x^0 (decimal or "p/q" strings).
  std::vector<std::string> printed;
  SignPattern claimed_sp;
  InterleavingCase claimed_case;

  int degree() const { return static_cast<int>(roots.size()); }
  Polynomial printed_polynomial() const;
  Polynomial exact_expansion() const { return expand_from_roots(roots); }
  bool has_multiple_roots() const;
};

struct CertificateReport {
  std::string id;
  /// Exact expansion equals the printed coefficients.
  bool expansion_match = false;
  /// Powers j whose printed coefficient differs from the exact one.
  std::vector<int> mismatched_powers;
  /// Every mismatched coefficient is the exact value rounded to the number
  /// of printed decimals (within half a unit of the last printed digit).
  bool printed_precision_match = false;
  bool sp_match = false;
  bool case_match = false;
  /// Splitting parameter used when the factored form has multiple roots.
  std::optional<Rational> split_epsilon;
  std::optional<RootConfiguration> generic_roots;
  std::string detail;

  bool all_pass() const { return expansion_match && sp_match && case_match; }
};

/// Parses products of linear factors "(x-a)", "(x+a)^k" into a root list.
std::vector<Rational> parse_factored_roots(const std::string& factored);

/// Replaces each root r of multiplicity k by r + j*eps with offsets
/// j in {-k/2..k/2} (zero skipped when k is even): {-1,1}, {-1,0,1},
/// {-2,-1,1,2}, ...
std::vector<Rational> split_multiple_roots(const std::vector<Rational>& roots, const Rational& eps);

/// Every explicit witness used in the classification (28 entries).
const std::vector<Certificate>& builtin_certificates();

/// Looks up a builtin certificate by id; throws std::out_of_range.
const Certificate& builtin_certificate(const std::string& id);

CertificateReport verify_certificate(const Certificate& cert);

/// Multiplies the base witness by prod (1 + e x) over mu_eps and
/// prod (x + e) over nu_eps. The prediction (m + mu*, n, q + nu*) for the
/// sign pattern and (a + nu*, b, w + mu*) for the case is checked exactly;
/// on failure every epsilon is halved and the check repeated up to
/// `max_halvings` times before PredictionFailed is thrown. Each epsilon
/// must lie in (0, 1/1000].
Certificate pad_witness(const Certificate& base, std::vector<Rational> mu_eps, std::vector<Rational> nu_eps,
                        int max_halvings = 30);

/// pad_witness with eps, eps/2, eps/4, ... for the mu* and nu* factors.
Certificate pad_witness(const Certificate& base, int mu_count, int nu_count, const Rational& eps);

}  // namespace hypsign
