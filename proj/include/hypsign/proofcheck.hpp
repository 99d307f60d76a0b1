#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypsign/multipoly.hpp"

namespace hypsign {

/// g = numerator / denominator, obtained from the vanishing of one
/// coefficient.
struct Constraint {
  std::string var;
  int from_power = 0;
  std::string numerator;
  std::string denominator;
};

/// A family of polynomials in x with named parameters, e.g.
/// "(x+g)^2(x^2-1)(x+B)(x-A)".
struct ParametricFamily {
  std::string id;
  std::string name;
  std::string anchor;
  std::string factored;
  std::vector<std::string> params;
  /// Power of x whose coefficient is examined.
  int target = 0;
  std::optional<Constraint> constraint;
  /// Ordered chains such as "0 < k < h < g < 1" or "1 < A < B", separated by
  /// ';'. A chain without a constant upper end is unbounded above.
  std::string region;
  /// Claimed sign of the target coefficient on the region (after the
  /// constraint); 0 when the family carries only identities.
  int claimed_sign = 0;
  std::map<std::string, Rational> witness;
};

/// A printed coefficient formula: coefficient of x^power of the family
/// (after the constraint, if any) equals formula / denominator.
struct IdentityClaim {
  std::string id;
  std::string family_id;
  std::string anchor;
  int power = 0;
  std::string formula;
  /// "1" for plain coefficient identities.
  std::string denominator = "1";
  /// The family's constraint is substituted before comparing.
  bool after_constraint = false;
};

const std::vector<ParametricFamily>& builtin_families();
const ParametricFamily& builtin_family(const std::string& id);
const std::vector<IdentityClaim>& builtin_identities();

/// Coefficients of x^0 ... x^d of the factored form.
std::vector<MultiPoly> expand_family(const ParametricFamily& fam);

/// Exact equality of the coefficient of x^k with a formula.
bool check_identity(const ParametricFamily& fam, int k, const MultiPoly& formula);
/// Checks a printed identity claim (cross-multiplying any denominator).
bool check_identity(const IdentityClaim& claim);

struct RationalFunction {
  MultiPoly numerator;
  MultiPoly denominator;
};

/// Target coefficient with the constraint variable replaced by its closed
/// form, as numerator over denominator^m (m the degree in the variable).
/// Throws std::invalid_argument when the family has no constraint.
RationalFunction substitute_constraint(const ParametricFamily& fam);

/// Exact value of the target coefficient (constraint applied) at a
/// parameter point.
Rational target_value(const ParametricFamily& fam, const std::map<std::string, Rational>& point);

/// Draws a point of a region with exact rational coordinates. Bounded
/// segments use u = k / 2^32; unbounded ones use log-uniform gaps in
/// [1e-6, 1e6] rounded to 8 significant digits.
class Rng;
std::map<std::string, Rational> sample_region(const std::string& region, Rng& rng);
/// Strict inequalities of the region hold at the point.
bool in_region(const std::string& region, const std::map<std::string, Rational>& point);

struct SignReport {
  std::string family_id;
  std::string region;
  std::uint64_t samples = 0;
  std::uint64_t agree = 0;
  std::uint64_t zero = 0;
  std::uint64_t disagree = 0;
  bool witness_agrees = false;
  /// First few points where the claimed sign fails, verbatim.
  std::vector<std::map<std::string, Rational>> counterexamples;

  bool all_agree() const { return agree == samples && witness_agrees; }
};

/// Evaluates the target coefficient at the stored witness and at n region
/// points (the witness counts as the first sample). Sampling is split into
/// chunks of 1024 with per-chunk derived seeds. `region_override` replaces
/// the family's region, e.g. to demonstrate that a bound is needed.
SignReport sign_sample(const ParametricFamily& fam, std::uint64_t n, std::uint64_t seed,
                       const std::optional<std::string>& region_override = std::nullopt, unsigned workers = 1);

/// At n region points: the constraint makes its source coefficient vanish,
/// and substitute_constraint agrees with direct substitution.
bool constraint_consistent(const ParametricFamily& fam, int n, std::uint64_t seed);

}  // namespace hypsign
