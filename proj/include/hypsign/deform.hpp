#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypsign/polynomial.hpp"
#include "hypsign/realroots.hpp"

namespace hypsign {

/// A direction V for the deformation P + tV.
struct DeformationDirection {
  std::string step_id;
  std::string label;
  Polynomial v;
  /// Zero-augmented sign pattern of V in the degree of P, e.g.
  /// "(0,0,+,0,-,0,0)".
  std::string annotation;
};

/// Step ids understood by direction_catalog, grouped by the sign pattern of
/// the argument they belong to:
///   s241.pt  x^4 (x - xi6)           s241.qs  -(x - xi2)^2 x^2
///   s241.qu  (x^2 - xi4^2)(x - xi6)  s241.rv  -(x - xi2)^2 (x^2 - xi4^2)
///   s241.rr  (x + xi6)^2 (x - xi6)
///   s421.pt  x^3 (x - xi2)(x - xi3)(x - xi4)
///   s421.qs  (x^2 - xi5^2)(x^2 - xi6^2)   s421.qv  (x^2 - xi6^2) x^2
///   s421.qdelta  (x^2 - xi6^2)(x^2 - xi5^2)
///   s322.pt  (x - xi1)(x - xi6) x^2  s322.qs  (x^2 - xi1^2)(x^2 - xi5^2)
///   s322.s   (x + 1)^2 (x - 1/2)     s322.qv  -(x + 1)^2 (x - 1/2)
/// xi1 < ... < xi6 are the sorted roots of the current polynomial.
const std::vector<std::string>& catalog_step_ids();

/// Throws UnknownStep for an unknown id and std::invalid_argument when fewer
/// than six roots are supplied.
DeformationDirection direction_catalog(std::string_view step_id, std::span<const Rational> xi);

enum class EventKind { RootCollision, ModulusTie, CoefficientZero, RootAtZero, HyperbolicityLoss };

std::string to_string(EventKind k);

struct DeformationEvent {
  EventKind kind = EventKind::RootCollision;
  /// 1-based indices into the sorted roots just before the event
  /// (collision, modulus tie, root at zero: i, and j for pairs).
  int i = 0;
  int j = 0;
  /// Power of x for CoefficientZero.
  int index = -1;
  /// Isolating interval of the event parameter for `function`.
  IsolatingInterval t_star;
  /// Squarefree event polynomial in t with a simple root in t_star.
  Polynomial function;
  /// Multiplicity of that root in the unreduced event function; the
  /// function changes sign across t_star iff it is odd.
  int multiplicity = 1;

  std::string to_string(int significant = 12) const;
};

struct GridPoint {
  Rational t;
  /// Sorted; exact for stationary roots.
  std::vector<IsolatingInterval> roots;
  std::vector<bool> stationary;
};

enum class StopRule {
  /// Trace (0, t_max].
  AtTmax,
  /// Stop at the first event of any kind (t_max is ignored when an event
  /// exists).
  FirstEvent,
  /// Stop at the first collision, modulus tie, root at zero or loss of
  /// hyperbolicity, tracing coefficient events before it.
  FirstRootEvent,
};

struct TraceOptions {
  Rational t_max = 1;
  StopRule stop = StopRule::AtTmax;
  /// Initial uniform grid points over the traced range.
  int min_steps = 8;
  /// Depth limit of the adaptive halving.
  int max_halvings = 16;
  /// Relative width to which event brackets and grid roots are refined.
  Rational precision = pow10(-15);
};

struct DeformationPath {
  Polynomial p;
  Polynomial v;
  /// Last traced parameter value.
  Rational t_end;
  std::vector<GridPoint> grid;
  /// In increasing t; events at equal t are ordered by kind.
  std::vector<DeformationEvent> events;
  /// Bracket of the first parameter at which hyperbolicity is lost.
  std::optional<IsolatingInterval> hyperbolic_until;
  /// Exact roots shared by P and V (they never move).
  std::vector<Rational> stationary_roots;
  /// Event kinds whose event function vanishes identically.
  std::vector<EventKind> persistent;
  /// Sign of dxi/dt at t = 0 per sorted root.
  std::vector<int> initial_velocity;
  /// Sign of xi(t1) - xi(0) over the first grid step per sorted root.
  std::vector<int> first_step_movement;

  Polynomial at(const Rational& t) const { return p + v * t; }
  /// First event that is not a CoefficientZero, if any.
  const DeformationEvent* first_root_event() const;
};

/// Sign of -V(xi)/P'(xi) at a simple root xi of P. Throws MultipleRoot when
/// P'(xi) = 0 and std::invalid_argument when xi is not a root.
int root_velocity_sign(const Polynomial& p, const Polynomial& v, const Rational& xi);
/// Root given by an isolating interval of a squarefree P.
int root_velocity_sign(const Polynomial& p, const Polynomial& v, const IsolatingInterval& xi);

/// Traces P + tV for t >= 0. P must be hyperbolic with simple roots
/// (NotHyperbolicAtStart otherwise); deg V <= deg P, and when the degrees
/// are equal the leading coefficient of V must be nonnegative.
DeformationPath trace(const Polynomial& p, const Polynomial& v, const TraceOptions& opts = {});

/// True when the squarefree `function` changes sign across the bracket (checked
/// exactly; for an exact bracket [t, t], on a small neighbourhood).
bool bracket_certified(const DeformationEvent& e);

}  // namespace hypsign
