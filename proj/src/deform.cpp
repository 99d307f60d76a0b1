#include "hypsign/deform.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hypsign/errors.hpp"
#include "hypsign/signcase.hpp"

namespace hypsign {

namespace {

Polynomial linear(const Rational& root) { return Polynomial{Rational(-root), Rational(1)}; }

Polynomial even_pair(const Rational& r) { return Polynomial{Rational(-r * r), Rational(0), Rational(1)}; }

Polynomial x_power(int k) { return Polynomial::monomial(1, k); }

const Rational& xi_at(std::span<const Rational> xi, int one_based) {
  return xi[static_cast<std::size_t>(one_based - 1)];
}

}  // namespace

const std::vector<std::string>& catalog_step_ids() {
  static const std::vector<std::string> ids = {"s241.pt", "s241.qs", "s241.qu",     "s241.rv", "s241.rr",
                                               "s421.pt", "s421.qs", "s421.qv",     "s421.qdelta", "s322.pt",
                                               "s322.qs", "s322.s",  "s322.qv"};
  return ids;
}

DeformationDirection direction_catalog(std::string_view step_id, std::span<const Rational> xi) {
  const auto& ids = catalog_step_ids();
  if (std::find(ids.begin(), ids.end(), step_id) == ids.end()) {
    throw UnknownStep("unknown deformation step '" + std::string(step_id) + "'");
  }
  if (xi.size() < 6) throw std::invalid_argument("direction_catalog: six sorted roots are required");
  std::vector<Rational> sorted(xi.begin(), xi.end());
  std::sort(sorted.begin(), sorted.end());
  std::span<const Rational> r(sorted);
  const Polynomial s_poly = linear(-1) * linear(-1) * linear(Rational(1, 2));

  DeformationDirection dir;
  dir.step_id = std::string(step_id);
  if (step_id == "s241.pt") {
    dir.label = "x^4 (x - xi6)";
    dir.v = x_power(4) * linear(xi_at(r, 6));
  } else if (step_id == "s241.qs") {
    dir.label = "-(x - xi2)^2 x^2";
    dir.v = -(linear(xi_at(r, 2)) * linear(xi_at(r, 2)) * x_power(2));
  } else if (step_id == "s241.qu") {
    dir.label = "(x^2 - xi4^2)(x - xi6)";
    dir.v = even_pair(xi_at(r, 4)) * linear(xi_at(r, 6));
  } else if (step_id == "s241.rv") {
    dir.label = "-(x - xi2)^2 (x^2 - xi4^2)";
    dir.v = -(linear(xi_at(r, 2)) * linear(xi_at(r, 2)) * even_pair(xi_at(r, 4)));
  } else if (step_id == "s241.rr") {
    dir.label = "(x + xi6)^2 (x - xi6)";
    dir.v = linear(-xi_at(r, 6)) * linear(-xi_at(r, 6)) * linear(xi_at(r, 6));
  } else if (step_id == "s421.pt") {
    dir.label = "x^3 (x - xi2)(x - xi3)(x - xi4)";
    dir.v = x_power(3) * linear(xi_at(r, 2)) * linear(xi_at(r, 3)) * linear(xi_at(r, 4));
  } else if (step_id == "s421.qs") {
    dir.label = "(x^2 - xi5^2)(x^2 - xi6^2)";
    dir.v = even_pair(xi_at(r, 5)) * even_pair(xi_at(r, 6));
  } else if (step_id == "s421.qv") {
    dir.label = "(x^2 - xi6^2) x^2";
    dir.v = even_pair(xi_at(r, 6)) * x_power(2);
  } else if (step_id == "s421.qdelta") {
    dir.label = "(x^2 - xi6^2)(x^2 - xi5^2)";
    dir.v = even_pair(xi_at(r, 6)) * even_pair(xi_at(r, 5));
  } else if (step_id == "s322.pt") {
    dir.label = "(x - xi1)(x - xi6) x^2";
    dir.v = linear(xi_at(r, 1)) * linear(xi_at(r, 6)) * x_power(2);
  } else if (step_id == "s322.qs") {
    dir.label = "(x^2 - xi1^2)(x^2 - xi5^2)";
    dir.v = even_pair(xi_at(r, 1)) * even_pair(xi_at(r, 5));
  } else if (step_id == "s322.s") {
    dir.label = "S = (x + 1)^2 (x - 1/2)";
    dir.v = s_poly;
  } else {
    dir.label = "-S = -(x + 1)^2 (x - 1/2)";
    dir.v = -s_poly;
  }
  dir.annotation = format_zero_augmented(zero_augmented_signs(dir.v, static_cast<int>(xi.size())));
  return dir;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::RootCollision: return "RootCollision";
    case EventKind::ModulusTie: return "ModulusTie";
    case EventKind::CoefficientZero: return "CoefficientZero";
    case EventKind::RootAtZero: return "RootAtZero";
    case EventKind::HyperbolicityLoss: return "HyperbolicityLoss";
  }
  return "?";
}

std::string DeformationEvent::to_string(int significant) const {
  std::string s = hypsign::to_string(kind);
  switch (kind) {
    case EventKind::RootCollision:
    case EventKind::ModulusTie:
    case EventKind::HyperbolicityLoss:
      s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      break;
    case EventKind::CoefficientZero: s += "(" + std::to_string(index) + ")"; break;
    case EventKind::RootAtZero: s += "(" + std::to_string(i) + ")"; break;
  }
  if (t_star.is_exact()) {
    s += " at t = " + to_display(t_star.lo, significant);
  } else {
    s += " at t in (" + to_decimal(t_star.lo, significant) + ", " + to_decimal(t_star.hi, significant) + ")";
  }
  return s;
}

const DeformationEvent* DeformationPath::first_root_event() const {
  for (const auto& e : events) {
    if (e.kind != EventKind::CoefficientZero) return &e;
  }
  return nullptr;
}

int root_velocity_sign(const Polynomial& p, const Polynomial& v, const Rational& xi) {
  if (p.sign_at(xi) != 0) throw std::invalid_argument("root_velocity_sign: not a root");
  int dp = derivative(p).sign_at(xi);
  if (dp == 0) throw MultipleRoot("root_velocity_sign: multiple root");
  return -v.sign_at(xi) * dp;
}

int root_velocity_sign(const Polynomial& p, const Polynomial& v, const IsolatingInterval& xi) {
  if (xi.is_exact()) return root_velocity_sign(p, v, xi.lo);
  Polynomial sf = squarefree_part(p);
  int dp = sign_at_root(derivative(p), sf, xi);
  if (dp == 0) throw MultipleRoot("root_velocity_sign: multiple root");
  return -sign_at_root(v, sf, xi) * dp;
}

namespace {

// Hurwitz minor of order k-1 of a degree-k polynomial; equals the product of
// (r_i + r_j) over root pairs up to a nonzero factor.
Rational orlando(const Polynomial& h) {
  const int k = h.degree();
  if (k < 2) return 1;
  auto a = [&](int m) -> Rational {
    if (m < 0 || m > k) return 0;
    return h[k - m];
  };
  const int n = k - 1;
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) m[i - 1][j - 1] = a(2 * j - i);
  }
  return determinant(std::move(m));
}

// Interpolates t -> f(H0 + tW) from nodes 0..bound.
Polynomial event_polynomial(const Polynomial& h0, const Polynomial& w, int bound,
                            const std::function<Rational(const Polynomial&)>& f) {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (int t = 0; t <= bound; ++t) {
    xs.emplace_back(t);
    ys.push_back(f(h0 + w * Rational(t)));
  }
  return interpolate(xs, ys);
}

struct Candidate {
  EventKind kind;
  int index = -1;
  IsolatingInterval t_star;
  Polynomial function;
  int multiplicity = 1;
};

// Roots of a squarefree polynomial in t lying in (0, +inf).
std::vector<IsolatingInterval> positive_roots(const Polynomial& a) {
  std::vector<IsolatingInterval> out;
  bool zero_root = a.sign_at(0) == 0;
  for (auto iv : isolate_roots(a)) {
    for (;;) {
      if (iv.is_exact()) {
        if (iv.lo > 0) out.push_back(iv);
        break;
      }
      if (iv.hi <= 0) break;
      if (iv.lo >= 0) {
        out.push_back(iv);
        break;
      }
      if (zero_root) break;
      iv = refine(a, iv, iv.width() / 2);
    }
  }
  return out;
}

Rational rel_width(const Rational& precision, const Rational& around) {
  Rational scale = abs(around);
  if (scale < 1) scale = 1;
  return precision * scale;
}

IsolatingInterval refine_relative(const Polynomial& p, IsolatingInterval iv, const Rational& precision) {
  for (;;) {
    if (iv.is_exact()) return iv;
    Rational w = rel_width(precision, std::max(abs(iv.lo), abs(iv.hi)));
    if (iv.width() <= w) return iv;
    iv = refine(p, iv, std::max(w, Rational(iv.width() / 1024)));
  }
}

// Refines a bracket of a positive root until lo > 0 and its width is at most
// precision * lo, so that events at very small t stay separated from 0.
IsolatingInterval refine_positive(const Polynomial& p, IsolatingInterval iv, const Rational& precision) {
  for (;;) {
    if (iv.is_exact()) return iv;
    if (iv.lo > 0 && iv.width() <= precision * iv.lo) return iv;
    iv = refine(p, iv, iv.width() / 2);
  }
}

// Sorted real roots of P_t, refined to relative precision, as exact
// midpoints (for index identification).
std::vector<Rational> approximate_roots(const Polynomial& p, const Rational& precision) {
  std::vector<Rational> out;
  for (const auto& rr : real_roots_with_multiplicity(p)) {
    auto iv = refine_relative(rr.factor, rr.interval, precision);
    for (int m = 0; m < rr.multiplicity; ++m) out.push_back(iv.midpoint());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void identify(DeformationEvent& e, const std::vector<Rational>& r) {
  const int n = static_cast<int>(r.size());
  if (e.kind == EventKind::RootCollision) {
    std::optional<Rational> best;
    for (int i = 0; i + 1 < n; ++i) {
      Rational gap = r[static_cast<std::size_t>(i + 1)] - r[static_cast<std::size_t>(i)];
      if (!best || gap < *best) {
        best = gap;
        e.i = i + 1;
        e.j = i + 2;
      }
    }
  } else if (e.kind == EventKind::ModulusTie) {
    std::optional<Rational> best;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Rational& a = r[static_cast<std::size_t>(i)];
        const Rational& b = r[static_cast<std::size_t>(j)];
        if (sgn(a) == sgn(b)) continue;
        Rational gap = abs(abs(a) - abs(b));
        if (!best || gap < *best) {
          best = gap;
          e.i = i + 1;
          e.j = j + 1;
        }
      }
    }
  } else if (e.kind == EventKind::RootAtZero) {
    std::optional<Rational> best;
    for (int i = 0; i < n; ++i) {
      Rational m = abs(r[static_cast<std::size_t>(i)]);
      if (!best || m < *best) {
        best = m;
        e.i = i + 1;
      }
    }
  }
}

int kind_rank(EventKind k) {
  switch (k) {
    case EventKind::CoefficientZero: return 0;
    case EventKind::RootAtZero: return 1;
    case EventKind::ModulusTie: return 2;
    case EventKind::RootCollision: return 3;
    case EventKind::HyperbolicityLoss: return 4;
  }
  return 5;
}

// Sorted roots of P_t at a parameter where P_t has simple roots, merging
// the exact stationary roots with the moving ones.
GridPoint grid_point(const Rational& t, const Polynomial& h0, const Polynomial& w,
                     const std::vector<IsolatingInterval>& stationary, const Rational& precision) {
  GridPoint gp;
  gp.t = t;
  Polynomial h = h0 + w * t;
  std::vector<std::pair<IsolatingInterval, bool>> all;
  for (const auto& iv : stationary) all.emplace_back(iv, true);
  for (auto iv : isolate_roots(h)) all.emplace_back(refine_relative(h, iv, precision), false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (auto& [iv, st] : all) {
    gp.roots.push_back(iv);
    gp.stationary.push_back(st);
  }
  return gp;
}

bool intervals_separate(const GridPoint& a, const GridPoint& b) {
  if (a.roots.size() != b.roots.size()) return true;
  for (std::size_t i = 0; i + 1 < a.roots.size(); ++i) {
    Rational hi = std::max(a.roots[i].hi, b.roots[i].hi);
    Rational lo = std::min(a.roots[i + 1].lo, b.roots[i + 1].lo);
    if (!(hi < lo)) return false;
  }
  return true;
}

}  // namespace

bool bracket_certified(const DeformationEvent& e) {
  const Polynomial& f = e.function;
  if (!e.t_star.is_exact()) {
    int a = f.sign_at(e.t_star.lo);
    int b = f.sign_at(e.t_star.hi);
    return a != 0 && b != 0 && a != b && count_real_roots(f, e.t_star.lo, e.t_star.hi) == 1;
  }
  const Rational& t = e.t_star.lo;
  if (f.sign_at(t) != 0) return false;
  Rational delta = 1;
  for (int k = 0; k < 400; ++k, delta /= 2) {
    Rational lo = t - delta;
    Rational hi = t + delta;
    if (f.sign_at(lo) == 0 || f.sign_at(hi) == 0) continue;
    if (count_real_roots(f, lo, hi) != 1) continue;
    return f.sign_at(lo) != f.sign_at(hi);
  }
  return false;
}

DeformationPath trace(const Polynomial& p, const Polynomial& v, const TraceOptions& opts) {
  if (p.degree() < 1 || p.leading() <= 0) throw std::invalid_argument("trace: P needs degree >= 1 and positive leading coefficient");
  if (v.is_zero()) throw std::invalid_argument("trace: V is zero");
  if (v.degree() > p.degree()) throw std::invalid_argument("trace: deg V exceeds deg P");
  if (v.degree() == p.degree() && v.leading() < 0) {
    throw std::invalid_argument("trace: leading coefficient of V must be nonnegative when deg V = deg P");
  }
  if (opts.t_max <= 0) throw std::invalid_argument("trace: t_max must be positive");
  if (!is_squarefree(p) || !is_hyperbolic(p)) throw NotHyperbolicAtStart("trace: P must be hyperbolic with simple roots");

  DeformationPath path;
  path.p = p;
  path.v = v;
  const Rational& prec = opts.precision;

  Polynomial g = gcd(p, v);
  Polynomial h0 = divmod(p, g).quotient;
  Polynomial w = divmod(v, g).quotient;
  if (h0.degree() < 1) throw std::invalid_argument("trace: V is a multiple of P, nothing moves");
  const int k = h0.degree();
  const int gd = g.degree();

  std::vector<IsolatingInterval> stationary;
  if (gd >= 1) {
    for (auto iv : isolate_roots(g)) {
      iv = refine_relative(g, iv, Rational(1, 1024));
      iv = exact_or_refined(g, iv, rel_width(prec, iv.hi));
      stationary.push_back(iv);
      if (iv.is_exact()) path.stationary_roots.push_back(iv.lo);
    }
  }

  // Event functions in t.
  std::vector<std::pair<Candidate, Polynomial>> sources;
  auto add = [&](EventKind kind, int index, const Polynomial& f) {
    if (f.is_zero()) {
      if (std::find(path.persistent.begin(), path.persistent.end(), kind) == path.persistent.end()) {
        path.persistent.push_back(kind);
      }
      return;
    }
    if (f.degree() < 1) return;
    Candidate c;
    c.kind = kind;
    c.index = index;
    sources.emplace_back(c, f);
  };
  for (int j = 0; j <= p.degree(); ++j) {
    Polynomial f{p[j], v[j]};
    if (v[j] == 0 && p[j] == 0) add(EventKind::CoefficientZero, j, Polynomial());
    if (v[j] != 0) add(EventKind::CoefficientZero, j, f);
  }
  add(EventKind::RootCollision, -1,
      event_polynomial(h0, w, 2 * k - 1, [](const Polynomial& h) { return resultant(h, derivative(h)); }));
  add(EventKind::ModulusTie, -1, event_polynomial(h0, w, std::max(k - 1, 0), orlando));
  if (gd >= 1) {
    add(EventKind::RootCollision, -1, event_polynomial(h0, w, gd, [&](const Polynomial& h) { return resultant(h, g); }));
    Polynomial gr = reflect(g);
    add(EventKind::ModulusTie, -1, event_polynomial(h0, w, gd, [&](const Polynomial& h) { return resultant(h, gr); }));
    // Two stationary roots with opposite moduli tie for every t.
    if (resultant(g, gr) == 0 && g.sign_at(0) != 0) {
      if (std::find(path.persistent.begin(), path.persistent.end(), EventKind::ModulusTie) == path.persistent.end()) {
        path.persistent.push_back(EventKind::ModulusTie);
      }
    }
  }

  std::vector<DeformationEvent> events;
  for (const auto& [cand, f] : sources) {
    auto parts = squarefree_decomposition(f);
    for (std::size_t m = 0; m < parts.size(); ++m) {
      if (parts[m].degree() < 1) continue;
      for (auto iv : positive_roots(parts[m])) {
        iv = refine_positive(parts[m], refine_relative(parts[m], iv, prec), prec);
        DeformationEvent e;
        e.kind = cand.kind;
        e.index = cand.index;
        e.t_star = iv;
        e.function = parts[m];
        e.multiplicity = static_cast<int>(m + 1);
        events.push_back(e);
        if (cand.kind == EventKind::CoefficientZero && cand.index == 0) {
          e.kind = EventKind::RootAtZero;
          e.index = -1;
          events.push_back(e);
        }
      }
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const DeformationEvent& a, const DeformationEvent& b) {
    int c = compare_roots(a.function, a.t_star, b.function, b.t_star);
    if (c != 0) return c < 0;
    return kind_rank(a.kind) < kind_rank(b.kind);
  });

  // Keep the events inside the traced range.
  auto beyond = [](const DeformationEvent& e, const Rational& t) {
    if (e.t_star.is_exact()) return e.t_star.lo > t;
    return compare_roots(e.function, e.t_star, Polynomial{Rational(-t), Rational(1)}, {t, t}) > 0;
  };
  Rational t_end = opts.t_max;
  std::optional<std::size_t> stop_at;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (opts.stop == StopRule::FirstEvent || (opts.stop == StopRule::FirstRootEvent &&
                                              events[i].kind != EventKind::CoefficientZero)) {
      stop_at = i;
      break;
    }
  }
  if (stop_at) {
    // Include simultaneous events.
    std::size_t last = *stop_at;
    while (last + 1 < events.size() &&
           compare_roots(events[last + 1].function, events[last + 1].t_star, events[*stop_at].function,
                         events[*stop_at].t_star) == 0) {
      ++last;
    }
    events.resize(last + 1);
    t_end = events[*stop_at].t_star.hi;
  } else if (opts.stop == StopRule::AtTmax) {
    std::erase_if(events, [&](const DeformationEvent& e) { return beyond(e, opts.t_max); });
  }

  // Identify root indices just before each event, and detect loss of
  // hyperbolicity after collisions.
  std::vector<DeformationEvent> final_events;
  for (std::size_t i = 0; i < events.size(); ++i) {
    DeformationEvent e = events[i];
    const Rational& lo = e.t_star.lo;
    Rational prev = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (events[j].t_star.hi < lo && events[j].t_star.hi > prev) prev = events[j].t_star.hi;
    }
    Rational probe = lo - (lo - prev) / 64;
    identify(e, approximate_roots(path.at(probe), prec));
    final_events.push_back(e);
    if (e.kind == EventKind::RootCollision) {
      Rational after = e.t_star.hi;
      Rational next_lo = i + 1 < events.size() ? events[i + 1].t_star.lo : after + after * prec;
      if (next_lo > after) {
        after = after + (next_lo - after) / 2;
      } else {
        after = after + after * prec / 1024;
      }
      if (!is_hyperbolic(path.at(after))) {
        DeformationEvent loss = e;
        loss.kind = EventKind::HyperbolicityLoss;
        final_events.push_back(loss);
        path.hyperbolic_until = e.t_star;
        t_end = e.t_star.lo;
        break;
      }
    }
  }
  path.events = std::move(final_events);
  if (t_end > opts.t_max && !stop_at) t_end = opts.t_max;

  // Grid: uniform points avoiding event brackets, plus midpoints between
  // consecutive brackets, then adaptive halving.
  std::vector<std::pair<Rational, Rational>> blocked;
  for (const auto& e : path.events) blocked.emplace_back(e.t_star.lo, e.t_star.hi);
  auto is_blocked = [&](const Rational& t) {
    for (const auto& [lo, hi] : blocked) {
      if (t >= lo && t <= hi) return true;
    }
    return false;
  };
  while (is_blocked(t_end)) {
    Rational lo = t_end;
    for (const auto& [a, b] : blocked) {
      if (t_end >= a && t_end <= b) lo = std::min(lo, a);
    }
    t_end = lo - lo * prec;
  }
  path.t_end = t_end;

  std::vector<Rational> ts;
  const int steps = std::max(1, opts.min_steps);
  for (int i = 0; i <= steps; ++i) {
    Rational t = t_end * i / steps;
    if (!is_blocked(t)) ts.push_back(t);
  }
  {
    Rational left = 0;
    for (const auto& [lo, hi] : blocked) {
      if (lo > left && lo <= t_end) ts.push_back((left + lo) / 2);
      if (hi > left) left = hi;
    }
    if (t_end > left) ts.push_back((left + t_end) / 2);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::erase_if(ts, [&](const Rational& t) { return t < 0 || t > t_end; });
  if (ts.empty() || ts.front() != 0) ts.insert(ts.begin(), Rational(0));

  std::vector<GridPoint> grid;
  for (const auto& t : ts) grid.push_back(grid_point(t, h0, w, stationary, prec));
  for (int depth = 0; depth < opts.max_halvings; ++depth) {
    bool inserted = false;
    std::vector<GridPoint> next;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      next.push_back(grid[i]);
      if (i + 1 < grid.size() && !intervals_separate(grid[i], grid[i + 1])) {
        Rational mid = (grid[i].t + grid[i + 1].t) / 2;
        if (!is_blocked(mid)) {
          next.push_back(grid_point(mid, h0, w, stationary, prec));
          inserted = true;
        }
      }
    }
    grid = std::move(next);
    if (!inserted) break;
  }

  // Velocity at t = 0 against the movement over the first step, halving the
  // first step until they agree.
  const Polynomial p_sf = squarefree_part(p);
  for (const auto& iv : grid.front().roots) path.initial_velocity.push_back(root_velocity_sign(p, v, iv));
  if (grid.size() >= 2) {
    for (int depth = 0; depth <= 60; ++depth) {
      const GridPoint& g0 = grid[0];
      const GridPoint& g1 = grid[1];
      Polynomial p1 = squarefree_part(path.at(g1.t));
      path.first_step_movement.clear();
      if (g0.roots.size() == g1.roots.size()) {
        for (std::size_t i = 0; i < g0.roots.size(); ++i) {
          path.first_step_movement.push_back(compare_roots(p1, g1.roots[i], p_sf, g0.roots[i]));
        }
      }
      if (path.first_step_movement == path.initial_velocity || depth == 60) break;
      Rational mid = g1.t / 2;
      grid.insert(grid.begin() + 1, grid_point(mid, h0, w, stationary, prec));
    }
  }
  path.grid = std::move(grid);
  return path;
}

}  // namespace hypsign
