#include "hypsign/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypsign {

namespace {
const Rational kZero(0);

Rational pow_rational(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}
}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int power) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_descending_decimals(std::span<const std::string> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v.push_back(parse_decimal(*it));
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::operator[](int j) const {
  if (j < 0 || j > degree()) return kZero;
  return coeffs_[static_cast<std::size_t>(j)];
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) return kZero;
  return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const { return evaluate(*this, x); }

// Horner in integers: with x = a/b and L the lcm of the coefficient
// denominators, sign P(x) = sign sum (L c_k) a^k b^(d-k).
int Polynomial::sign_at(const Rational& x) const {
  if (coeffs_.empty()) return 0;
  Integer lcm = 1;
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  auto scaled = [&](const Rational& c) -> Integer {
    if (c.get_den() == 1) return lcm * c.get_num();
    return lcm / c.get_den() * c.get_num();
  };
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc = scaled(coeffs_.back());
  Integer bpow = 1;
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    bpow *= b;
    acc *= a;
    acc += scaled(coeffs_[k]) * bpow;
  }
  return sgn(acc);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

std::string Polynomial::to_string(int significant) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = degree(); j >= 0; --j) {
    const Rational& c = (*this)[j];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1 && j > 0;
    if (!unit) os << to_display(mag, significant);
    if (j > 0) os << "x";
    if (j > 1) os << "^" << j;
  }
  return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Polynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1);
  Rational inv_lead = 1 / b.leading();
  for (int k = da; k >= db; --k) {
    Rational q = rem[static_cast<std::size_t>(k)] * inv_lead;
    if (q == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

Polynomial primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& c : p.coefficients()) {
    if (c != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer num_gcd = 0;
  for (const auto& c : p.coefficients()) {
    if (c == 0) continue;
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  return p * factor;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).remainder;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

Polynomial expand_from_roots(std::span<const Rational> roots) {
  std::vector<Rational> c(roots.size() + 1);
  c[0] = 1;
  std::size_t n = 0;
  for (const auto& r : roots) {
    // multiply by (x - r): c'[j] = c[j-1] - r c[j]
    c[n + 1] = c[n];
    for (std::size_t j = n; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
    ++n;
  }
  return Polynomial(std::move(c));
}

Polynomial revert(const Polynomial& p) {
  if (p[0] == 0) throw std::domain_error("revert: P(0) = 0");
  std::vector<Rational> v(p.coefficients().rbegin(), p.coefficients().rend());
  Polynomial r(std::move(v));
  if (p[0] < 0) r = -r;
  return monic(r);
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial();
  std::vector<Rational> v(static_cast<std::size_t>(p.degree()));
  for (int j = 1; j <= p.degree(); ++j) v[static_cast<std::size_t>(j - 1)] = p[j] * j;
  return Polynomial(std::move(v));
}

Polynomial scale_variable(const Polynomial& p, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("scale_variable: factor must be positive");
  std::vector<Rational> v(p.coefficients().begin(), p.coefficients().end());
  Rational power = 1;
  for (auto& x : v) {
    x *= power;
    power *= c;
  }
  return monic(Polynomial(std::move(v)));
}

Polynomial reflect(const Polynomial& p) {
  std::vector<Rational> v(p.coefficients().begin(), p.coefficients().end());
  for (std::size_t j = 1; j < v.size(); j += 2) v[j] = -v[j];
  return Polynomial(std::move(v));
}

Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  auto c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree();
  const int n = b.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return pow_rational(a.leading(), n);
  if (n == 0) return pow_rational(b.leading(), m);
  const int size = m + n;
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size), std::vector<Rational>(size));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  }
  return determinant(std::move(s));
}

Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  Polynomial out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis = Polynomial::constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw std::invalid_argument("interpolate: repeated node");
      basis *= Polynomial{Rational(-xs[j]), Rational(1)};
      denom *= xs[i] - xs[j];
    }
    out += basis * Rational(ys[i] / denom);
  }
  return out;
}

RootConfiguration::RootConfiguration(std::vector<Rational> roots) : roots_(std::move(roots)) {
  if (roots_.empty()) throw std::invalid_argument("root configuration must be nonempty");
  for (auto& r : roots_) {
    r.canonicalize();
    if (r == 0) throw std::invalid_argument("root configuration contains a zero root");
  }
  std::sort(roots_.begin(), roots_.end());
}

int RootConfiguration::positive_count() const {
  return static_cast<int>(std::count_if(roots_.begin(), roots_.end(), [](const Rational& r) { return r > 0; }));
}

int RootConfiguration::negative_count() const { return degree() - positive_count(); }

std::vector<int> RootConfiguration::moduli_ranking() const {
  std::vector<int> idx(roots_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return abs(roots_[a]) < abs(roots_[b]); });
  return idx;
}

bool RootConfiguration::has_distinct_moduli() const {
  auto rank = moduli_ranking();
  for (std::size_t i = 1; i < rank.size(); ++i) {
    if (abs(roots_[rank[i]]) == abs(roots_[rank[i - 1]])) return false;
  }
  return true;
}

RootConfiguration RootConfiguration::reciprocal() const {
  std::vector<Rational> v;
  v.reserve(roots_.size());
  for (const auto& r : roots_) v.emplace_back(1 / r);
  return RootConfiguration(std::move(v));
}

RootConfiguration RootConfiguration::scaled(const Rational& c) const {
  if (c <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Rational> v;
  v.reserve(roots_.size());
  for (const auto& r : roots_) v.emplace_back(r / c);
  return RootConfiguration(std::move(v));
}

}  // namespace hypsign
