#include "hypsign/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hypsign {

namespace {

Integer ipow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Number of decimal digits of a positive integer.
long digit_count(const Integer& n) {
  long k = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10));
  // mpz_sizeinbase may overestimate by one.
  if (k > 1 && n < ipow10(static_cast<unsigned long>(k - 1))) --k;
  return k;
}

}  // namespace

Rational pow10(int exponent) {
  if (exponent >= 0) return Rational(ipow10(static_cast<unsigned long>(exponent)));
  Rational r(Integer(1), ipow10(static_cast<unsigned long>(-exponent)));
  r.canonicalize();
  return r;
}

std::string to_exact_string(const Rational& q) {
  if (is_terminating_decimal(q)) return to_exact_decimal(q);
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational parse_decimal(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    std::string exp_digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp_digits.push_back(text[i++]);
    if (exp_digits.empty() || exp_digits.size() > 6) fail();
    exponent = std::stol(exp_digits);
    if (exp_negative) exponent = -exponent;
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) fail();

  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_digits;
  Rational result(mantissa);
  if (shift >= 0) {
    result *= Rational(ipow10(static_cast<unsigned long>(shift)));
  } else {
    result /= Rational(ipow10(static_cast<unsigned long>(-shift)));
  }
  result.canonicalize();
  return result;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r = num / den;
  r.canonicalize();
  return r;
}

bool is_terminating_decimal(const Rational& q) {
  Integer d = q.get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

namespace {

// Renders sign * digits * 10^(-scale) in positional notation.
std::string positional(bool negative, const Integer& magnitude, long scale) {
  std::string s = magnitude.get_str();
  if (scale > 0) {
    if (static_cast<long>(s.size()) <= scale) s.insert(0, static_cast<std::size_t>(scale - static_cast<long>(s.size()) + 1), '0');
    s.insert(s.size() - static_cast<std::size_t>(scale), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  } else if (scale < 0) {
    s.append(static_cast<std::size_t>(-scale), '0');
  }
  if (negative && s != "0") s.insert(0, "-");
  return s;
}

}  // namespace

std::string to_exact_decimal(const Rational& q) {
  if (!is_terminating_decimal(q)) throw std::invalid_argument("rational has no terminating decimal expansion");
  // Scale by 10^k until integral.
  Rational a = abs(q);
  long scale = 0;
  while (a.get_den() != 1) {
    a *= 10;
    a.canonicalize();
    ++scale;
  }
  return positional(q < 0, a.get_num(), scale);
}

std::string to_decimal(const Rational& q, int significant) {
  if (significant < 1) significant = 1;
  if (q == 0) return "0";
  Rational a = abs(q);
  // exponent k with 10^k <= a < 10^(k+1)
  long k = digit_count(a.get_num()) - digit_count(a.get_den());
  while (a < pow10(static_cast<int>(k))) --k;
  while (a >= pow10(static_cast<int>(k + 1))) ++k;
  long shift = significant - 1 - k;
  Rational scaled = a * pow10(static_cast<int>(shift));
  // round half away from zero
  Integer floor_val = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(floor_val);
  if (frac >= Rational(1, 2)) floor_val += 1;
  if (floor_val == ipow10(static_cast<unsigned long>(significant))) {
    floor_val /= 10;
    ++k;
    --shift;
  }
  bool negative = q < 0;
  if (k >= -7 && k < 15) return positional(negative, floor_val, shift);
  std::string d = floor_val.get_str();
  std::string mant = d.substr(0, 1);
  std::string rest = d.substr(1);
  while (!rest.empty() && rest.back() == '0') rest.pop_back();
  if (!rest.empty()) mant += "." + rest;
  return std::string(negative ? "-" : "") + mant + "e" + std::to_string(k);
}

std::string to_display(const Rational& q, int significant) {
  if (is_terminating_decimal(q)) {
    std::string exact = to_exact_decimal(q);
    std::size_t digits = 0;
    bool leading = true;
    for (char ch : exact) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) continue;
      if (leading && ch == '0') continue;
      leading = false;
      ++digits;
    }
    if (static_cast<int>(digits) <= significant && exact.size() <= 40) return exact;
  }
  return to_decimal(q, significant);
}

Rational round_to_digits(double value, int digits) {
  int e = static_cast<int>(std::floor(std::log10(value)));
  double scaled = value / std::pow(10.0, e - digits + 1);
  double m = std::nearbyint(scaled);
  double top = std::pow(10.0, digits);
  if (m >= top) {
    m = std::nearbyint(m / 10.0);
    ++e;
  }
  if (m < 1) m = 1;
  Integer mant;
  mpz_set_d(mant.get_mpz_t(), m);
  return Rational(mant) * pow10(e - digits + 1);
}

}  // namespace hypsign
