#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hypsign {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses a decimal literal ("-0.0033203125", "1.0011849e6", "1e-8", "3168")
/// into the exact rational it denotes. Throws std::invalid_argument.
Rational parse_decimal(std::string_view text);

/// Parses either a decimal literal or a fraction "p/q".
Rational parse_rational(std::string_view text);

/// True iff the denominator has no prime factors other than 2 and 5.
bool is_terminating_decimal(const Rational& q);

/// Exact decimal expansion; requires is_terminating_decimal(q).
std::string to_exact_decimal(const Rational& q);

/// Decimal approximation rounded to `significant` digits (half away from
/// zero), trailing zeros trimmed. Scientific notation outside [1e-7, 1e15).
std::string to_decimal(const Rational& q, int significant = 12);

/// Exact decimal when it fits within `significant` digits, otherwise the
/// rounded approximation.
std::string to_display(const Rational& q, int significant = 12);

/// Exact decimal when terminating, "p/q" otherwise; parse_rational reads it
/// back.
std::string to_exact_string(const Rational& q);

/// Positive `value` rounded to `digits` significant decimal digits, exactly.
Rational round_to_digits(double value, int digits);

int sign(const Rational& q);
Rational abs(const Rational& q);
Rational pow10(int exponent);

}  // namespace hypsign
