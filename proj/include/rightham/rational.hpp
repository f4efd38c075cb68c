#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rightham {

/// Exact rational number. GMP keeps every value canonical (reduced,
/// positive denominator, zero as 0/1) after each arithmetic operation.
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q" and finite decimals such as "-0.25" (converted
/// exactly). Throws InvalidInput on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// value^exponent for a nonnegative integer exponent.
Rational pow(const Rational& value, unsigned exponent);

double to_double(const Rational& value);

}  // namespace rightham
