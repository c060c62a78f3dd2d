#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace substab {

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Always kept in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "3/10", "-2", "7" (whitespace around the value is ignored).
/// Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" string, or "num" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace substab
