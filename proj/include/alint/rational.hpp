#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace alint {

/// Exact rational number; all arithmetic in the library is carried out in
/// this type, never in floating point.
using Rational = mpq_class;

Rational rat(long num, long den = 1);

/// Accepts "p", "p/q" and decimal literals like "0.25" (read exactly, so
/// "0.5" is 1/2). Returns nothing for malformed text or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical form: "p" or "p/q" with q > 1 and the sign on the numerator.
std::string to_string(const Rational& q);

Rational rat_abs(const Rational& q);

}  // namespace alint
