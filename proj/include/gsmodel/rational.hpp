#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gsm {

/// Exact arbitrary-precision rational used for every score, weight and counter.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "-37.55" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Shorthand for parse_rational, for constants written as decimal strings.
inline Rational rat(std::string_view text) { return parse_rational(text); }

/// Exact decimal when the denominator has only factors 2 and 5, "p/q" otherwise.
/// parse_rational(to_string(x)) == x for every x.
std::string to_string(const Rational& value);

/// Rounded decimal for human-readable tables.
std::string to_fixed(const Rational& value, int digits);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational square(const Rational& value) { return value * value; }

inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace gsm
