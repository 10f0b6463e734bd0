#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace freemv {

// Exact arbitrary-precision scalars. mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation, but
// not after two-argument construction; use frac() for that.
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q" (surrounding whitespace allowed).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// p/q in lowest terms. Throws std::domain_error when q == 0.
Rational frac(long p, long q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational abs(const Rational& q);
Rational floor_rational(const Rational& q);

/// Reduces q into the half-open window (lo, lo + period].
Rational wrap_half_open(const Rational& q, const Rational& lo, const Rational& period);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace freemv
