#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace betatail {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// num/den reduced to lowest terms.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", an integer, or a plain decimal literal ("0.25", "-3.5e-2")
/// into the exact rational it denotes. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// True if the text is written as "p/q".
bool is_fraction_literal(std::string_view text);

/// Nearest double, ties to even (mpq_get_d truncates).
double to_double(const Rational& q);
inline double to_double(double x) { return x; }

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double x) { return (x > 0) - (x < 0); }

Rational factorial(std::uint32_t n);

}  // namespace betatail
