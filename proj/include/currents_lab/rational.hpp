#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace currents_lab {

// Exact rationals throughout. Arithmetic results are canonical, but the
// two-argument mpq_class constructor is not; build fractions with ratio().
using Rational = mpq_class;

// p/q in lowest terms. q must be nonzero.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "p", "p/q" and a leading '-'. Throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational abs_value(const Rational& value) { return abs(value); }

}  // namespace currents_lab
