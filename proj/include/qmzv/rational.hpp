#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qmzv {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" or "p"; canonical form always.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q" with optional surrounding spaces. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonicalized n/d.
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
Rational pow(const Rational& r, unsigned e);

}  // namespace qmzv
