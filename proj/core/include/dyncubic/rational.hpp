#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dyncubic::algebra {

// Exact arbitrary-precision rational number. Always kept in canonical form
// (reduced, positive denominator) by the backing representation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "17", "-3/4". Throws std::invalid_argument on malformed input.
Rational rat_from_string(const std::string& s);

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

std::size_t hash_rational(const Rational& r);

// Floor of the exact square root; 'exact' reports whether n is a perfect square.
Integer isqrt(const Integer& n, bool& exact);

}  // namespace dyncubic::algebra
