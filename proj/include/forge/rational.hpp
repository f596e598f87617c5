#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

// Exact rational scalar. mpq_class keeps the canonical form we need
// (gcd(num, den) = 1, den > 0) as long as values are built through the
// helpers below, which canonicalize after raw construction.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q". Used by the config parser and tests.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// Canonical serialization: "p" for integers, "p/q" otherwise.
inline std::string rational_str(const Rational& q) {
  return q.get_str();
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_even(const Integer& z) { return mpz_even_p(z.get_mpz_t()) != 0; }

// Parity helper used throughout the sign bookkeeping.
inline int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

}  // namespace forge
