#pragma once

#include <bit>
#include <random>

#include "forge/cochain.hpp"
#include "forge/gauge.hpp"

namespace forge_test {

using namespace forge;

// Random value monomial (theta and r only) with prescribed theta-parity, so
// the enclosing cochain satisfies the parity constraint
//   parity(value) == sigma(ydeg) + s + sum sigma(inputs)  (mod 2)
// that the formal sign identities (bracket antisymmetry, delta^2 = 0)
// depend on.
inline SuperPolynomial rand_value(std::mt19937_64& rng, int n, int N, int par) {
  for (int tries = 0; tries < 256; ++tries) {
    uint32_t J = static_cast<uint32_t>(rng() & ((1u << n) - 1));
    if ((std::popcount(J) & 1) != (par & 1)) continue;
    SuperMonomial m;
    m.J = J;
    if (N > 0) {
      int budget = static_cast<int>(rng() % static_cast<unsigned>(N + 1));
      for (int t = 0; t < budget; ++t) m.c[rng() % static_cast<unsigned>(n)] += 1;
    }
    long coef = static_cast<long>(rng() % 5) - 2;
    if (coef == 0) coef = 1;
    SuperPolynomial p(n);
    p.add_term(m, Rational(coef));
    return p;
  }
  return sp_zero(n);
}

// Parity-consistent random cochain of declared degree y with key lengths in
// [min_len, max_len].
inline HochschildCochain rand_cochain(std::mt19937_64& rng, int n, int a, const Datum& d,
                                      int L, int N, const YDegree& y, int min_len,
                                      int max_len, int entries) {
  HochschildCochain out(n, a, d, y, L, N);
  int sig = y.sigma();
  for (int e = 0; e < entries; ++e) {
    int s = min_len + static_cast<int>(rng() % static_cast<unsigned>(max_len - min_len + 1));
    ThetaTuple key(static_cast<size_t>(s));
    int kp = 0;
    for (int i = 0; i < s; ++i) {
      key[static_cast<size_t>(i)] = static_cast<uint32_t>(rng() & ((1u << n) - 1));
      kp += std::popcount(key[static_cast<size_t>(i)]);
    }
    out.add_term(key, rand_value(rng, n, N, (sig + s + kp) & 1));
  }
  return out;
}

// Identity plus parity-consistent corrections of degree f(1) in lengths
// [2, 3]: always a strictly invertible formal diffeomorphism.
inline FormalDiffeomorphism rand_diffeo(std::mt19937_64& rng, int n, int a, const Datum& d,
                                        int L, int N, int entries) {
  HochschildCochain F = cc_identity(n, a, d, L, N);
  int max_len = L >= 3 ? 3 : 2;
  F += rand_cochain(rng, n, a, d, L, N, f_degree(d, 1), 2, max_len, entries);
  return FormalDiffeomorphism{F};
}

}  // namespace forge_test
