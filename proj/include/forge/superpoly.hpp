#pragma once

#include <array>
#include <bit>
#include <climits>
#include <cstdint>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/grading.hpp"
#include "forge/rational.hpp"

namespace forge {

// Hard cap on the number of variables of each kind (r_j, u_j, theta_j,
// dtheta_j). Everything in scope has n <= 6.
constexpr int kMaxN = 8;

struct NoEvenPart : std::runtime_error {
  explicit NoEvenPart(const std::string& w) : std::runtime_error(w) {}
};

// Monomial r^c u^b theta^J dtheta^K in the canonical generator order
// theta_1 < ... < theta_n < dtheta_1 < ... < dtheta_n.
struct SuperMonomial {
  std::array<int8_t, kMaxN> c{};  // r exponents
  std::array<int8_t, kMaxN> b{};  // u exponents
  uint32_t J = 0;                 // theta subset
  uint32_t K = 0;                 // dtheta subset

  int rorder() const {
    int s = 0;
    for (int8_t v : c) s += v;
    return s;
  }
  int uorder() const {
    int s = 0;
    for (int8_t v : b) s += v;
    return s;
  }
  int parity() const { return (std::popcount(J) + std::popcount(K)) & 1; }

  bool operator==(const SuperMonomial& o) const {
    return J == o.J && K == o.K && b == o.b && c == o.c;
  }
  bool operator<(const SuperMonomial& o) const {
    if (c != o.c) return c < o.c;
    if (b != o.b) return b < o.b;
    if (J != o.J) return J < o.J;
    return K < o.K;
  }
};

// Sign of merging two normal-ordered odd words (bits: theta occupy 0..n-1,
// dtheta occupy n..2n-1). Returns 0 on a repeated generator.
inline int merge_sign(uint64_t o1, uint64_t o2) {
  if (o1 & o2) return 0;
  int inv = 0;
  uint64_t w = o2;
  while (w) {
    int g = std::countr_zero(w);
    w &= w - 1;
    inv += std::popcount(o1 >> (g + 1));
  }
  return (inv & 1) ? -1 : 1;
}

struct TruncationPolicy {
  int max_r = INT_MAX;    // discard |c| > max_r
  int max_u = INT_MAX;    // discard |b| > max_u
  int max_len = INT_MAX;  // cochain length bound, used by the cochain layer

  bool keeps(const SuperMonomial& m) const {
    return m.rorder() <= max_r && m.uorder() <= max_u;
  }
};

// Exact-rational supercommutative polynomial in r, u, theta, dtheta.
struct SuperPolynomial {
  int n = 0;
  std::map<SuperMonomial, Rational> t;

  SuperPolynomial() = default;
  explicit SuperPolynomial(int nn) : n(nn) {
    if (nn < 0 || nn > kMaxN) throw std::invalid_argument("bad variable count");
  }

  bool zero() const { return t.empty(); }
  void add_term(const SuperMonomial& m, const Rational& coef);

  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator-=(const SuperPolynomial& o);
  SuperPolynomial operator+(const SuperPolynomial& o) const;
  SuperPolynomial operator-(const SuperPolynomial& o) const;
  SuperPolynomial operator-() const;
  SuperPolynomial operator*(const Rational& k) const;
  bool operator==(const SuperPolynomial& o) const { return n == o.n && t == o.t; }

  // All monomials share one parity; throws if mixed. -1 for the zero poly.
  int parity() const;

  std::string str() const;
};

SuperPolynomial sp_zero(int n);
SuperPolynomial sp_const(int n, const Rational& k);
SuperPolynomial sp_u(int n, int j, int pow = 1);
SuperPolynomial sp_r(int n, int j, int pow = 1);
SuperPolynomial sp_theta(int n, uint32_t J);
SuperPolynomial sp_dtheta(int n, uint32_t K);

SuperPolynomial mul(const SuperPolynomial& x, const SuperPolynomial& y);
SuperPolynomial mul(const SuperPolynomial& x, const SuperPolynomial& y,
                    const TruncationPolicy& pol);
SuperPolynomial truncate(const SuperPolynomial& x, const TruncationPolicy& pol);

// Left odd derivation d/dtheta_j.
SuperPolynomial d_dtheta(int j, const SuperPolynomial& p);
// Ordinary partial derivative in the even variable u_j.
SuperPolynomial d_du(int j, const SuperPolynomial& p);
// Restriction to r-order exactly k.
SuperPolynomial r_order_part(const SuperPolynomial& p, int k);

// w = sum_j u_j w_j via the Euler identity; requires |b| >= 1 per monomial.
std::vector<SuperPolynomial> euler_split(const SuperPolynomial& w);

// iota_{dW}: eta |-> sum_j (dW/du_j) * d_dtheta(j, eta).
SuperPolynomial contract_dW(const SuperPolynomial& W, const SuperPolynomial& eta);

// Common YDegree of all monomials (CochainInput/Operator/Polyvector
// convention); nullopt for the zero polynomial; throws IllFormed when the
// polynomial is not homogeneous.
std::optional<YDegree> homogeneous_degree(const SuperPolynomial& p, const Datum& datum,
                                          int a, DegreeConvention conv);

}  // namespace forge
