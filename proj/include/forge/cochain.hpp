#pragma once

#include <map>
#include <string>
#include <vector>

#include "forge/grading.hpp"
#include "forge/superpoly.hpp"

namespace forge {

// A length-s basis tuple of exterior monomials. Entries are theta-masks;
// index 0 holds the *rightmost* argument a_1 of phi^s(a_s, ..., a_1).
using ThetaTuple = std::vector<uint32_t>;

// Multilinear cochain on the exterior algebra with values in A (x) R:
// a sparse table from basis tuples to u-free super-polynomials (theta and
// r only). A length-s entry shifting Y-degree by y' belongs to the cochain
// of declared degree f(s) + y'; `ydeg` stores that declared total degree,
// so every stored value must have degree ydeg - f(s) + sum(deg inputs).
struct HochschildCochain {
  int n = 0;
  int a = 1;        // r-weight: deg r_j = (2-2a, a*y_j)
  Datum datum;      // ambient grading datum G^n_1
  YDegree ydeg;     // declared total degree
  int max_len = 8;  // L: components of length > L are discarded
  int max_r = 8;    // N: value monomials of r-order > N are discarded
  std::map<ThetaTuple, SuperPolynomial> table;

  HochschildCochain() = default;
  HochschildCochain(int n_, int a_, Datum d, YDegree y, int L, int N)
      : n(n_), a(a_), datum(std::move(d)), ydeg(std::move(y)), max_len(L), max_r(N) {}

  bool is_zero() const { return table.empty(); }
  int parity() const { return ydeg.sigma(); }

  // Accumulates val at key, respecting truncation and pruning zeros.
  // Values must be u-free and dtheta-free.
  void add_term(const ThetaTuple& key, const SuperPolynomial& val);
  const SuperPolynomial* find(const ThetaTuple& key) const;

  HochschildCochain& operator+=(const HochschildCochain& o);
  HochschildCochain& operator-=(const HochschildCochain& o);
  HochschildCochain operator+(const HochschildCochain& o) const;
  HochschildCochain operator-(const HochschildCochain& o) const;
  HochschildCochain operator-() const;
  HochschildCochain operator*(const Rational& k) const;
  bool operator==(const HochschildCochain& o) const;
  bool operator!=(const HochschildCochain& o) const { return !(*this == o); }

  HochschildCochain length_part(int s) const;  // keys of length s only
  HochschildCochain order_part(int j) const;   // value monomials of r-order j
  int min_length() const;                      // -1 when empty
  int max_length() const;                      // -1 when empty

  // Checks every entry against the declared degree; throws IllFormed.
  void validate() const;

  std::string str() const;
};

// Same ambient, same r-weight, same truncation, same datum presentation.
bool cochains_compatible(const HochschildCochain& x, const HochschildCochain& y);
void require_compatible(const HochschildCochain& x, const HochschildCochain& y);

HochschildCochain cc_zero(int n, int a, const Datum& d, const YDegree& y, int L, int N);
// Length-1 identity theta^K -> theta^K, degree f(1).
HochschildCochain cc_identity(int n, int a, const Datum& d, int L, int N);
// Length-0 cochain with the given (nonzero homogeneous) value.
HochschildCochain cc_constant(int n, int a, const Datum& d, int L, int N,
                              const SuperPolynomial& value);

// A-infinity structure: a degree-f(2) cochain mu with mu o mu = 0 within
// truncation (verified by check_ainf, not assumed).
struct AInfinityStructure {
  HochschildCochain mu;

  bool minimal() const;  // no length-0 or length-1 components
  bool curved() const;   // a length-0 component is present
};

// The exterior product as an A-infinity structure:
// mu^2(a2, a1) = (-1)^{sigma(a1)} a2 ^ a1.
AInfinityStructure exterior_mu2(int n, int a, const Datum& d, int L, int N);

// Gerstenhaber product phi o psi: inserts each value monomial of psi into
// every slot of phi with the sign (sigma(psi)+1)(sigma(a_1)+...+sigma(a_i)-i).
// Degree deg phi + deg psi + f(-1).
HochschildCochain gerstenhaber_circ(const HochschildCochain& phi,
                                    const HochschildCochain& psi);

// [phi, psi] = phi o psi - (-1)^{(sigma phi + 1)(sigma psi + 1)} psi o phi.
HochschildCochain bracket(const HochschildCochain& phi, const HochschildCochain& psi);

// delta(tau) = [mu, tau]; degree raised by f(1).
HochschildCochain hochschild_differential(const AInfinityStructure& mu,
                                          const HochschildCochain& tau);

// phi <> F: sum over ordered partitions of the inputs into F-blocks, the
// bottom block feeding phi's rightmost slot; no signs. Requires F of degree
// f(1) supported in lengths >= 1.
HochschildCochain diamond(const HochschildCochain& phi, const HochschildCochain& F);

// Yoneda product phi . psi relative to mu: the double insertion
// mu(..., phi(...), ..., psi(...), ...) with the dagger sign; degree
// deg phi + deg psi.
HochschildCochain yoneda(const HochschildCochain& phi, const HochschildCochain& psi,
                         const AInfinityStructure& mu);

// Residual of the A-infinity relation; never throws.
struct AinfReport {
  bool passed = false;
  HochschildCochain residual;  // mu o mu within truncation
  std::string summary;
};
AinfReport check_ainf(const AInfinityStructure& s);

}  // namespace forge
