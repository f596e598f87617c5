#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "forge/grading.hpp"
#include "forge/hpl.hpp"
#include "forge/superpoly.hpp"

namespace forge {

// square() found delta^2 != s*id: the residual operator polynomial is
// attached for inspection.
struct NotScalar : std::runtime_error {
  SuperPolynomial residual;
  NotScalar(const std::string& msg, SuperPolynomial res)
      : std::runtime_error(msg), residual(std::move(res)) {}
};

// A (candidate) matrix factorization of w on the free module S[theta]:
// an odd operator delta with delta^2 = w * id.  The operator is stored as
// a normal-ordered element of S[theta, dtheta] rather than as a 2^n x 2^n
// matrix; op_mul/op_apply give the algebra and module actions.
//
// `graded` records whether w is homogeneous of degree f(2) for the standard
// datum, i.e. whether the factorization lives in the graded world where
// delta must have degree f(1).  Ungraded superpotentials (for example with
// deformation coefficients specialized to rationals) still make sense as
// matrix factorizations; degree assertions are simply vacuous for them.
struct MatrixFactorization {
  int n = 0;
  int a = 1;
  Datum datum;
  SuperPolynomial w;
  SuperPolynomial delta;
  bool graded = false;
};

// The standard invertible-chain-rule factorization of w: writing
// w = sum_j u_j w_j via the Euler decomposition (w_j = sum_b c_b (b_j/|b|)
// u^{b - e_j} over the monomials of w), set
//   delta = sum_j ( u_j dtheta_j + w_j theta_j ).
// Requires every monomial of w to have positive u-degree and w to be even
// (theta-free); throws NoEvenPart otherwise.  a defaults to n, the weight
// for which the deformed volume superpotential is graded.
MatrixFactorization build_O0(const SuperPolynomial& w, int n, int a = -1);

// delta^2, which must be a scalar (a theta- and dtheta-free polynomial,
// returned as an element of S).  Throws NotScalar with the full residual
// when delta^2 has any theta or dtheta component.
SuperPolynomial square(const MatrixFactorization& mf);

struct MfDegreeReport {
  bool passed = false;
  std::string summary;
  std::vector<std::string> violations;
};

// Degree audit of a graded factorization:
//   - every monomial of delta is odd;
//   - delta is homogeneous of degree f(1) in the operator grading;
//   - w is homogeneous of degree f(2) in the polyvector grading;
//   - each module basis element theta^J carries the declared cochain-input
//     degree (-|J|, y_J).
// For mf.graded == false the two homogeneity checks are reported as skipped
// (the factorization is still well-formed, just not graded).
MfDegreeReport mf_degree_check(const MatrixFactorization& mf);

// The endomorphism DGA seed for homological perturbation: splits delta into
// delta0 (the dtheta part, sum u_j dtheta_j for build_O0 output) and delta1
// (the theta part), and packages them with a truncation policy into the
// transfer datum whose differentials are the graded commutators [delta0, -]
// and [delta1, -].  Requires square(mf) == w (throws IllFormed otherwise).
TransferData endo_dga(const MatrixFactorization& mf, const TruncationPolicy& pol);

// The deformed volume superpotential u_1...u_n + sum_j r_j u_j^n, the running
// Fermat-type example; graded of degree f(2) at weight a = n.
SuperPolynomial fermat_potential(int n);

// The same superpotential with every deformation coefficient r_j specialized
// to the rational value r (an honest element of Q[u]).
SuperPolynomial fermat_potential_at(int n, const Rational& r);

}  // namespace forge
