#pragma once

#include <string>

#include "forge/cochain.hpp"

namespace forge {

// Polyvector field: a super-polynomial in r, u, theta with no dtheta
// monomials. The theta-generators are the odd polyvector directions.
using PolyvectorField = SuperPolynomial;

// Evaluation at the generic odd element: every length-s table entry whose
// slots are all theta-generators contributes its value multiplied by the
// matching u's (even, so they commute out with no sign):
//   phi(alpha) = sum_s sum_{j_1,...,j_s} u_{j_1}...u_{j_s}
//                       alpha(theta_{j_1}, ..., theta_{j_s}).
// Linear, and degree-compatible: every output monomial has Polyvector
// degree equal to alpha's declared degree.
PolyvectorField phi(const HochschildCochain& alpha);

// phi of the order-1-in-r component of mu.
PolyvectorField deformation_class(const AInfinityStructure& mu);

struct TypeAReport {
  bool passed = false;
  PolyvectorField discrepancy;  // phi(mu^{>=3}) mod r-order >= 2, minus target
  std::string summary;
};

// Passes iff the order-0 product of mu is the exterior product and the
// length >= 3 components evaluate under phi to
//   u_1...u_n + sum_j r_j u_j^n
// modulo terms of r-order >= 2. The discrepancy polynomial localizes any
// failure. Equivariance is reported separately by invariant_check.
TypeAReport type_a_check(const AInfinityStructure& mu, int n);

}  // namespace forge
