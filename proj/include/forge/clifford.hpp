#pragma once

#include "forge/superpoly.hpp"

namespace forge {

// The algebra S[theta, dtheta] acting on the free module S[theta]: theta_j
// multiplies from the left, dtheta_j is the left odd derivation d/dtheta_j.
// Under this action the generators obey the canonical anticommutation
// relations  dtheta_j theta_k + theta_k dtheta_j = delta_{jk}, while thetas
// anticommute among themselves and dthetas do too.  A SuperPolynomial is
// read as a normal-ordered operator word (all thetas left of all dthetas,
// each ascending); op_mul composes two such operators and returns the
// normal-ordered result, unlike mul() which treats theta and dtheta as
// independent exterior generators.
SuperPolynomial op_mul(const SuperPolynomial& x, const SuperPolynomial& y);
SuperPolynomial op_mul(const SuperPolynomial& x, const SuperPolynomial& y,
                       const TruncationPolicy& pol);

// Action of an operator on an element of the module S[theta] (a polynomial
// with no dtheta part): the dtheta-free component of op_mul(op, f).
SuperPolynomial op_apply(const SuperPolynomial& op, const SuperPolynomial& f);
SuperPolynomial op_apply(const SuperPolynomial& op, const SuperPolynomial& f,
                         const TruncationPolicy& pol);

// Graded commutator [x, y] = x y - (-1)^{sigma(x) sigma(y)} y x; both
// factors must be sigma-homogeneous.
SuperPolynomial op_commutator(const SuperPolynomial& x, const SuperPolynomial& y);
SuperPolynomial op_commutator(const SuperPolynomial& x, const SuperPolynomial& y,
                              const TruncationPolicy& pol);

}  // namespace forge
