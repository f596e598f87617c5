#pragma once

#include <stdexcept>
#include <vector>

#include "forge/cochain.hpp"

namespace forge {

struct NotInvertible : std::runtime_error {
  explicit NotInvertible(const std::string& w) : std::runtime_error(w) {}
};

// Degree-f(1) cochain supported in lengths >= 1 whose order-0 length-1
// component is an invertible linear map on the exterior algebra.
struct FormalDiffeomorphism {
  HochschildCochain F;
};

FormalDiffeomorphism identity_diffeo(int n, int a, const Datum& d, int L, int N);

// Strict inverse: G with G <> F = F <> G = id within truncation, built by
// induction on length + r-order. Throws NotInvertible when the order-0
// length-1 component is singular.
FormalDiffeomorphism invert_formal_diffeo(const FormalDiffeomorphism& F);

// F_* alpha = (F o alpha) <> F^{-1}: degree-preserving conjugation of any
// cochain; commutes with the Gerstenhaber bracket.
HochschildCochain pushforward_cochain(const FormalDiffeomorphism& F,
                                      const HochschildCochain& alpha);

// F_* mu = (F o mu) <> F^{-1}.
AInfinityStructure pushforward(const FormalDiffeomorphism& F, const AInfinityStructure& mu);

// psi in R_0 with psi(0) != 0; psi^*(r^c) = psi^{|c|} r^c is the induced
// graded ring automorphism.
struct RingAutomorphism {
  SuperPolynomial psi;
};

// Validates: r-only, every monomial of Y-degree zero, constant term nonzero.
RingAutomorphism make_ring_automorphism(const SuperPolynomial& psi, const Datum& d, int a);

// psi . mu: conjugation by psi^*. Inputs from the exterior algebra have
// order 0 and are fixed, so only values transform: r^c |-> psi^{|c|} r^c.
AInfinityStructure aut_act(const RingAutomorphism& psi, const AInfinityStructure& mu);
HochschildCochain aut_act_cochain(const SuperPolynomial& psi, const HochschildCochain& c);

// Permutations are 0-based bijections of {0, ..., n-1} acting on generator
// indices; h(theta_j) = theta_{h(j)}, h(r_j) = r_{h(j)}, h(u_j) = u_{h(j)}
// with no extra signs on generators (reordering Koszul signs still apply).
using Permutation = std::vector<int>;

std::vector<Permutation> all_permutations(int n);
SuperPolynomial sp_permute(const Permutation& h, const SuperPolynomial& p);

// (h . phi)(a_s, ..., a_1) = h( phi(h^{-1} a_s, ..., h^{-1} a_1) ).
HochschildCochain symmetric_action(const Permutation& h, const HochschildCochain& phi);

// phi == h . phi for every h in S_n.
bool invariant_check(const HochschildCochain& phi);

// Average of h . phi over all of S_n.
HochschildCochain symmetrize(const HochschildCochain& phi);

}  // namespace forge
