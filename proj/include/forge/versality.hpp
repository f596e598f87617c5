#pragma once

#include <stdexcept>
#include <string>

#include "forge/gauge.hpp"

namespace forge {

// The order-k residual class is not expressible through the first-order
// class and a coboundary, so the two deformations are not related by a
// ring automorphism and a formal diffeomorphism.
struct ObstructionNonzero : std::runtime_error {
  int order;
  explicit ObstructionNonzero(int k)
      : std::runtime_error("versality obstruction at r-order " + std::to_string(k)),
        order(k) {}
};

// A first-order deformation class vanishes, so the order-by-order scalar
// normalization has nothing to pivot on.
struct FirstOrderZero : std::runtime_error {
  FirstOrderZero() : std::runtime_error("first-order deformation class vanishes") {}
};

struct VersalitySolution {
  RingAutomorphism psi;
  FormalDiffeomorphism F;
};

// Solves psi . mu = F_* eta order by order in r: at order k the residual
// D_k of the partial solution satisfies
//   psi_{k-1} . mu_1 + delta(F_k) = -D_k,
// a linear system over the degree-0 automorphism coefficients of order
// k-1 and the degree-f(1) cochain piece of order k. The returned pair
// satisfies the defining identity exactly within truncation. With
// `equivariant`, mu and eta must be symmetric-group invariant and each
// F_k is averaged over the group; psi is always built from orbit sums.
//
// Requires mu and eta compatible, minimal, with equal order-0 parts.
// Throws FirstOrderZero when either first-order class is trivial and
// ObstructionNonzero(k) when the order-k system is inconsistent.
VersalitySolution versality_solve(const AInfinityStructure& mu, const AInfinityStructure& eta,
                                  bool equivariant = false);

}  // namespace forge
