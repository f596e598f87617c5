#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/cochain.hpp"
#include "forge/grading.hpp"
#include "forge/superpoly.hpp"

namespace forge {

// minimal_model rejects superpotentials with a monomial of u-degree < 3;
// below that threshold the transferred structure acquires length-1 (or
// curvature) components and the minimality claims do not apply.
struct DegreeTooLow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- encoding conversions ------------------------------------------------
// The homotopy-transfer complex C = R[dtheta] and the cochain-side exterior
// algebra R[theta] are isomorphic free super-modules; both list generators
// in increasing index order, so the correspondence dtheta^K <-> theta^K is
// coefficient- and sign-transparent. Inputs must be u-free and carry only
// the one kind of odd generator; throws IllFormed otherwise.
SuperPolynomial dtheta_to_theta(const SuperPolynomial& p);
SuperPolynomial theta_to_dtheta(const SuperPolynomial& p);

// Sign twist (-1)^{sigma(m)} per monomial: the dictionary between the
// graded-commutator calculus on B = S[theta, dtheta] and the bar-convention
// operations used by the tree sum (mu^1 = d o twist, mu^2 = product o twist
// on the rightmost factor).
SuperPolynomial parity_twist(const SuperPolynomial& p);

// Parity split helpers (by sigma of each monomial).
SuperPolynomial even_part(const SuperPolynomial& p);
SuperPolynomial odd_part(const SuperPolynomial& p);

// --- the contraction operators ------------------------------------------
// htilde(f theta^J dtheta^K) = sum_j (df/du_j) theta_j theta^J dtheta^K.
// Satisfies the weight identity [d0, htilde] = (|b| + |J|) id monomial-wise.
SuperPolynomial op_htilde(const SuperPolynomial& x);
// h = htilde / (|b| + |J|) on monomials of positive weight, 0 on weight
// zero (b = 0, J = empty). Gives [d0, h] = id - i p with h^2 = hi = ph = 0.
SuperPolynomial op_h(const SuperPolynomial& x);

// --- transfer datum -------------------------------------------------------
// The contraction package for the endomorphism DGA of a Koszul matrix
// factorization: B = S[theta, dtheta] with differential d0 = [delta0, -],
// perturbation d1 = [delta1, -], retract C = R[dtheta] with zero
// differential, inclusion i, projection p, homotopy h.
//
// `homotopy` may be replaced (e.g. by op_htilde) to probe how the side
// conditions fail; when empty, op_h is used.
struct TransferData {
  int n = 0;
  int a = 1;
  Datum datum;
  SuperPolynomial delta0;  // sum_j u_j dtheta_j
  SuperPolynomial delta1;  // sum_j w_j theta_j
  TruncationPolicy pol;
  std::function<SuperPolynomial(const SuperPolynomial&)> homotopy;

  // Graded commutators [delta0, -], [delta1, -] (odd derivations of the
  // operator algebra under op_mul).
  SuperPolynomial d0(const SuperPolynomial& x) const;
  SuperPolynomial d1(const SuperPolynomial& x) const;

  SuperPolynomial include(const SuperPolynomial& c) const;  // i: C -> B
  SuperPolynomial project(const SuperPolynomial& x) const;  // p: B -> C
  SuperPolynomial h(const SuperPolynomial& x) const;        // homotopy on B

  // Bar-convention dressings: the shifted-complex operations whose
  // compositions along trees carry no hidden context signs beyond the
  // Koszul rule implemented by the evaluator. The inclusion/projection
  // dressing carries the parity twist; it cancels in i p and p i, so the
  // contraction identities are unchanged, and it normalizes the transferred
  // operations so that the deformation class reproduces the superpotential
  // with coefficient +1.
  SuperPolynomial bar_d0(const SuperPolynomial& x) const;      // d0 o twist
  SuperPolynomial bar_d1(const SuperPolynomial& x) const;      // d1 o twist
  SuperPolynomial bar_h(const SuperPolynomial& x) const;       // h o twist
  SuperPolynomial bar_include(const SuperPolynomial& c) const; // i o twist
  SuperPolynomial bar_project(const SuperPolynomial& x) const; // twist o p
  SuperPolynomial bar_mu2(const SuperPolynomial& x2, const SuperPolynomial& x1) const;

  // Perturbation-series chains (finite by nilpotence + truncation):
  //   up_chain   = sum_j (bar_d1 o bar_h)^j
  //   down_chain = sum_j (bar_h o bar_d1)^j
  SuperPolynomial up_chain(const SuperPolynomial& x) const;
  SuperPolynomial down_chain(const SuperPolynomial& x) const;
  SuperPolynomial perturbed_include(const SuperPolynomial& c) const;  // i' = down_chain o bar_include
  SuperPolynomial perturbed_project(const SuperPolynomial& x) const;  // p' = bar_project o up_chain
  SuperPolynomial perturbed_h(const SuperPolynomial& x) const;        // h' = bar_h o up_chain
};

struct TransferReport {
  bool passed = false;
  std::string summary;
  std::vector<std::string> violations;
};

// Verifies, monomial by monomial over the basis u^b theta^J dtheta^K with
// |b| <= max_udeg (r-exponents omitted; every operator is R-linear):
//   d0^2 = 0, d1^2 = 0, [d0, d1] = 0, p i = id, h^2 = 0, h i = 0, p h = 0,
//   i p = id - d0 h - h d0, [d0, htilde] = (|b|+|J|) id, (h d1)^{n+1} = 0.
TransferReport check_transfer(const TransferData& td, int max_udeg);

// --- semistable planar trees ----------------------------------------------
// Rooted planar tree; an empty child list marks a leaf. Interior vertices
// of arity 1 carry the perturbation, arity >= 2 carry the DGA operation of
// that arity (zero above arity 2, which is the algebraic vanishing that
// selects the contributing shapes).
struct PlanarTree {
  std::vector<PlanarTree> children;

  bool is_leaf() const { return children.empty(); }
  int leaves() const;
  int vertices() const;
  std::string str() const;  // e.g. "(.(..))" with '.' per leaf
};

// All semistable planar trees with s leaves whose maximal unary chains have
// length <= unary_bound, in a deterministic canonical order (chain length
// ascending, then vertex arity, then child lists lexicographically).
std::vector<PlanarTree> enumerate_trees(int s, int unary_bound);

// Independent count of enumerate_trees(s, unary_bound).size() by a
// generating-function recursion; used as a cross-check oracle.
long count_trees(int s, int unary_bound);

// --- single-tree evaluation ------------------------------------------------
// Role of a tree inside the transfer: Structure-trees compute nu (leaves
// embedded by i, root projected by p); Inclusion-trees compute the
// quasi-isomorphism I: (C, nu) -> (B, mu~) (leaves by i, root edge carrying
// the homotopy; the vertexless tree is the identity).
enum class TreeRole { Structure, Inclusion };

// Evaluates one dressed tree on a tuple of sigma-homogeneous values
// (index 0 = rightmost argument), composing bottom-up with Koszul context
// signs from the bar parities.
SuperPolynomial eval_tree(const TransferData& td, const PlanarTree& t,
                          const std::vector<SuperPolynomial>& inputs, TreeRole role);

// --- minimal model ----------------------------------------------------------
// The transferred structure nu plus both quasi-isomorphisms. itable[s]
// holds the arity-s component of I on basis tuples of dtheta-masks
// (I^1 = perturbed inclusion, I^s = homotopy-rooted tree sum); values are
// elements of B. nu's table stores the projected tree sum, converted to the
// cochain encoding.
struct MinimalModel {
  AInfinityStructure nu;
  TransferData data;
  std::vector<std::map<ThetaTuple, SuperPolynomial>> itable;  // itable[s], 1 <= s <= L

  // Arity-s component of the inclusion I on C-valued inputs (dtheta
  // encoding, index 0 = rightmost); multilinear table evaluation.
  SuperPolynomial I(const std::vector<SuperPolynomial>& inputs) const;
  // Arity-s component of the projection P: (B, mu~) -> (C, nu) by the
  // perturbation series on the tensor coalgebra (P^1 = perturbed
  // projection).
  SuperPolynomial P(const std::vector<SuperPolynomial>& inputs) const;

  SuperPolynomial I1(const SuperPolynomial& c) const;
  SuperPolynomial P1(const SuperPolynomial& x) const;
};

// Transfers the endomorphism DGA of the standard factorization of w onto
// R[dtheta]: nu^s = sum over semistable planar trees (evaluated by the
// unique root-decomposition recursion, which reproduces the tree sum
// exactly), with nu^1 = 0 and nu^2 the exterior product. Throws
// DegreeTooLow unless every monomial of w has u-degree >= 3. The r-weight
// defaults to a = n, the weight for which the deformed volume superpotential
// is graded; pass a >= 1 to override.
MinimalModel minimal_model(const SuperPolynomial& w, int n,
                           const TruncationPolicy& pol, int a = -1);

// Closed-form arity-k contribution: the constant term (in u) of
// d_{i_k} ... d_{i_2} w_{i_1} divided by (k-1)!, as an r-polynomial.
// Indices are 0-based; requires k >= 2 and w admissible for euler_split.
SuperPolynomial closed_form_nu(const SuperPolynomial& w, const std::vector<int>& inputs);

// Comparison of nu against closed_form_nu on every length-k tuple of
// singleton masks: nu^k(dtheta_{j_k}, ..., dtheta_{j_1}) must equal
// sign * closed_form_nu(w, tuple-in-`orientation`) for one global sign and
// one global orientation per arity. orientation +1 feeds (j_1, ..., j_k)
// (rightmost argument first), -1 the reverse.
struct ClosedFormComparison {
  int arity = 0;
  bool consistent = false;
  int sign = 0;         // the single global sign (0 if nu^k = 0 = closed form)
  int orientation = 0;  // +1 / -1 (0 if both match or everything vanishes)
  std::vector<std::string> mismatches;
};
ClosedFormComparison compare_closed_form(const MinimalModel& mm,
                                         const SuperPolynomial& w, int arity);

// A-infinity morphism residuals (zero iff the relation holds on the given
// inputs within truncation).
// Inclusion I: (C, nu) -> (B, mu~) on a basis key:
//   sum_k sum_{splits} mu~^k(I, ..., I) - sum_{j,i} +-I(..., nu^j(...), ...).
SuperPolynomial inclusion_residual(const MinimalModel& mm, const ThetaTuple& key);
// Projection P: (B, mu~) -> (C, nu) on arbitrary sigma-homogeneous inputs:
//   sum_k sum_{splits} nu^k(P, ..., P) - sum_{j,i} +-P(..., mu~^j(...), ...).
SuperPolynomial projection_residual(const MinimalModel& mm,
                                    const std::vector<SuperPolynomial>& inputs);

}  // namespace forge
