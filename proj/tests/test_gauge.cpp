#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "forge/cochain.hpp"
#include "forge/gauge.hpp"
#include "helpers.hpp"

using namespace forge;
using forge_test::rand_cochain;
using forge_test::rand_diffeo;

namespace {

SuperPolynomial theta(int n, uint32_t J, long coef = 1) {
  return sp_theta(n, J) * Rational(coef);
}

SuperPolynomial big_t(int n) {  // T = r_1 ... r_n, degree 0 when a = n
  SuperPolynomial t = sp_const(n, Rational(1));
  for (int j = 0; j < n; ++j) t = mul(t, sp_r(n, j));
  return t;
}

// psi^* applied to an r-only polynomial: r^c -> psi^{|c|} r^c.
SuperPolynomial star_apply(const SuperPolynomial& psi, const SuperPolynomial& p, int n,
                           int a, const Datum& d, int N) {
  HochschildCochain w = cc_constant(n, a, d, 1, N, p);
  return *aut_act_cochain(psi, w).find({});
}

}  // namespace

TEST_CASE("identity diffeomorphism inverts to itself and fixes structures") {
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(3, 3, d, 5, 1);
  FormalDiffeomorphism id = identity_diffeo(3, 3, d, 5, 1);
  CHECK(invert_formal_diffeo(id).F == id.F);
  CHECK(pushforward(id, mu).mu == mu.mu);

  FormalDiffeomorphism twice{id.F * Rational(2)};
  CHECK(invert_formal_diffeo(twice).F == id.F * Rational(1, 2));
}

TEST_CASE("inverse of identity plus a single quadratic correction, by hand") {
  Datum d = datum_G(2, 1);
  int L = 5, N = 1;
  HochschildCochain id = cc_identity(2, 2, d, L, N);

  HochschildCochain c(2, 2, d, f_degree(d, 1), L, N);
  c.add_term({1, 2}, theta(2, 3));
  FormalDiffeomorphism F{id + c};

  FormalDiffeomorphism G = invert_formal_diffeo(F);
  // the correction's value mask never matches one of its own key masks, so
  // the inverse terminates at first order
  CHECK(G.F == id - c);
  CHECK(diamond(G.F, F.F) == id);
  CHECK(diamond(F.F, G.F) == id);
}

TEST_CASE("inverse of a length-1 formal series in r, by hand") {
  Datum d = datum_G(2, 1);
  int L = 3, N = 4;
  HochschildCochain id = cc_identity(2, 2, d, L, N);
  SuperPolynomial T = big_t(2);

  HochschildCochain c(2, 2, d, f_degree(d, 1), L, N);
  c.add_term({1}, mul(T, theta(2, 1)));
  FormalDiffeomorphism F{id + c};  // theta1 -> (1 + T) theta1

  HochschildCochain want = id;  // theta1 -> (1 - T + T^2) theta1
  want.add_term({1}, mul(T, theta(2, 1, -1)) + mul(mul(T, T), theta(2, 1)));

  FormalDiffeomorphism G = invert_formal_diffeo(F);
  CHECK(G.F == want);
  CHECK(diamond(G.F, F.F) == id);
  CHECK(diamond(F.F, G.F) == id);
}

TEST_CASE("non-invertible and ill-formed diffeomorphisms are rejected") {
  Datum d = datum_G(2, 1);
  HochschildCochain F(2, 2, d, f_degree(d, 1), 3, 1);
  CHECK_THROWS_AS(invert_formal_diffeo(FormalDiffeomorphism{F}), NotInvertible);

  for (uint32_t k = 1; k < 4; ++k) F.add_term({k}, theta(2, k));
  // mask 0 has no image: leading matrix is singular
  CHECK_THROWS_AS(invert_formal_diffeo(FormalDiffeomorphism{F}), NotInvertible);

  HochschildCochain W(2, 2, d, f_degree(d, 2), 3, 1);
  W.add_term({1}, theta(2, 1));
  CHECK_THROWS_AS(invert_formal_diffeo(FormalDiffeomorphism{W}), IllFormed);
}

TEST_CASE("pushforward satisfies the morphism equation and round-trips") {
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(3, 3, d, 4, 1);
  std::mt19937_64 rng(99);
  for (int it = 0; it < 3; ++it) {
    FormalDiffeomorphism F = rand_diffeo(rng, 3, 3, d, 4, 1, 2);
    AInfinityStructure pf = pushforward(F, mu);
    CHECK(diamond(pf.mu, F.F) == gerstenhaber_circ(F.F, mu.mu));
    CHECK(check_ainf(pf).passed);
    CHECK(pushforward(invert_formal_diffeo(F), pf).mu == mu.mu);
  }
}

TEST_CASE("pushforward is functorial in the diffeomorphism") {
  Datum d = datum_G(2, 1);
  AInfinityStructure mu = exterior_mu2(2, 2, d, 4, 1);
  std::mt19937_64 rng(123);
  FormalDiffeomorphism F = rand_diffeo(rng, 2, 2, d, 4, 1, 2);
  FormalDiffeomorphism G = rand_diffeo(rng, 2, 2, d, 4, 1, 2);
  FormalDiffeomorphism GF{diamond(G.F, F.F)};
  CHECK(pushforward(G, pushforward(F, mu)).mu == pushforward(GF, mu).mu);
}

TEST_CASE("ring automorphism validation") {
  Datum d = datum_G(2, 1);
  SuperPolynomial one = sp_const(2, Rational(1));
  SuperPolynomial T = big_t(2);

  CHECK_NOTHROW(make_ring_automorphism(one, d, 2));
  CHECK_NOTHROW(make_ring_automorphism(one + T * Rational(3), d, 2));
  CHECK_NOTHROW(make_ring_automorphism(one + T + mul(T, T), d, 2));

  // theta term: not r-only
  CHECK_THROWS_AS(make_ring_automorphism(one + sp_theta(2, 1), d, 2), IllFormed);
  // u term: not r-only
  CHECK_THROWS_AS(make_ring_automorphism(one + sp_u(2, 0), d, 2), IllFormed);
  // r_1 alone has nonzero degree
  CHECK_THROWS_AS(make_ring_automorphism(one + sp_r(2, 0), d, 2), IllFormed);
  // psi(0) = 0
  CHECK_THROWS_AS(make_ring_automorphism(T, d, 2), IllFormed);
}

TEST_CASE("ring automorphisms rescale values by order, by hand") {
  Datum d = datum_G(2, 1);
  int L = 3, N = 4;
  SuperPolynomial T = big_t(2);
  SuperPolynomial psi = sp_const(2, Rational(1)) + T * Rational(3);

  AInfinityStructure mu = exterior_mu2(2, 2, d, L, N);
  CHECK(aut_act(make_ring_automorphism(psi, d, 2), mu).mu == mu.mu);  // order 0

  HochschildCochain tau(2, 2, d, f_degree(d, 1), L, N);
  tau.add_term({1}, theta(2, 1));
  tau.add_term({2}, mul(T, theta(2, 2)));
  HochschildCochain want(2, 2, d, f_degree(d, 1), L, N);
  want.add_term({1}, theta(2, 1));
  // T has r-order 2, so its value rescales by psi^2 = 1 + 6T + O(T^2)
  want.add_term({2}, mul(T, theta(2, 2)) + mul(mul(T, T), theta(2, 2, 6)));
  CHECK(aut_act_cochain(psi, tau) == want);
}

TEST_CASE("ring automorphism action composes via the twisted group law") {
  Datum d = datum_G(2, 1);
  int L = 3, N = 6;
  SuperPolynomial one = sp_const(2, Rational(1));
  SuperPolynomial T = big_t(2);
  SuperPolynomial phi = one + T * Rational(2);
  SuperPolynomial psi = one - T + mul(T, T) * Rational(5);

  TruncationPolicy pol;
  pol.max_r = N;
  SuperPolynomial composite = mul(star_apply(phi, psi, 2, 2, d, N), phi, pol);

  std::mt19937_64 rng(7);
  HochschildCochain tau = rand_cochain(rng, 2, 2, d, L, N, f_degree(d, 1), 1, 3, 6);
  CHECK(aut_act_cochain(composite, tau) ==
        aut_act_cochain(phi, aut_act_cochain(psi, tau)));
}

TEST_CASE("symmetric group action: signs, invariance, symmetrization") {
  Datum d3 = datum_G(3, 1);
  AInfinityStructure mu3 = exterior_mu2(3, 3, d3, 4, 1);
  CHECK(invariant_check(mu3.mu));

  Datum d = datum_G(2, 1);
  // swapping the two generators reverses theta1 theta2
  HochschildCochain c = cc_constant(2, 2, d, 3, 1, theta(2, 3));
  Permutation swap{1, 0};
  CHECK(symmetric_action(swap, c) == c * Rational(-1));
  CHECK(!invariant_check(c));

  // tau: theta1 -> 1 is not symmetric; its ydeg moves with the action
  YDegree y = f_degree(d, 1) - monomial_degree({}, {}, 1u, 0u, d, 2,
                                               DegreeConvention::CochainInput);
  HochschildCochain tau(2, 2, d, y, 3, 1);
  tau.add_term({1}, sp_const(2, Rational(1)));
  CHECK(symmetric_action(swap, tau).ydeg != tau.ydeg);
  CHECK(!invariant_check(tau));

  // phi: (theta1, theta2) -> 1 at symmetric degree f(2) symmetrizes to the
  // balanced average
  HochschildCochain phi(2, 2, d, f_degree(d, 2), 3, 1);
  phi.add_term({1, 2}, sp_const(2, Rational(1)));
  CHECK(!invariant_check(phi));
  HochschildCochain avg = symmetrize(phi);
  HochschildCochain want(2, 2, d, f_degree(d, 2), 3, 1);
  want.add_term({1, 2}, sp_const(2, Rational(1, 2)));
  want.add_term({2, 1}, sp_const(2, Rational(1, 2)));
  CHECK(avg == want);
  CHECK(invariant_check(avg));
  CHECK(symmetrize(avg) == avg);
}

TEST_CASE("permutation action on polynomials tracks reordering signs") {
  Permutation cyc{1, 2, 0};  // theta1->theta2->theta3->theta1
  SuperPolynomial p = mul(sp_theta(3, 3), sp_r(3, 0));  // r1 theta1 theta2
  SuperPolynomial got = sp_permute(cyc, p);
  // image theta2 theta3 (sorted, no inversion), r2
  CHECK(got == mul(sp_theta(3, 6), sp_r(3, 1)));

  SuperPolynomial q = sp_theta(3, 5);  // theta1 theta3 -> theta2 theta1 = -theta1 theta2
  CHECK(sp_permute(cyc, q) == sp_theta(3, 3) * Rational(-1));
}

TEST_CASE("pushforward of cochains preserves the Gerstenhaber bracket") {
  Datum d = datum_G(3, 1);
  int n = 3, a = 3, L = 4, N = 1;
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 3; ++it) {
    FormalDiffeomorphism F = rand_diffeo(rng, n, a, d, L, N, 2);
    HochschildCochain al = rand_cochain(rng, n, a, d, L, N, f_degree(d, 2), 1, 2, 3);
    HochschildCochain be = rand_cochain(rng, n, a, d, L, N, f_degree(d, 1), 1, 2, 3);
    CHECK(pushforward_cochain(F, bracket(al, be)) ==
          bracket(pushforward_cochain(F, al), pushforward_cochain(F, be)));
  }
  // The structure-level map is the same conjugation.
  AInfinityStructure mu = exterior_mu2(n, a, d, L, N);
  FormalDiffeomorphism F = rand_diffeo(rng, n, a, d, L, N, 2);
  CHECK(pushforward(F, mu).mu == pushforward_cochain(F, mu.mu));
}

TEST_CASE("constant automorphisms scale order-1 values linearly") {
  int n = 2, a = 2;
  Datum d = datum_G(2, 1);
  // tau: theta_1 |-> r_1 with the matching declared degree.
  YDegree y = f_degree(d, 1) +
              monomial_degree({0, 0}, {1, 0}, 0u, 0u, d, a) -
              monomial_degree({0, 0}, {0, 0}, 1u, 0u, d, a);
  HochschildCochain tau(n, a, d, y, 3, 2);
  tau.add_term({1u}, sp_r(n, 0));
  tau.validate();
  RingAutomorphism k = make_ring_automorphism(sp_const(n, Rational(5)), d, a);
  CHECK(aut_act_cochain(k.psi, tau) == tau * Rational(5));
}

TEST_CASE("the automorphism action multiplies the first-order part by psi(0)") {
  int n = 3, a = 3, L = 4, N = 4;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu0 = exterior_mu2(n, a, d, L, N);
  HochschildCochain mu1 = cc_zero(n, a, d, f_degree(d, 2), L, N);
  mu1.add_term({1u, 2u}, mul(sp_r(n, 0), sp_theta(n, 4u)));
  mu1.add_term({3u, 5u}, sp_r(n, 1) * Rational(-2));
  AInfinityStructure mu{mu0.mu + mu1};

  // psi = 3 + 2T is a unit of R_0 at a = n.
  SuperPolynomial psi = sp_const(n, Rational(3)) + big_t(n) * Rational(2);
  RingAutomorphism ps = make_ring_automorphism(psi, d, a);
  AInfinityStructure acted = aut_act(ps, mu);
  CHECK(acted.mu.order_part(0) == mu0.mu);
  CHECK(acted.mu.order_part(1) == mu1 * Rational(3));
}
