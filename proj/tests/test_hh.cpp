#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>
#include <vector>

#include "forge/hh.hpp"

using namespace forge;

namespace {

// All exponent vectors e >= 0 of length n with |e| = total.
std::vector<std::vector<int>> expvecs(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int t, int left) {
    if (t == n - 1) {
      e[t] = left;
      out.push_back(e);
      e[t] = 0;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[t] = v;
      rec(t + 1, left - v);
    }
    e[t] = 0;
  };
  rec(0, total);
  return out;
}

// Independent dimension oracle: the cohomology of the exterior-product
// structure at spot (y, s) is the span of polyvector monomials r^c u^b
// theta^K of degree y with |b| = s, counted directly off the grading
// conventions.
long polyvector_count(int n, int a, const Datum& d, const YDegree& y, int s,
                      int max_r, int r_order) {
  long cnt = 0;
  int j_lo = (r_order >= 0) ? r_order : 0;
  int j_hi = (r_order >= 0) ? r_order : max_r;
  for (int j = j_lo; j <= j_hi && j <= max_r; ++j)
    for (const auto& c : expvecs(n, j))
      for (const auto& b : expvecs(n, s))
        for (uint32_t K = 0; K < (1u << n); ++K)
          if (monomial_degree(b, c, K, 0, d, a, DegreeConvention::Polyvector) == y) ++cnt;
  return cnt;
}

// The exact r-exponent vectors appearing in a cochain's values.
std::set<std::array<int8_t, kMaxN>> r_sectors(const HochschildCochain& x) {
  std::set<std::array<int8_t, kMaxN>> out;
  for (const auto& [key, poly] : x.table)
    for (const auto& [m, coef] : poly.t) {
      (void)coef;
      out.insert(m.c);
    }
  return out;
}

}  // namespace

TEST_CASE("piece enumeration matches hand counts at n=3") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  // w = y - f(s) = -f(1) at every (f(k), k+1) spot here, so q = -1 and
  // m_t = [t in K0] + 1; the count is (C(s,1) + C(s,2))^3.
  CHECK(cc_basis(n, a, d, f_degree(d, 2), 3, 6, 0).dim() == 216);
  CHECK(cc_basis(n, a, d, f_degree(d, 1), 2, 6, 0).dim() == 27);
  CHECK(cc_basis(n, a, d, f_degree(d, 3), 4, 6, 0).dim() == 1000);
  // w = -4 f(1): m_t = [t in K0] + 4.
  CHECK(cc_basis(n, a, d, f_degree(d, 2), 6, 6, 0).dim() == 9261);
  CHECK(cc_basis(n, a, d, f_degree(d, 3), 7, 6, 0).dim() == 175616);
  // Negative length is the empty piece.
  CHECK(cc_basis(n, a, d, f_degree(d, 1), -1, 6, 0).dim() == 0);
}

TEST_CASE("piece enumeration matches hand counts at n=4 in the first r-order") {
  int n = 4, a = 4;
  Datum d = datum_G(4, 1);
  // q = 0 and m_t = 4 c_t + [t in K0]: the r-index forces its coordinate
  // out of K0 with a full key column.
  CHECK(cc_basis(n, a, d, f_degree(d, 2), 4, 2, 1).dim() == 500);
  CHECK(cc_basis(n, a, d, f_degree(d, 3), 5, 2, 1).dim() == 5184);
  CHECK(cc_basis(n, a, d, f_degree(d, 1), 3, 2, 1).dim() == 0);
}

TEST_CASE("every enumerated element is a well-formed cochain of the declared degree") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  YDegree y = f_degree(d, 2);
  PieceBasis B = cc_basis(n, a, d, y, 3, 6, -1);
  // r-order <= 6 adds sectors beyond the 216 order-0 elements.
  CHECK(B.dim() > 216);
  for (const auto& e : B.elems) {
    HochschildCochain c = cc_from_elem(n, a, d, y, e, 4, 6);
    CHECK_NOTHROW(c.validate());
    CHECK(c.table.size() == 1);
  }
}

TEST_CASE("piece enumeration is deterministic and honors the budget") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  PieceBasis B1 = cc_basis(n, a, d, f_degree(d, 2), 3, 6, 0);
  PieceBasis B2 = cc_basis(n, a, d, f_degree(d, 2), 3, 6, 0);
  REQUIRE(B1.dim() == B2.dim());
  CHECK(B1.elems == B2.elems);
  CHECK_THROWS_AS(cc_basis(n, a, d, f_degree(d, 2), 3, 6, 0, 10), PieceInfinite);
}

TEST_CASE("cohomology of the exterior product at n=3 reproduces the closed form") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 6);

  // Weight column of the cohomology at degree f(2): dimension 1 at s = 3
  // and 0 at s = 4, 5, 6.
  HHPiece p3 = compute_hh(mu, f_degree(d, 2), 3, 0);
  CHECK(p3.dim_piece == 216);
  CHECK(p3.dim_in == 27);
  CHECK(p3.dim_out == 1000);
  CHECK(p3.dimension == 1);
  REQUIRE(p3.representatives.size() == 1);
  for (int s = 4; s <= 6; ++s) {
    HHPiece p = compute_hh(mu, f_degree(d, 2), s, 0);
    CHECK(p.dimension == 0);
    CHECK(p.representatives.empty());
    // Nothing survives: the piece is exactly image plus co-image.
    CHECK(p.rank_in + p.rank_out == p.dim_piece);
  }

  // Degree f(1): the identity-type classes u_k theta_k at s = 1 and the
  // volume form theta_1 theta_2 theta_3 at s = 0.
  CHECK(compute_hh(mu, f_degree(d, 1), 0, 0).dimension == 1);
  CHECK(compute_hh(mu, f_degree(d, 1), 1, 0).dimension == 3);
  CHECK(compute_hh(mu, f_degree(d, 1), 2, 0).dimension == 0);
  CHECK(compute_hh(mu, f_degree(d, 1), 3, 0).dimension == 0);
}

TEST_CASE("representatives are cocycles and the run is deterministic") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 6);

  HHPiece p = compute_hh(mu, f_degree(d, 1), 1, 0);
  REQUIRE(p.representatives.size() == 3);
  AInfinityStructure mu_wide{[&] {
    HochschildCochain m(n, a, d, f_degree(d, 2), 2, 6);
    for (const auto& [k, v] : mu.mu.table) m.add_term(k, v);
    return m;
  }()};
  for (const auto& rep : p.representatives) {
    CHECK(!rep.is_zero());
    CHECK(hochschild_differential(mu_wide, rep).is_zero());
  }

  HHPiece q = compute_hh(mu, f_degree(d, 2), 3, 0);
  CHECK(!q.representatives[0].is_zero());
  {
    HochschildCochain m4(n, a, d, f_degree(d, 2), 4, 6);
    for (const auto& [k, v] : mu.mu.table) m4.add_term(k, v);
    CHECK(hochschild_differential(AInfinityStructure{m4}, q.representatives[0]).is_zero());
  }

  HHPiece q2 = compute_hh(mu, f_degree(d, 2), 3, 0);
  REQUIRE(q2.representatives.size() == q.representatives.size());
  CHECK(q2.representatives[0] == q.representatives[0]);
}

TEST_CASE("first-order deformation column at n=4 has dimension 4 in one r-sector each") {
  int n = 4, a = 4;
  Datum d = datum_G(4, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 2);

  HHPiece p = compute_hh(mu, f_degree(d, 2), 4, 1);
  CHECK(p.dim_piece == 500);
  CHECK(p.dim_in == 0);
  CHECK(p.dim_out == 5184);
  CHECK(p.dimension == 4);
  REQUIRE(p.representatives.size() == 4);

  // The differential preserves the exact r-exponent vector, so each class
  // lives in a single sector r_t; the four sectors are distinct.
  std::set<std::array<int8_t, kMaxN>> seen;
  for (const auto& rep : p.representatives) {
    auto sect = r_sectors(rep);
    REQUIRE(sect.size() == 1);
    seen.insert(*sect.begin());
  }
  CHECK(seen.size() == 4);

  CHECK(compute_hh(mu, f_degree(d, 2), 2, 1).dimension == 0);
  CHECK(compute_hh(mu, f_degree(d, 2), 3, 1).dimension == 0);
  CHECK(compute_hh(mu, f_degree(d, 2), 5, 1).dimension == 0);
}

TEST_CASE("computed dimensions agree with the polyvector count across spots") {
  {
    int n = 3, a = 3;
    Datum d = datum_G(3, 1);
    AInfinityStructure mu = exterior_mu2(n, a, d, 8, 6);
    for (int k = 1; k <= 3; ++k)
      for (int s = 0; s <= 4; ++s) {
        YDegree y = f_degree(d, k);
        long want = polyvector_count(n, a, d, y, s, 6, 0);
        CHECK(compute_hh(mu, y, s, 0).dimension == want);
      }
  }
  {
    int n = 4, a = 4;
    Datum d = datum_G(4, 1);
    AInfinityStructure mu = exterior_mu2(n, a, d, 8, 2);
    for (int s = 2; s <= 5; ++s) {
      YDegree y = f_degree(d, 2);
      long want = polyvector_count(n, a, d, y, s, 2, 1);
      CHECK(compute_hh(mu, y, s, 1).dimension == want);
    }
  }
  {
    // n = 2 exercises the relation-shift window in the enumeration.
    int n = 2, a = 2;
    Datum d = datum_G(2, 1);
    AInfinityStructure mu = exterior_mu2(n, a, d, 8, 4);
    for (int k = 1; k <= 2; ++k)
      for (int s = 0; s <= 4; ++s) {
        YDegree y = f_degree(d, k);
        long want = polyvector_count(n, a, d, y, s, 4, 0);
        CHECK(compute_hh(mu, y, s, 0).dimension == want);
      }
  }
}

TEST_CASE("the r-order filter splits the computation consistently") {
  // At a = 1 the r-grading is nontrivial at fixed degree; total dimension
  // over all orders equals the unfiltered run.
  int n = 3, a = 1;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 2);
  YDegree y = f_degree(d, 2);
  int s = 3;
  HHPiece all = compute_hh(mu, y, s, -1);
  int sum_dim = 0, sum_piece = 0;
  for (int j = 0; j <= 2; ++j) {
    HHPiece pj = compute_hh(mu, y, s, j);
    sum_dim += pj.dimension;
    sum_piece += pj.dim_piece;
    CHECK(pj.dimension == polyvector_count(n, a, d, y, s, 2, j));
  }
  CHECK(all.dim_piece == sum_piece);
  CHECK(all.dimension == sum_dim);
}

TEST_CASE("unsuitable structures are rejected") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 6);

  // A length-3 component disqualifies the structure.
  HochschildCochain bad = mu.mu;
  bad.add_term({1u, 2u, 4u}, sp_theta(n, 7u));
  CHECK_THROWS_AS(compute_hh(AInfinityStructure{bad}, f_degree(d, 2), 3, 0), IllFormed);

  // An r-carrying value does too: the differential would not preserve the
  // coefficient order.
  HochschildCochain bad2(n, a, d, mu.mu.ydeg, 8, 6);
  bad2.table = mu.mu.table;
  SuperPolynomial& first = bad2.table.begin()->second;
  SuperMonomial rm = first.t.begin()->first;
  rm.c[0] = 1;
  first.t[rm] = Rational(1);
  CHECK_THROWS_AS(compute_hh(AInfinityStructure{bad2}, f_degree(d, 2), 3, 0), IllFormed);

  CHECK_THROWS_AS(compute_hh(mu, f_degree(d, 2), -1, 0), IllFormed);

  HochschildCochain zero = cc_zero(n, a, d, f_degree(d, 2), 8, 6);
  CHECK_THROWS_AS(compute_hh(AInfinityStructure{zero}, f_degree(d, 2), 3, 0), IllFormed);
}

TEST_CASE("range helper walks the weight column") {
  int n = 3, a = 3;
  Datum d = datum_G(3, 1);
  AInfinityStructure mu = exterior_mu2(n, a, d, 8, 6);
  auto col = compute_hh_range(mu, f_degree(d, 2), 3, 6, 0);
  REQUIRE(col.size() == 4);
  CHECK(col[0].s == 3);
  CHECK(col[0].dimension == 1);
  CHECK(col[1].dimension == 0);
  CHECK(col[2].dimension == 0);
  CHECK(col[3].dimension == 0);
}
