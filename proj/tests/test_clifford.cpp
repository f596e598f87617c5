#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <map>
#include <random>
#include <vector>

#include "forge/clifford.hpp"
#include "forge/superpoly.hpp"

using namespace forge;

namespace {

// Independent normal-ordering oracle. A word is a list of generators,
// 0..n-1 for theta_j and n..2n-1 for dtheta_j. Rewriting uses only the
// defining relations: generators square to zero, distinct generators
// anticommute except dtheta_j theta_j = 1 - theta_j dtheta_j. The result
// maps (J, K) masks to coefficients of the normal form theta^J dtheta^K
// (thetas first, both ascending).
using Word = std::vector<int>;
using Normal = std::map<std::pair<uint32_t, uint32_t>, Rational>;

void norm_word(int n, const Word& w, const Rational& coef, Normal& out) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    int x = w[i], y = w[i + 1];
    if (x == y) return;  // squares vanish
    bool x_d = x >= n, y_d = y >= n;
    if (x_d && !y_d) {
      // dtheta_k theta_j
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      if (x - n == y) {
        Word dropped = w;
        dropped.erase(dropped.begin() + i, dropped.begin() + i + 2);
        norm_word(n, dropped, coef, out);
      }
      norm_word(n, swapped, -coef, out);
      return;
    }
    if (x_d == y_d && x > y) {  // same species out of order
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      norm_word(n, swapped, -coef, out);
      return;
    }
  }
  // already normal: thetas ascending, then dthetas ascending
  uint32_t J = 0, K = 0;
  for (int g : w) {
    if (g < n)
      J |= 1u << g;
    else
      K |= 1u << (g - n);
  }
  auto [it, fresh] = out.try_emplace({J, K}, coef);
  if (!fresh) it->second += coef;
}

Word word_of(int n, const SuperMonomial& m) {
  Word w;
  for (int j = 0; j < n; ++j)
    if (m.J & (1u << j)) w.push_back(j);
  for (int j = 0; j < n; ++j)
    if (m.K & (1u << j)) w.push_back(n + j);
  return w;
}

// Oracle product of two operator polynomials: concatenate words, rewrite,
// multiply the (central) u and r parts.
SuperPolynomial oracle_mul(const SuperPolynomial& x, const SuperPolynomial& y) {
  SuperPolynomial out(x.n);
  for (const auto& [mx, cx] : x.t) {
    for (const auto& [my, cy] : y.t) {
      Word w = word_of(x.n, mx);
      Word wy = word_of(x.n, my);
      w.insert(w.end(), wy.begin(), wy.end());
      Normal nf;
      Rational prod = cx * cy;
      norm_word(x.n, w, prod, nf);
      for (const auto& [jk, q] : nf) {
        SuperMonomial m;
        for (int j = 0; j < x.n; ++j) {
          m.c[j] = static_cast<int8_t>(mx.c[j] + my.c[j]);
          m.b[j] = static_cast<int8_t>(mx.b[j] + my.b[j]);
        }
        m.J = jk.first;
        m.K = jk.second;
        out.add_term(m, q);
      }
    }
  }
  return out;
}

SuperPolynomial rand_op(std::mt19937_64& rng, int n, int terms) {
  SuperPolynomial p(n);
  for (int t = 0; t < terms; ++t) {
    SuperMonomial m;
    m.J = static_cast<uint32_t>(rng() & ((1u << n) - 1));
    m.K = static_cast<uint32_t>(rng() & ((1u << n) - 1));
    if ((rng() & 3) == 0) m.b[rng() % static_cast<unsigned>(n)] += 1;
    if ((rng() & 7) == 0) m.c[rng() % static_cast<unsigned>(n)] += 1;
    long coef = static_cast<long>(rng() % 7) - 3;
    if (coef == 0) coef = 2;
    p.add_term(m, Rational(coef));
  }
  return p;
}

}  // namespace

TEST_CASE("canonical anticommutation relations") {
  const int n = 3;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      SuperPolynomial tj = sp_theta(n, 1u << j);
      SuperPolynomial dk = sp_dtheta(n, 1u << k);
      // {dtheta_k, theta_j} = delta_kj
      SuperPolynomial anti = op_mul(dk, tj) + op_mul(tj, dk);
      if (j == k)
        CHECK(anti == sp_const(n, Rational(1)));
      else
        CHECK(anti.zero());
      // {theta_j, theta_k} = 0, {dtheta_j, dtheta_k} = 0
      CHECK((op_mul(tj, sp_theta(n, 1u << k)) + op_mul(sp_theta(n, 1u << k), tj)).zero());
      CHECK((op_mul(dk, sp_dtheta(n, 1u << j)) + op_mul(sp_dtheta(n, 1u << j), dk)).zero());
    }
  }
}

TEST_CASE("normal ordering matches the word-rewriting oracle") {
  std::mt19937_64 rng(20260816);
  for (int n : {2, 3, 4}) {
    for (int rep = 0; rep < 120; ++rep) {
      SuperPolynomial x = rand_op(rng, n, 1 + int(rng() % 3));
      SuperPolynomial y = rand_op(rng, n, 1 + int(rng() % 3));
      CHECK(op_mul(x, y) == oracle_mul(x, y));
    }
  }
}

TEST_CASE("operator product is associative and unital") {
  std::mt19937_64 rng(7);
  const int n = 3;
  SuperPolynomial one = sp_const(n, Rational(1));
  for (int rep = 0; rep < 60; ++rep) {
    SuperPolynomial x = rand_op(rng, n, 2);
    SuperPolynomial y = rand_op(rng, n, 2);
    SuperPolynomial z = rand_op(rng, n, 2);
    CHECK(op_mul(op_mul(x, y), z) == op_mul(x, op_mul(y, z)));
    CHECK(op_mul(one, x) == x);
    CHECK(op_mul(x, one) == x);
  }
}

TEST_CASE("op_apply agrees with the theta-derivative") {
  const int n = 3;
  // dtheta_j acts on S[theta] as d/dtheta_j
  for (int j = 0; j < n; ++j) {
    for (uint32_t J = 0; J < (1u << n); ++J) {
      SuperPolynomial f = sp_theta(n, J);
      CHECK(op_apply(sp_dtheta(n, 1u << j), f) == d_dtheta(j, f));
    }
  }
  // theta_j acts as left multiplication
  SuperPolynomial f = sp_theta(n, 0b101) + sp_theta(n, 0b010) * Rational(2);
  for (int j = 0; j < n; ++j)
    CHECK(op_apply(sp_theta(n, 1u << j), f) == mul(sp_theta(n, 1u << j), f));
}

TEST_CASE("op_commutator parity rule") {
  const int n = 2;
  SuperPolynomial a = sp_theta(n, 1);                       // odd
  SuperPolynomial b = sp_dtheta(n, 1);                      // odd
  SuperPolynomial e = mul(sp_theta(n, 1), sp_dtheta(n, 1)); // even
  // odd/odd: anticommutator
  CHECK(op_commutator(a, b) == op_mul(a, b) + op_mul(b, a));
  // even/odd and even/even: commutator
  CHECK(op_commutator(e, a) == op_mul(e, a) - op_mul(a, e));
  CHECK(op_commutator(e, e) == op_mul(e, e) - op_mul(e, e));
  // graded antisymmetry on sigma-homogeneous inputs:
  // [x,y] = -(-1)^{sigma x sigma y} [y,x]
  CHECK(op_commutator(a, b) == op_commutator(b, a));
  CHECK(op_commutator(e, a) == -op_commutator(a, e));
}

TEST_CASE("u and r coefficients are central") {
  const int n = 3;
  std::mt19937_64 rng(99);
  SuperPolynomial u0 = sp_u(n, 0);
  SuperPolynomial r1 = sp_r(n, 1);
  for (int rep = 0; rep < 30; ++rep) {
    SuperPolynomial x = rand_op(rng, n, 3);
    CHECK(op_mul(u0, x) == op_mul(x, u0));
    CHECK(op_mul(r1, x) == op_mul(x, r1));
  }
}

TEST_CASE("truncation policy prunes products") {
  const int n = 2;
  TruncationPolicy pol;
  pol.max_u = 1;
  SuperPolynomial x = sp_u(n, 0);
  CHECK(op_mul(x, x, pol).zero());
  CHECK(!op_mul(x, x).zero());
}
