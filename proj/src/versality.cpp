#include "forge/versality.hpp"

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "forge/hh.hpp"
#include "forge/linalgq.hpp"

namespace forge {

namespace {

std::vector<std::vector<int>> compositions(int n, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(n, 0);
  std::function<void(int, int)> rec = [&](int t, int left) {
    if (t == n - 1) {
      c[t] = left;
      out.push_back(c);
      c[t] = 0;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[t] = v;
      rec(t + 1, left - v);
    }
    c[t] = 0;
  };
  rec(0, j);
  return out;
}

// Orbit sums of degree-0 r-monomials of order j: the coefficient space for
// the order-(j) automorphism component, invariant by construction.
std::vector<SuperPolynomial> psi_basis(int n, int a, const Datum& d, int j) {
  std::vector<int> zero_b(n, 0);
  YDegree zero = zero_degree(d);
  std::map<std::vector<int>, std::set<std::vector<int>>> orbits;
  for (const auto& c : compositions(n, j)) {
    if (monomial_degree(zero_b, c, 0u, 0u, d, a) != zero) continue;
    std::vector<int> canon = c;
    std::sort(canon.begin(), canon.end(), std::greater<int>());
    orbits[canon].insert(c);
  }
  std::vector<SuperPolynomial> out;
  for (const auto& [canon, members] : orbits) {
    (void)canon;
    SuperPolynomial p = sp_zero(n);
    for (const auto& c : members) {
      SuperMonomial m;
      for (int t = 0; t < n; ++t) m.c[t] = static_cast<int8_t>(c[t]);
      p.add_term(m, Rational(1));
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Monomial basis cochains of degree f(1), key lengths s_min..L, r-order k.
// Exactness of first-order classes is tested against all lengths >= 1; gauge
// corrections themselves must keep the length-1 part equal to the identity,
// so the solver draws its columns from lengths >= 2 only.
std::vector<HochschildCochain> f_basis(int n, int a, const Datum& d, int L, int N, int k,
                                       int s_min) {
  std::vector<HochschildCochain> out;
  YDegree y = f_degree(d, 1);
  for (int s = s_min; s <= L; ++s) {
    PieceBasis B = cc_basis(n, a, d, y, s, N, k);
    for (const auto& e : B.elems) out.push_back(cc_from_elem(n, a, d, y, e, L, N));
  }
  return out;
}

// Values multiplied by a degree-0 polynomial (the module structure of the
// coefficient ring on cochains).
HochschildCochain scale_values(const SuperPolynomial& p, const HochschildCochain& x) {
  HochschildCochain out(x.n, x.a, x.datum, x.ydeg, x.max_len, x.max_r);
  TruncationPolicy pol;
  pol.max_r = x.max_r;
  for (const auto& [key, val] : x.table) out.add_term(key, mul(p, val, pol));
  return out;
}

// Shared row index across the columns and right-hand side of one order-k
// linear system.
struct CoordSpace {
  std::map<std::pair<ThetaTuple, SuperMonomial>, int> idx;

  int at(const ThetaTuple& k, const SuperMonomial& m) {
    auto [it, inserted] = idx.emplace(std::pair<ThetaTuple, SuperMonomial>{k, m},
                                      static_cast<int>(idx.size()));
    (void)inserted;
    return it->second;
  }
  int dim() const { return static_cast<int>(idx.size()); }
};

using Triplet = std::pair<std::pair<int, int>, Rational>;  // ((row, col), value)

void push_column(const HochschildCochain& x, int col, CoordSpace& space,
                 std::vector<Triplet>& trip) {
  for (const auto& [key, poly] : x.table)
    for (const auto& [m, coef] : poly.t)
      trip.push_back({{space.at(key, m), col}, coef});
}

// Is x a Hochschild coboundary of a degree-f(1), order-k cochain?
bool is_exact(const AInfinityStructure& mu0, const HochschildCochain& x, int k) {
  if (x.is_zero()) return true;
  std::vector<HochschildCochain> basis =
      f_basis(x.n, x.a, x.datum, x.max_len, x.max_r, k, 1);
  CoordSpace space;
  std::vector<Triplet> trip;
  for (size_t m = 0; m < basis.size(); ++m)
    push_column(hochschild_differential(mu0, basis[m]), static_cast<int>(m), space, trip);
  std::map<int, Rational> bmap;
  for (const auto& [key, poly] : x.table)
    for (const auto& [mono, coef] : poly.t) bmap[space.at(key, mono)] = coef;
  QMatrix A(space.dim(), static_cast<int>(basis.size()));
  for (const auto& [rc, v] : trip) A.add(rc.first, rc.second, v);
  std::vector<Rational> b(static_cast<size_t>(space.dim()), Rational(0));
  for (const auto& [row, v] : bmap) b[static_cast<size_t>(row)] = v;
  return solve(A, b).has_value();
}

}  // namespace

VersalitySolution versality_solve(const AInfinityStructure& mu, const AInfinityStructure& eta,
                                  bool equivariant) {
  require_compatible(mu.mu, eta.mu);
  if (!mu.minimal() || !eta.minimal())
    throw IllFormed("versality_solve: both structures must be minimal");
  if (mu.mu.order_part(0) != eta.mu.order_part(0))
    throw IllFormed("versality_solve: order-0 parts must agree");
  if (equivariant && (!invariant_check(mu.mu) || !invariant_check(eta.mu)))
    throw IllFormed("versality_solve: equivariant mode needs invariant structures");

  int n = mu.mu.n, a = mu.mu.a, L = mu.mu.max_len, N = mu.mu.max_r;
  const Datum& d = mu.mu.datum;
  AInfinityStructure mu0{mu.mu.order_part(0)};
  HochschildCochain mu1 = mu.mu.order_part(1);
  if (is_exact(mu0, mu1, 1)) throw FirstOrderZero();
  if (is_exact(mu0, eta.mu.order_part(1), 1)) throw FirstOrderZero();

  SuperPolynomial psi = sp_zero(n);
  FormalDiffeomorphism F = identity_diffeo(n, a, d, L, N);

  for (int k = 1; k <= N; ++k) {
    HochschildCochain diff = aut_act_cochain(psi, mu.mu) - pushforward_cochain(F, eta.mu);
    for (int j = 0; j < k; ++j)
      if (!diff.order_part(j).is_zero())
        throw std::logic_error("versality_solve: stale residual below active order");
    HochschildCochain D = diff.order_part(k);

    if (!D.is_zero()) {
      std::vector<SuperPolynomial> pb = psi_basis(n, a, d, k - 1);
      std::vector<HochschildCochain> fb = f_basis(n, a, d, L, N, k, 2);
      CoordSpace space;
      std::vector<Triplet> trip;
      int col = 0;
      for (const auto& p : pb) push_column(scale_values(p, mu1), col++, space, trip);
      for (const auto& X : fb)
        push_column(hochschild_differential(mu0, X), col++, space, trip);
      std::map<int, Rational> bmap;
      for (const auto& [key, poly] : D.table)
        for (const auto& [mono, coef] : poly.t) {
          Rational neg = -coef;
          bmap[space.at(key, mono)] = neg;
        }
      QMatrix A(space.dim(), col);
      for (const auto& [rc, v] : trip) A.add(rc.first, rc.second, v);
      std::vector<Rational> b(static_cast<size_t>(space.dim()), Rational(0));
      for (const auto& [row, v] : bmap) b[static_cast<size_t>(row)] = v;
      std::optional<std::vector<Rational>> x = solve(A, b);
      if (!x.has_value()) throw ObstructionNonzero(k);

      for (size_t i = 0; i < pb.size(); ++i) {
        Rational ci = (*x)[i];
        if (ci == Rational(0)) continue;
        psi += pb[i] * ci;
      }
      HochschildCochain Fk = cc_zero(n, a, d, f_degree(d, 1), L, N);
      for (size_t m = 0; m < fb.size(); ++m) {
        Rational cm = (*x)[pb.size() + m];
        if (cm == Rational(0)) continue;
        Fk += fb[m] * cm;
      }
      if (equivariant && !Fk.is_zero()) Fk = symmetrize(Fk);
      F.F += Fk;
    }
  }

  HochschildCochain final_diff = aut_act_cochain(psi, mu.mu) - pushforward_cochain(F, eta.mu);
  if (!final_diff.is_zero())
    throw std::logic_error("versality_solve: defining identity fails after assembly");

  return VersalitySolution{make_ring_automorphism(psi, d, a), F};
}

}  // namespace forge
