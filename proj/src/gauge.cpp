#include "forge/gauge.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "forge/linalgq.hpp"

namespace forge {

namespace {

SuperPolynomial mono_poly(int n, const SuperMonomial& m, const Rational& q) {
  SuperPolynomial p(n);
  p.add_term(m, q);
  return p;
}

// Dense order-0 length-1 component: col T holds the image of theta^T.
QMatrix leading_matrix(const HochschildCochain& F) {
  int dim = 1 << F.n;
  QMatrix M(dim, dim);
  for (const auto& [key, val] : F.table) {
    if (key.size() != 1) continue;
    for (const auto& [m, q] : val.t) {
      if (m.rorder() != 0) continue;
      M.add(static_cast<int>(m.J), static_cast<int>(key[0]), q);
    }
  }
  return M;
}

// Returns the inverse of M or throws NotInvertible.
std::vector<std::vector<Rational>> invert_matrix(const QMatrix& M) {
  int dim = M.rows;
  QMatrix aug(dim, 2 * dim);
  for (int i = 0; i < dim; ++i) {
    for (const auto& [j, v] : M.r[i]) aug.set(i, j, v);
    aug.set(i, dim + i, Rational(1));
  }
  RowEchelon re = rref(aug);
  if (re.rank < dim || re.pivot_cols.size() < static_cast<size_t>(dim) ||
      re.pivot_cols[dim - 1] != dim - 1)
    throw NotInvertible("leading length-1 component is singular");
  std::vector<std::vector<Rational>> inv(dim, std::vector<Rational>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) inv[i][j] = re.R.get(i, dim + j);
  return inv;
}

// -D with F10^{-1} applied in every slot: the induction step of the strict
// inversion. inv[J][T] is the theta^J coefficient of F10^{-1}(theta^T).
HochschildCochain precompose_inverse(const HochschildCochain& D,
                                     const std::vector<std::vector<Rational>>& inv) {
  HochschildCochain out(D.n, D.a, D.datum, D.ydeg, D.max_len, D.max_r);
  int dim = 1 << D.n;
  for (const auto& [key, val] : D.table) {
    int s = static_cast<int>(key.size());
    // expand slot by slot
    std::vector<std::pair<ThetaTuple, Rational>> acc{{ThetaTuple{}, Rational(-1)}};
    for (int m = 0; m < s; ++m) {
      std::vector<std::pair<ThetaTuple, Rational>> next;
      for (const auto& [prefix, w] : acc) {
        for (int t = 0; t < dim; ++t) {
          const Rational& coef = inv[key[m]][t];
          if (coef == 0) continue;
          ThetaTuple k2 = prefix;
          k2.push_back(static_cast<uint32_t>(t));
          next.emplace_back(std::move(k2), Rational(w * coef));
        }
      }
      acc = std::move(next);
    }
    for (const auto& [k2, w] : acc) out.add_term(k2, val * w);
  }
  return out;
}

}  // namespace

FormalDiffeomorphism identity_diffeo(int n, int a, const Datum& d, int L, int N) {
  return FormalDiffeomorphism{cc_identity(n, a, d, L, N)};
}

FormalDiffeomorphism invert_formal_diffeo(const FormalDiffeomorphism& Fd) {
  const HochschildCochain& F = Fd.F;
  if (F.is_zero() || F.min_length() < 1)
    throw NotInvertible("formal diffeomorphism needs lengths >= 1");
  if (F.ydeg != f_degree(F.datum, 1))
    throw IllFormed("formal diffeomorphism must have degree f(1)");

  auto inv = invert_matrix(leading_matrix(F));
  int dim = 1 << F.n;

  HochschildCochain G(F.n, F.a, F.datum, F.ydeg, F.max_len, F.max_r);
  for (int t = 0; t < dim; ++t) {
    SuperPolynomial img(F.n);
    for (int j = 0; j < dim; ++j) {
      if (inv[j][t] == 0) continue;
      img += sp_theta(F.n, static_cast<uint32_t>(j)) * inv[j][t];
    }
    G.add_term(ThetaTuple{static_cast<uint32_t>(t)}, img);
  }

  HochschildCochain id = cc_identity(F.n, F.a, F.datum, F.max_len, F.max_r);
  for (int W = 2; W <= F.max_len + F.max_r; ++W) {
    HochschildCochain D = diamond(G, F) - id;
    bool any = false;
    for (int s = 1; s <= F.max_len && s <= W; ++s) {
      int o = W - s;
      if (o < 0 || o > F.max_r) continue;
      HochschildCochain Dso = D.length_part(s).order_part(o);
      if (Dso.is_zero()) continue;
      G += precompose_inverse(Dso, inv);
      any = true;
    }
    (void)any;
  }
  return FormalDiffeomorphism{std::move(G)};
}

HochschildCochain pushforward_cochain(const FormalDiffeomorphism& F,
                                      const HochschildCochain& alpha) {
  FormalDiffeomorphism G = invert_formal_diffeo(F);
  return diamond(gerstenhaber_circ(F.F, alpha), G.F);
}

AInfinityStructure pushforward(const FormalDiffeomorphism& F, const AInfinityStructure& mu) {
  return AInfinityStructure{pushforward_cochain(F, mu.mu)};
}

RingAutomorphism make_ring_automorphism(const SuperPolynomial& psi, const Datum& d, int a) {
  bool has_const = false;
  std::vector<Integer> zero(d->Y->gens, Integer(0));
  for (const auto& [m, q] : psi.t) {
    (void)q;
    if (m.uorder() != 0 || m.J != 0 || m.K != 0)
      throw IllFormed("ring automorphism must be a polynomial in r only");
    std::vector<int> c(m.c.begin(), m.c.begin() + psi.n);
    YDegree deg = monomial_degree({}, c, 0, 0, d, a, DegreeConvention::CochainInput);
    if (deg != YDegree(d, zero)) throw IllFormed("ring automorphism must have degree 0");
    if (m.rorder() == 0) has_const = true;
  }
  if (!has_const) throw IllFormed("ring automorphism needs psi(0) != 0");
  return RingAutomorphism{psi};
}

HochschildCochain aut_act_cochain(const SuperPolynomial& psi, const HochschildCochain& c) {
  TruncationPolicy pol;
  pol.max_r = c.max_r;
  // psi^m for m = 0..N; the empty product is 1 even when psi = 0.
  std::vector<SuperPolynomial> pw;
  pw.push_back(sp_const(c.n, Rational(1)));
  for (int m = 1; m <= c.max_r; ++m) pw.push_back(mul(pw.back(), psi, pol));

  HochschildCochain out(c.n, c.a, c.datum, c.ydeg, c.max_len, c.max_r);
  for (const auto& [key, val] : c.table) {
    SuperPolynomial nv(c.n);
    for (const auto& [m, q] : val.t) {
      int o = m.rorder();
      if (o == 0) {
        nv.add_term(m, q);
      } else {
        nv += mul(mono_poly(c.n, m, q), pw[o], pol);
      }
    }
    out.add_term(key, nv);
  }
  return out;
}

AInfinityStructure aut_act(const RingAutomorphism& psi, const AInfinityStructure& mu) {
  return AInfinityStructure{aut_act_cochain(psi.psi, mu.mu)};
}

std::vector<Permutation> all_permutations(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

// Image mask and the Koszul sign of re-sorting the permuted generators.
std::pair<uint32_t, int> mask_image(const Permutation& h, uint32_t mask) {
  std::vector<int> imgs;
  for (int i = 0; i < static_cast<int>(h.size()); ++i)
    if (mask >> i & 1u) imgs.push_back(h[i]);
  int inv = 0;
  for (size_t x = 0; x < imgs.size(); ++x)
    for (size_t y = x + 1; y < imgs.size(); ++y)
      if (imgs[x] > imgs[y]) ++inv;
  uint32_t out = 0;
  for (int g : imgs) out |= 1u << g;
  return {out, (inv & 1) ? -1 : 1};
}

}  // namespace

SuperPolynomial sp_permute(const Permutation& h, const SuperPolynomial& p) {
  SuperPolynomial out(p.n);
  for (const auto& [m, q] : p.t) {
    SuperMonomial nm;
    for (int i = 0; i < p.n; ++i) {
      nm.c[h[i]] = m.c[i];
      nm.b[h[i]] = m.b[i];
    }
    auto [J2, sJ] = mask_image(h, m.J);
    auto [K2, sK] = mask_image(h, m.K);
    nm.J = J2;
    nm.K = K2;
    out.add_term(nm, q * Rational(sJ * sK));
  }
  return out;
}

HochschildCochain symmetric_action(const Permutation& h, const HochschildCochain& phi) {
  // Y-degree moves by the induced permutation of the y-coordinates.
  std::vector<Integer> v = phi.ydeg.v;
  std::vector<Integer> nv(v.size());
  nv[0] = v[0];
  for (int i = 0; i < phi.n; ++i) nv[1 + h[i]] = v[1 + i];
  HochschildCochain out(phi.n, phi.a, phi.datum, YDegree(phi.datum, std::move(nv)),
                        phi.max_len, phi.max_r);
  for (const auto& [key, val] : phi.table) {
    ThetaTuple k2(key.size());
    int sign = 1;
    for (size_t i = 0; i < key.size(); ++i) {
      auto [m2, s] = mask_image(h, key[i]);
      k2[i] = m2;
      sign *= s;
    }
    out.add_term(k2, sp_permute(h, val) * Rational(sign));
  }
  return out;
}

bool invariant_check(const HochschildCochain& phi) {
  for (const Permutation& h : all_permutations(phi.n))
    if (symmetric_action(h, phi) != phi) return false;
  return true;
}

HochschildCochain symmetrize(const HochschildCochain& phi) {
  HochschildCochain acc(phi.n, phi.a, phi.datum, phi.ydeg, phi.max_len, phi.max_r);
  auto perms = all_permutations(phi.n);
  for (const Permutation& h : perms) acc += symmetric_action(h, phi);
  Rational inv_fact(1);
  inv_fact /= Rational(static_cast<long>(perms.size()));
  return acc * inv_fact;
}

}  // namespace forge
