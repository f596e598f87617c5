#include "forge/hh.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <utility>

#include "forge/linalgq.hpp"

namespace forge {

namespace {

long to_long(const Integer& z) { return z.get_si(); }

// All r-exponent vectors c >= 0 with |c| = j, lexicographically ascending.
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

unsigned long long binom(int s, int m) {
  if (m < 0 || m > s) return 0;
  unsigned long long r = 1;
  for (int i = 0; i < m; ++i) r = r * static_cast<unsigned long long>(s - i) / (i + 1);
  return r;
}

// Coordinates of a cochain in a piece basis; every monomial must be listed.
SparseRow coords_in(const HochschildCochain& x,
                    const std::map<std::pair<ThetaTuple, SuperMonomial>, int>& index) {
  SparseRow row;
  for (const auto& [key, poly] : x.table)
    for (const auto& [m, coef] : poly.t) {
      auto it = index.find({key, m});
      if (it == index.end())
        throw std::logic_error("compute_hh: differential left the enumerated piece");
      row[it->second] = coef;
    }
  return row;
}

}  // namespace

PieceBasis cc_basis(int n, int a, const Datum& d, const YDegree& y, int s,
                    int max_r, int r_order, long limit) {
  PieceBasis out;
  out.y = y;
  out.s = s;
  if (s < 0) return out;
  if (n < 1 || n > kMaxN) throw IllFormed("cc_basis: n out of range");
  if (static_cast<int>(y.v.size()) != 1 + n)
    throw IllFormed("cc_basis: degree rank does not match n");

  // A value monomial r^c theta^{K0} on key (T_1, ..., T_s) lies in the
  // piece iff, for some integer q absorbing the single Y-relation,
  //   m_t := #{i : t in T_i} = a c_t + [t in K0] - w_{Y,t} - q and
  //   (2 - a) j + q (n - 2) = w_Z + sum_t w_{Y,t},   j = |c|,
  // where w = y - f(s). Keys then split coordinatewise into independent
  // index subsets S_t of size m_t, giving prod_t C(s, m_t) keys.
  YDegree w = y - f_degree(d, s);
  long wz = to_long(w.v.at(0));
  std::vector<long> wy(n);
  long wy_sum = 0;
  for (int t = 0; t < n; ++t) {
    wy[t] = to_long(w.v.at(1 + t));
    wy_sum += wy[t];
  }

  long total = 0;
  int j_lo = (r_order >= 0) ? r_order : 0;
  int j_hi = (r_order >= 0) ? r_order : max_r;
  for (int j = j_lo; j <= j_hi && j <= max_r; ++j) {
    long num = wz + wy_sum - static_cast<long>(2 - a) * j;
    std::vector<long> qs;
    if (n != 2) {
      if (num % (n - 2) != 0) continue;
      qs.push_back(num / (n - 2));
    } else {
      if (num != 0) continue;
      long wmin = *std::min_element(wy.begin(), wy.end());
      long wmax = *std::max_element(wy.begin(), wy.end());
      for (long q = -wmax - s; q <= static_cast<long>(a) * j + 1 - wmin; ++q)
        qs.push_back(q);
    }
    std::vector<std::vector<int>> cs = compositions(n, j);
    for (long q : qs)
      for (const auto& c : cs)
        for (uint32_t K0 = 0; K0 < (1u << n); ++K0) {
          std::array<int, kMaxN> m{};
          bool ok = true;
          unsigned long long cnt = 1;
          for (int t = 0; t < n; ++t) {
            long mt = static_cast<long>(a) * c[t] + ((K0 >> t) & 1u) - wy[t] - q;
            if (mt < 0 || mt > s) {
              ok = false;
              break;
            }
            m[t] = static_cast<int>(mt);
            cnt *= binom(s, m[t]);
            if (cnt > static_cast<unsigned long long>(limit) + 1)
              cnt = static_cast<unsigned long long>(limit) + 1;
          }
          if (!ok) continue;
          if (total + static_cast<long>(cnt) > limit)
            throw PieceInfinite("cc_basis: piece at " + y.str() + ", s=" +
                                std::to_string(s) + " exceeds " + std::to_string(limit) +
                                " elements");
          total += static_cast<long>(cnt);
          SuperMonomial val;
          for (int t = 0; t < n; ++t) val.c[t] = static_cast<int8_t>(c[t]);
          val.J = K0;
          ThetaTuple key(s, 0u);
          std::function<void(int)> rec = [&](int t) {
            if (t == n) {
              out.elems.push_back({key, val});
              return;
            }
            int mt = m[t];
            std::vector<int> idx(mt);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
              for (int i : idx) key[i] |= (1u << t);
              rec(t + 1);
              for (int i : idx) key[i] &= ~(1u << t);
              int p = mt - 1;
              while (p >= 0 && idx[p] == s - mt + p) --p;
              if (p < 0) break;
              ++idx[p];
              for (int z = p + 1; z < mt; ++z) idx[z] = idx[z - 1] + 1;
            }
          };
          rec(0);
        }
  }
  return out;
}

HochschildCochain cc_from_elem(int n, int a, const Datum& d, const YDegree& y,
                               const PieceBasisElem& e, int L, int N) {
  HochschildCochain c(n, a, d, y, L, N);
  SuperPolynomial v = sp_zero(n);
  v.add_term(e.val, Rational(1));
  c.add_term(e.key, v);
  return c;
}

HHPiece compute_hh(const AInfinityStructure& mu, const YDegree& y, int s,
                   int r_order, long limit) {
  const HochschildCochain& m0 = mu.mu;
  if (m0.is_zero() || m0.min_length() != 2 || m0.max_length() != 2)
    throw IllFormed("compute_hh: mu must be supported in length exactly 2");
  for (const auto& [key, poly] : m0.table)
    for (const auto& [mono, coef] : poly.t) {
      (void)coef;
      if (mono.rorder() != 0)
        throw IllFormed("compute_hh: mu must have r-order-0 values");
    }
  if (s < 0) throw IllFormed("compute_hh: s must be >= 0");

  int n = m0.n, a = m0.a, N = m0.max_r;
  const Datum& d = m0.datum;
  // delta raises key length by one; mu itself still needs its length-2
  // keys inside the truncation window.
  int L = std::max(s + 1, 2);

  HochschildCochain mu_wide(n, a, d, m0.ydeg, L, N);
  for (const auto& [key, poly] : m0.table) mu_wide.add_term(key, poly);
  AInfinityStructure M{mu_wide};

  HHPiece out;
  out.y = y;
  out.s = s;
  PieceBasis Bmid = cc_basis(n, a, d, y, s, N, r_order, limit);
  PieceBasis Bin = cc_basis(n, a, d, y - f_degree(d, 1), s - 1, N, r_order, limit);
  PieceBasis Bout = cc_basis(n, a, d, y + f_degree(d, 1), s + 1, N, r_order, limit);
  out.dim_piece = Bmid.dim();
  out.dim_in = Bin.dim();
  out.dim_out = Bout.dim();

  std::map<std::pair<ThetaTuple, SuperMonomial>, int> out_index, mid_index;
  for (int i = 0; i < Bout.dim(); ++i)
    out_index.emplace(std::pair<ThetaTuple, SuperMonomial>{Bout.elems[i].key, Bout.elems[i].val}, i);
  for (int i = 0; i < Bmid.dim(); ++i)
    mid_index.emplace(std::pair<ThetaTuple, SuperMonomial>{Bmid.elems[i].key, Bmid.elems[i].val}, i);

  // Outgoing differential with an identity augmentation: each inserted row
  // [delta(e_i) | unit_i] makes a pivot; a pivot whose lead lies in the
  // augmented block records a kernel combination of the e_i.
  IncrementalElim elim_out;
  const int aug = Bout.dim();
  for (int i = 0; i < Bmid.dim(); ++i) {
    HochschildCochain e = cc_from_elem(n, a, d, y, Bmid.elems[i], L, N);
    SparseRow row = coords_in(hochschild_differential(M, e), out_index);
    row[aug + i] = Rational(1);
    elim_out.insert(std::move(row));
  }
  int kernel_dim = 0;
  for (const auto& [lead, prow] : elim_out.piv) {
    (void)prow;
    if (lead >= aug) ++kernel_dim;
  }
  out.rank_out = out.dim_piece - kernel_dim;

  // Image rows first, then kernel combinations; a combination that still
  // creates a pivot represents a nonzero cohomology class.
  IncrementalElim elim_in;
  for (int i = 0; i < Bin.dim(); ++i) {
    HochschildCochain e = cc_from_elem(n, a, d, y - f_degree(d, 1), Bin.elems[i], L, N);
    SparseRow row = coords_in(hochschild_differential(M, e), mid_index);
    if (row.empty()) continue;
    elim_in.insert(std::move(row));
  }
  out.rank_in = elim_in.rank();
  for (const auto& [lead, prow] : elim_out.piv) {
    if (lead < aug) continue;
    SparseRow combo;
    for (const auto& [col, v] : prow) combo[col - aug] = v;
    if (elim_in.insert(combo)) {
      HochschildCochain rep(n, a, d, y, L, N);
      for (const auto& [idx, v] : combo) {
        SuperPolynomial p = sp_zero(n);
        p.add_term(Bmid.elems[idx].val, v);
        rep.add_term(Bmid.elems[idx].key, p);
      }
      out.representatives.push_back(std::move(rep));
    }
  }
  out.dimension = out.dim_piece - out.rank_in - out.rank_out;
  if (static_cast<int>(out.representatives.size()) != out.dimension)
    throw std::logic_error("compute_hh: representative count mismatch");
  return out;
}

std::vector<HHPiece> compute_hh_range(const AInfinityStructure& mu, const YDegree& y,
                                      int s_lo, int s_hi, int r_order, long limit) {
  std::vector<HHPiece> out;
  for (int s = s_lo; s <= s_hi; ++s) out.push_back(compute_hh(mu, y, s, r_order, limit));
  return out;
}

}  // namespace forge
