#include "forge/cochain.hpp"

#include <bit>
#include <functional>
#include <sstream>

namespace forge {

namespace {

int popcount_u32(uint32_t m) { return std::popcount(m); }

// psi-value monomials grouped by theta-mask: everything needed to plug a
// value into an outer slot.
struct ValueItem {
  const ThetaTuple* key;
  SuperMonomial mono;
  Rational coef;
};
using ValueIndex = std::map<uint32_t, std::vector<ValueItem>>;

ValueIndex index_by_value_mask(const HochschildCochain& c) {
  ValueIndex idx;
  for (const auto& [key, val] : c.table)
    for (const auto& [m, q] : val.t) idx[m.J].push_back({&key, m, q});
  return idx;
}

// The pure-r part of a value monomial as a polynomial factor.
SuperPolynomial r_factor(int n, const SuperMonomial& m, const Rational& coef) {
  SuperPolynomial p(n);
  SuperMonomial r;
  r.c = m.c;
  p.add_term(r, coef);
  return p;
}

TruncationPolicy value_policy(const HochschildCochain& c) {
  TruncationPolicy pol;
  pol.max_r = c.max_r;
  return pol;
}

}  // namespace

void HochschildCochain::add_term(const ThetaTuple& key, const SuperPolynomial& val) {
  if (val.zero()) return;
  if (static_cast<int>(key.size()) > max_len) return;
  for (const auto& [m, q] : val.t) {
    (void)q;
    if (m.uorder() != 0 || m.K != 0)
      throw IllFormed("cochain values must lie in the exterior algebra over r");
  }
  SuperPolynomial kept = truncate(val, value_policy(*this));
  if (kept.zero()) return;
  auto it = table.find(key);
  if (it == table.end()) {
    table.emplace(key, std::move(kept));
  } else {
    it->second += kept;
    if (it->second.zero()) table.erase(it);
  }
}

const SuperPolynomial* HochschildCochain::find(const ThetaTuple& key) const {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

HochschildCochain& HochschildCochain::operator+=(const HochschildCochain& o) {
  require_compatible(*this, o);
  if (!o.is_zero() && !is_zero() && ydeg != o.ydeg)
    throw IllFormed("cochain sum of mismatched degrees");
  if (is_zero() && !o.is_zero()) ydeg = o.ydeg;
  for (const auto& [k, v] : o.table) add_term(k, v);
  return *this;
}

HochschildCochain& HochschildCochain::operator-=(const HochschildCochain& o) {
  return *this += -o;
}

HochschildCochain HochschildCochain::operator+(const HochschildCochain& o) const {
  HochschildCochain r = *this;
  r += o;
  return r;
}

HochschildCochain HochschildCochain::operator-(const HochschildCochain& o) const {
  HochschildCochain r = *this;
  r -= o;
  return r;
}

HochschildCochain HochschildCochain::operator-() const {
  HochschildCochain r(n, a, datum, ydeg, max_len, max_r);
  for (const auto& [k, v] : table) r.table.emplace(k, -v);
  return r;
}

HochschildCochain HochschildCochain::operator*(const Rational& k) const {
  HochschildCochain r(n, a, datum, ydeg, max_len, max_r);
  if (k == 0) return r;
  for (const auto& [key, v] : table) r.table.emplace(key, v * k);
  return r;
}

bool HochschildCochain::operator==(const HochschildCochain& o) const {
  if (!cochains_compatible(*this, o)) return false;
  if (table != o.table) return false;
  if (is_zero() && o.is_zero()) return true;
  return ydeg == o.ydeg;
}

HochschildCochain HochschildCochain::length_part(int s) const {
  HochschildCochain r(n, a, datum, ydeg, max_len, max_r);
  for (const auto& [k, v] : table)
    if (static_cast<int>(k.size()) == s) r.table.emplace(k, v);
  return r;
}

HochschildCochain HochschildCochain::order_part(int j) const {
  HochschildCochain r(n, a, datum, ydeg, max_len, max_r);
  for (const auto& [k, v] : table) {
    SuperPolynomial part = r_order_part(v, j);
    if (!part.zero()) r.table.emplace(k, std::move(part));
  }
  return r;
}

int HochschildCochain::min_length() const {
  if (table.empty()) return -1;
  int m = max_len + 1;
  for (const auto& [k, v] : table) {
    (void)v;
    m = std::min(m, static_cast<int>(k.size()));
  }
  return m;
}

int HochschildCochain::max_length() const {
  if (table.empty()) return -1;
  int m = 0;
  for (const auto& [k, v] : table) {
    (void)v;
    m = std::max(m, static_cast<int>(k.size()));
  }
  return m;
}

void HochschildCochain::validate() const {
  for (const auto& [key, val] : table) {
    int s = static_cast<int>(key.size());
    YDegree expect = ydeg - f_degree(datum, s);
    for (uint32_t mask : key) {
      expect = expect + monomial_degree({}, std::vector<int>(n, 0), mask, 0, datum, a,
                                        DegreeConvention::CochainInput);
    }
    auto got = homogeneous_degree(val, datum, a, DegreeConvention::CochainInput);
    if (!got) continue;
    if (*got != expect) throw IllFormed("cochain entry violates the declared degree");
  }
}

std::string HochschildCochain::str() const {
  std::ostringstream os;
  os << "cochain deg " << ydeg.str() << " {\n";
  for (const auto& [key, val] : table) {
    os << "  [";
    for (size_t i = 0; i < key.size(); ++i) {
      if (i) os << ",";
      os << key[i];
    }
    os << "] -> " << val.str() << "\n";
  }
  os << "}";
  return os.str();
}

bool cochains_compatible(const HochschildCochain& x, const HochschildCochain& y) {
  if (x.n != y.n || x.a != y.a || x.max_len != y.max_len || x.max_r != y.max_r)
    return false;
  if (x.datum.get() == y.datum.get()) return true;
  return x.datum && y.datum && x.datum->Y->same_presentation(*y.datum->Y);
}

void require_compatible(const HochschildCochain& x, const HochschildCochain& y) {
  if (!cochains_compatible(x, y)) throw IllFormed("incompatible cochains");
}

HochschildCochain cc_zero(int n, int a, const Datum& d, const YDegree& y, int L, int N) {
  return HochschildCochain(n, a, d, y, L, N);
}

HochschildCochain cc_identity(int n, int a, const Datum& d, int L, int N) {
  HochschildCochain r(n, a, d, f_degree(d, 1), L, N);
  for (uint32_t k = 0; k < (1u << n); ++k)
    r.add_term(ThetaTuple{k}, sp_theta(n, k));
  return r;
}

HochschildCochain cc_constant(int n, int a, const Datum& d, int L, int N,
                              const SuperPolynomial& value) {
  auto deg = homogeneous_degree(value, d, a, DegreeConvention::CochainInput);
  if (!deg) throw IllFormed("constant cochain needs a nonzero homogeneous value");
  HochschildCochain r(n, a, d, *deg, L, N);
  r.add_term(ThetaTuple{}, value);
  return r;
}

bool AInfinityStructure::minimal() const { return mu.is_zero() || mu.min_length() >= 2; }

bool AInfinityStructure::curved() const {
  return !mu.is_zero() && mu.min_length() == 0;
}

AInfinityStructure exterior_mu2(int n, int a, const Datum& d, int L, int N) {
  HochschildCochain mu(n, a, d, f_degree(d, 2), L, N);
  for (uint32_t a1 = 0; a1 < (1u << n); ++a1) {
    for (uint32_t a2 = 0; a2 < (1u << n); ++a2) {
      if (a1 & a2) continue;
      int sign = merge_sign(a2, a1);
      if (popcount_u32(a1) & 1) sign = -sign;
      mu.add_term(ThetaTuple{a1, a2}, sp_theta(n, a1 | a2) * Rational(sign));
    }
  }
  return AInfinityStructure{std::move(mu)};
}

HochschildCochain gerstenhaber_circ(const HochschildCochain& phi,
                                    const HochschildCochain& psi) {
  require_compatible(phi, psi);
  YDegree out_deg = phi.ydeg + psi.ydeg - f_degree(phi.datum, 1);
  HochschildCochain out(phi.n, phi.a, phi.datum, out_deg, phi.max_len, phi.max_r);
  if (phi.is_zero() || psi.is_zero()) return out;

  ValueIndex psi_idx = index_by_value_mask(psi);
  int sig_psi = psi.parity();
  TruncationPolicy pol = value_policy(out);

  for (const auto& [pkey, pval] : phi.table) {
    int p = static_cast<int>(pkey.size());
    long prefix = 0;  // sum over skipped bottom args of (sigma(a)-1)
    for (int i = 0; i < p; ++i) {
      auto bucket = psi_idx.find(pkey[i]);
      if (bucket != psi_idx.end()) {
        bool neg = ((sig_psi + 1) & 1) && (prefix & 1);
        for (const ValueItem& item : bucket->second) {
          const ThetaTuple& q = *item.key;
          if (p - 1 + static_cast<int>(q.size()) > out.max_len) continue;
          ThetaTuple key;
          key.reserve(p - 1 + q.size());
          key.insert(key.end(), pkey.begin(), pkey.begin() + i);
          key.insert(key.end(), q.begin(), q.end());
          key.insert(key.end(), pkey.begin() + i + 1, pkey.end());
          SuperPolynomial contrib =
              mul(pval, r_factor(phi.n, item.mono, neg ? Rational(-item.coef) : item.coef),
                  pol);
          out.add_term(key, contrib);
        }
      }
      prefix += popcount_u32(pkey[i]) - 1;
    }
  }
  return out;
}

HochschildCochain bracket(const HochschildCochain& phi, const HochschildCochain& psi) {
  HochschildCochain r = gerstenhaber_circ(phi, psi);
  HochschildCochain s = gerstenhaber_circ(psi, phi);
  bool neg = ((phi.parity() + 1) * (psi.parity() + 1)) & 1;
  if (neg)
    r += s;
  else
    r -= s;
  return r;
}

HochschildCochain hochschild_differential(const AInfinityStructure& mu,
                                          const HochschildCochain& tau) {
  return bracket(mu.mu, tau);
}

HochschildCochain diamond(const HochschildCochain& phi, const HochschildCochain& F) {
  require_compatible(phi, F);
  if (F.ydeg != f_degree(F.datum, 1) && !F.is_zero())
    throw IllFormed("diamond needs a degree-f(1) right factor");
  if (F.min_length() == 0) throw IllFormed("diamond needs lengths >= 1");
  HochschildCochain out(phi.n, phi.a, phi.datum, phi.ydeg, phi.max_len, phi.max_r);
  if (phi.is_zero() || F.is_zero()) return out;

  ValueIndex f_idx = index_by_value_mask(F);
  TruncationPolicy pol = value_policy(out);

  // DFS over the slots of one phi-entry, assembling blocks bottom-up.
  for (const auto& entry : phi.table) {
    const ThetaTuple& gkey = entry.first;
    const SuperPolynomial& gval = entry.second;
    int j = static_cast<int>(gkey.size());
    if (j == 0) {
      out.add_term(gkey, gval);  // no slots: the empty partition
      continue;
    }
    ThetaTuple key;
    SuperPolynomial acc = gval;
    std::function<void(int)> dfs = [&](int slot) {
      if (static_cast<int>(key.size()) > out.max_len || acc.zero()) return;
      if (slot == j) {
        out.add_term(key, acc);
        return;
      }
      auto bucket = f_idx.find(gkey[slot]);
      if (bucket == f_idx.end()) return;
      for (const ValueItem& item : bucket->second) {
        size_t keep = key.size();
        key.insert(key.end(), item.key->begin(), item.key->end());
        SuperPolynomial saved = acc;
        acc = mul(acc, r_factor(phi.n, item.mono, item.coef), pol);
        dfs(slot + 1);
        acc = std::move(saved);
        key.resize(keep);
      }
    };
    dfs(0);
  }
  return out;
}

HochschildCochain yoneda(const HochschildCochain& phi, const HochschildCochain& psi,
                         const AInfinityStructure& mu) {
  require_compatible(phi, psi);
  require_compatible(phi, mu.mu);
  YDegree out_deg = phi.ydeg + psi.ydeg;
  HochschildCochain out(phi.n, phi.a, phi.datum, out_deg, phi.max_len, phi.max_r);
  if (phi.is_zero() || psi.is_zero() || mu.mu.is_zero()) return out;

  ValueIndex phi_idx = index_by_value_mask(phi);
  ValueIndex psi_idx = index_by_value_mask(psi);
  int sig_phi = phi.parity(), sig_psi = psi.parity();
  TruncationPolicy pol = value_policy(out);

  for (const auto& [mkey, mval] : mu.mu.table) {
    int alpha = static_cast<int>(mkey.size());
    for (int ppsi = 0; ppsi + 1 < alpha; ++ppsi) {
      auto bpsi = psi_idx.find(mkey[ppsi]);
      if (bpsi == psi_idx.end()) continue;
      for (int pphi = ppsi + 1; pphi < alpha; ++pphi) {
        auto bphi = phi_idx.find(mkey[pphi]);
        if (bphi == phi_idx.end()) continue;
        long s_bottom = 0;  // sum sigma(a) over retained entries below psi
        for (int m = 0; m < ppsi; ++m) s_bottom += popcount_u32(mkey[m]);
        long s_mid = 0;  // retained entries strictly between the two slots
        for (int m = ppsi + 1; m < pphi; ++m) s_mid += popcount_u32(mkey[m]);
        for (const ValueItem& iv_psi : bpsi->second) {
          const ThetaTuple& bq = *iv_psi.key;
          int gamma = static_cast<int>(bq.size());
          long s_bq = 0;
          for (uint32_t mk : bq) s_bq += popcount_u32(mk);
          long j = ppsi;
          long l = ppsi + gamma + (pphi - ppsi - 1);
          long sum_j = s_bottom, sum_l = s_bottom + s_bq + s_mid;
          int dag = 0;
          if ((sig_phi + 1) & 1) dag ^= static_cast<int>((sum_l - l) & 1);
          if ((sig_psi + 1) & 1) dag ^= static_cast<int>((sum_j - j) & 1);
          for (const ValueItem& iv_phi : bphi->second) {
            const ThetaTuple& bp = *iv_phi.key;
            int total = alpha - 2 + gamma + static_cast<int>(bp.size());
            if (total > out.max_len) continue;
            ThetaTuple key;
            key.reserve(total);
            key.insert(key.end(), mkey.begin(), mkey.begin() + ppsi);
            key.insert(key.end(), bq.begin(), bq.end());
            key.insert(key.end(), mkey.begin() + ppsi + 1, mkey.begin() + pphi);
            key.insert(key.end(), bp.begin(), bp.end());
            key.insert(key.end(), mkey.begin() + pphi + 1, mkey.end());
            Rational coef = iv_psi.coef * iv_phi.coef;
            if (dag) coef = -coef;
            SuperPolynomial contrib = mul(mval, r_factor(phi.n, iv_psi.mono, coef), pol);
            contrib = mul(contrib, r_factor(phi.n, iv_phi.mono, Rational(1)), pol);
            out.add_term(key, contrib);
          }
        }
      }
    }
  }
  return out;
}

AinfReport check_ainf(const AInfinityStructure& s) {
  AinfReport rep;
  rep.residual = gerstenhaber_circ(s.mu, s.mu);
  rep.passed = rep.residual.is_zero();
  if (rep.passed) {
    rep.summary = "mu o mu = 0 within truncation";
  } else {
    std::ostringstream os;
    os << "mu o mu != 0: " << rep.residual.table.size() << " nonzero entries at lengths";
    int lo = rep.residual.min_length(), hi = rep.residual.max_length();
    os << " " << lo << ".." << hi;
    rep.summary = os.str();
  }
  return rep;
}

}  // namespace forge
