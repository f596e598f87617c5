#include "forge/clifford.hpp"

#include <map>
#include <utility>
#include <vector>

namespace forge {

namespace {

struct MergeTerm {
  int sign;
  uint32_t J;
  uint32_t K;
};

// Normal-orders the word dtheta^K . theta^J using the relations
// dtheta_k theta_j = delta_{kj} - theta_j dtheta_k.  Peeling the highest
// generator dtheta_k off the left word gives one contraction branch (k in J,
// sign (-1)^{#{j in J : j < k}}) and one pass-through branch (sign
// (-1)^{|J|}, dtheta_k appended after the smaller surviving dthetas).
const std::vector<MergeTerm>& car_merge(uint32_t K, uint32_t J) {
  static std::map<std::pair<uint32_t, uint32_t>, std::vector<MergeTerm>> cache;
  auto it = cache.find({K, J});
  if (it != cache.end()) return it->second;

  std::vector<MergeTerm> out;
  if (K == 0) {
    out.push_back({1, J, 0});
  } else {
    int k = 31 - std::countl_zero(K);
    uint32_t rest = K & ~(1u << k);
    if (J >> k & 1u) {
      int sc = (std::popcount(J & ((1u << k) - 1)) & 1) ? -1 : 1;
      for (const MergeTerm& t : car_merge(rest, J & ~(1u << k)))
        out.push_back({sc * t.sign, t.J, t.K});
    }
    int sp = (std::popcount(J) & 1) ? -1 : 1;
    for (const MergeTerm& t : car_merge(rest, J))
      out.push_back({sp * t.sign, t.J, t.K | (1u << k)});
  }
  return cache.emplace(std::make_pair(K, J), std::move(out)).first->second;
}

}  // namespace

SuperPolynomial op_mul(const SuperPolynomial& x, const SuperPolynomial& y,
                       const TruncationPolicy& pol) {
  if (x.n != y.n) throw std::invalid_argument("variable count mismatch");
  int n = x.n;
  SuperPolynomial out(n);
  for (const auto& [m1, c1] : x.t) {
    for (const auto& [m2, c2] : y.t) {
      SuperMonomial base{};
      for (int j = 0; j < n; ++j) {
        base.c[j] = static_cast<int8_t>(m1.c[j] + m2.c[j]);
        base.b[j] = static_cast<int8_t>(m1.b[j] + m2.b[j]);
      }
      if (!pol.keeps(base)) continue;
      Rational cc = c1 * c2;
      for (const MergeTerm& t : car_merge(m1.K, m2.J)) {
        int s1 = merge_sign(m1.J, t.J | (static_cast<uint64_t>(t.K) << n));
        if (!s1) continue;
        uint64_t left = m1.J | t.J | (static_cast<uint64_t>(t.K) << n);
        int s2 = merge_sign(left, static_cast<uint64_t>(m2.K) << n);
        if (!s2) continue;
        SuperMonomial m = base;
        m.J = m1.J | t.J;
        m.K = t.K | m2.K;
        int sg = t.sign * s1 * s2;
        out.add_term(m, sg > 0 ? cc : -cc);
      }
    }
  }
  return out;
}

SuperPolynomial op_mul(const SuperPolynomial& x, const SuperPolynomial& y) {
  return op_mul(x, y, TruncationPolicy{});
}

SuperPolynomial op_apply(const SuperPolynomial& op, const SuperPolynomial& f,
                         const TruncationPolicy& pol) {
  SuperPolynomial prod = op_mul(op, f, pol);
  SuperPolynomial out(prod.n);
  for (const auto& [m, c] : prod.t)
    if (m.K == 0) out.add_term(m, c);
  return out;
}

SuperPolynomial op_apply(const SuperPolynomial& op, const SuperPolynomial& f) {
  return op_apply(op, f, TruncationPolicy{});
}

SuperPolynomial op_commutator(const SuperPolynomial& x, const SuperPolynomial& y,
                              const TruncationPolicy& pol) {
  if (x.zero() || y.zero()) return SuperPolynomial(x.n ? x.n : y.n);
  SuperPolynomial r = op_mul(x, y, pol);
  SuperPolynomial s = op_mul(y, x, pol);
  if ((x.parity() & y.parity() & 1) != 0)
    r += s;
  else
    r -= s;
  return r;
}

SuperPolynomial op_commutator(const SuperPolynomial& x, const SuperPolynomial& y) {
  return op_commutator(x, y, TruncationPolicy{});
}

}  // namespace forge
