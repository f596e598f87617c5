#include "forge/hkr.hpp"

#include <bit>
#include <sstream>

namespace forge {

PolyvectorField phi(const HochschildCochain& alpha) {
  SuperPolynomial out = sp_zero(alpha.n);
  for (const auto& [key, val] : alpha.table) {
    SuperMonomial u{};
    bool singletons = true;
    for (uint32_t mask : key) {
      if (std::popcount(mask) != 1) {
        singletons = false;
        break;
      }
      u.b[std::countr_zero(mask)] += 1;
    }
    if (!singletons) continue;
    for (const auto& [m, coef] : val.t) {
      SuperMonomial mm = m;  // values are u-free; graft the slot exponents
      mm.b = u.b;
      out.add_term(mm, coef);
    }
  }
  return out;
}

PolyvectorField deformation_class(const AInfinityStructure& mu) {
  return phi(mu.mu.order_part(1));
}

TypeAReport type_a_check(const AInfinityStructure& mu, int n) {
  TypeAReport rep;
  rep.discrepancy = sp_zero(n);
  const HochschildCochain& m = mu.mu;
  AInfinityStructure ext = exterior_mu2(n, m.a, m.datum, m.max_len, m.max_r);
  if (m.length_part(2).order_part(0) != ext.mu) {
    rep.summary = "order-0 product is not the exterior product";
    return rep;
  }

  HochschildCochain hi = cc_zero(n, m.a, m.datum, m.ydeg, m.max_len, m.max_r);
  for (int s = 3; s <= m.max_len; ++s) hi += m.length_part(s);
  PolyvectorField image = phi(hi);
  PolyvectorField low = r_order_part(image, 0) + r_order_part(image, 1);

  SuperPolynomial target = sp_zero(n);
  SuperMonomial vol{};
  for (int j = 0; j < n; ++j) vol.b[j] = 1;
  target.add_term(vol, Rational(1));
  for (int j = 0; j < n; ++j) {
    SuperMonomial tj{};
    tj.c[j] = 1;
    tj.b[j] = static_cast<int8_t>(n);
    target.add_term(tj, Rational(1));
  }

  rep.discrepancy = low - target;
  rep.passed = rep.discrepancy.zero();
  std::ostringstream os;
  if (rep.passed) {
    os << "type A: volume term and all " << n << " first-order classes match";
  } else {
    os << "type A discrepancy: " << rep.discrepancy.str();
  }
  rep.summary = os.str();
  return rep;
}

}  // namespace forge
