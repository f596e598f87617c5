#include "forge/superpoly.hpp"

#include <sstream>

namespace forge {

void SuperPolynomial::add_term(const SuperMonomial& m, const Rational& coef) {
  if (is_zero(coef)) return;
  auto it = t.find(m);
  if (it == t.end()) {
    t.emplace(m, coef);
  } else {
    it->second += coef;
    if (is_zero(it->second)) t.erase(it);
  }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  if (n != o.n) throw std::invalid_argument("variable count mismatch");
  for (const auto& [m, c] : o.t) add_term(m, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
  if (n != o.n) throw std::invalid_argument("variable count mismatch");
  for (const auto& [m, c] : o.t) add_term(m, -c);
  return *this;
}

SuperPolynomial SuperPolynomial::operator+(const SuperPolynomial& o) const {
  SuperPolynomial r = *this;
  r += o;
  return r;
}

SuperPolynomial SuperPolynomial::operator-(const SuperPolynomial& o) const {
  SuperPolynomial r = *this;
  r -= o;
  return r;
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial r(n);
  for (const auto& [m, c] : t) r.t.emplace(m, -c);
  return r;
}

SuperPolynomial SuperPolynomial::operator*(const Rational& k) const {
  SuperPolynomial r(n);
  if (is_zero(k)) return r;
  for (const auto& [m, c] : t) r.t.emplace(m, c * k);
  return r;
}

int SuperPolynomial::parity() const {
  int p = -1;
  for (const auto& [m, c] : t) {
    int q = m.parity();
    if (p < 0) p = q;
    else if (p != q) throw IllFormed("polynomial of mixed parity");
  }
  return p;
}

std::string SuperPolynomial::str() const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rational_str(c) << ")";
    for (int j = 0; j < n; ++j)
      if (m.c[j]) {
        os << "*r" << (j + 1);
        if (m.c[j] > 1) os << "^" << int(m.c[j]);
      }
    for (int j = 0; j < n; ++j)
      if (m.b[j]) {
        os << "*u" << (j + 1);
        if (m.b[j] > 1) os << "^" << int(m.b[j]);
      }
    for (int j = 0; j < n; ++j)
      if (m.J >> j & 1u) os << "*t" << (j + 1);
    for (int j = 0; j < n; ++j)
      if (m.K >> j & 1u) os << "*d" << (j + 1);
  }
  return os.str();
}

SuperPolynomial sp_zero(int n) { return SuperPolynomial(n); }

SuperPolynomial sp_const(int n, const Rational& k) {
  SuperPolynomial p(n);
  p.add_term(SuperMonomial{}, k);
  return p;
}

SuperPolynomial sp_u(int n, int j, int pow) {
  SuperPolynomial p(n);
  SuperMonomial m;
  m.b[j] = static_cast<int8_t>(pow);
  p.add_term(m, rat(1));
  return p;
}

SuperPolynomial sp_r(int n, int j, int pow) {
  SuperPolynomial p(n);
  SuperMonomial m;
  m.c[j] = static_cast<int8_t>(pow);
  p.add_term(m, rat(1));
  return p;
}

SuperPolynomial sp_theta(int n, uint32_t J) {
  SuperPolynomial p(n);
  SuperMonomial m;
  m.J = J;
  p.add_term(m, rat(1));
  return p;
}

SuperPolynomial sp_dtheta(int n, uint32_t K) {
  SuperPolynomial p(n);
  SuperMonomial m;
  m.K = K;
  p.add_term(m, rat(1));
  return p;
}

namespace {

inline uint64_t odd_word(const SuperMonomial& m, int n) {
  return static_cast<uint64_t>(m.J) | (static_cast<uint64_t>(m.K) << n);
}

SuperPolynomial mul_impl(const SuperPolynomial& x, const SuperPolynomial& y,
                         const TruncationPolicy* pol) {
  if (x.n != y.n) throw std::invalid_argument("variable count mismatch");
  SuperPolynomial r(x.n);
  for (const auto& [mx, cx] : x.t)
    for (const auto& [my, cy] : y.t) {
      int sg = merge_sign(odd_word(mx, x.n), odd_word(my, x.n));
      if (sg == 0) continue;
      SuperMonomial m = mx;
      for (int j = 0; j < x.n; ++j) {
        m.c[j] = static_cast<int8_t>(m.c[j] + my.c[j]);
        m.b[j] = static_cast<int8_t>(m.b[j] + my.b[j]);
      }
      m.J = mx.J | my.J;
      m.K = mx.K | my.K;
      if (pol && !pol->keeps(m)) continue;
      Rational prod = cx * cy;
      r.add_term(m, sg > 0 ? prod : Rational(-prod));
    }
  return r;
}

}  // namespace

SuperPolynomial mul(const SuperPolynomial& x, const SuperPolynomial& y) {
  return mul_impl(x, y, nullptr);
}

SuperPolynomial mul(const SuperPolynomial& x, const SuperPolynomial& y,
                    const TruncationPolicy& pol) {
  return mul_impl(x, y, &pol);
}

SuperPolynomial truncate(const SuperPolynomial& x, const TruncationPolicy& pol) {
  SuperPolynomial r(x.n);
  for (const auto& [m, c] : x.t)
    if (pol.keeps(m)) r.t.emplace(m, c);
  return r;
}

SuperPolynomial d_dtheta(int j, const SuperPolynomial& p) {
  SuperPolynomial r(p.n);
  uint32_t bit = 1u << j;
  for (const auto& [m, c] : p.t) {
    if (!(m.J & bit)) continue;
    SuperMonomial q = m;
    q.J &= ~bit;
    int below = std::popcount(m.J & (bit - 1));
    r.add_term(q, (below & 1) ? -c : c);
  }
  return r;
}

SuperPolynomial d_du(int j, const SuperPolynomial& p) {
  SuperPolynomial r(p.n);
  for (const auto& [m, c] : p.t) {
    if (!m.b[j]) continue;
    SuperMonomial q = m;
    q.b[j] = static_cast<int8_t>(q.b[j] - 1);
    r.add_term(q, c * m.b[j]);
  }
  return r;
}

SuperPolynomial r_order_part(const SuperPolynomial& p, int k) {
  SuperPolynomial r(p.n);
  for (const auto& [m, c] : p.t)
    if (m.rorder() == k) r.t.emplace(m, c);
  return r;
}

std::vector<SuperPolynomial> euler_split(const SuperPolynomial& w) {
  std::vector<SuperPolynomial> out(w.n, SuperPolynomial(w.n));
  for (const auto& [m, c] : w.t) {
    int deg = m.uorder();
    if (deg < 1) throw NoEvenPart("monomial with no u part: " + w.str());
    for (int j = 0; j < w.n; ++j) {
      if (!m.b[j]) continue;
      SuperMonomial q = m;
      q.b[j] = static_cast<int8_t>(q.b[j] - 1);
      out[j].add_term(q, c * rat(m.b[j], deg));
    }
  }
  return out;
}

SuperPolynomial contract_dW(const SuperPolynomial& W, const SuperPolynomial& eta) {
  if (W.n != eta.n) throw std::invalid_argument("variable count mismatch");
  SuperPolynomial r(W.n);
  for (int j = 0; j < W.n; ++j) {
    SuperPolynomial dW = d_du(j, W);
    if (dW.zero()) continue;
    SuperPolynomial de = d_dtheta(j, eta);
    if (de.zero()) continue;
    r += mul(dW, de);
  }
  return r;
}

std::optional<YDegree> homogeneous_degree(const SuperPolynomial& p, const Datum& datum,
                                          int a, DegreeConvention conv) {
  std::optional<YDegree> deg;
  for (const auto& [m, c] : p.t) {
    std::vector<int> b(p.n), cc(p.n);
    for (int j = 0; j < p.n; ++j) {
      b[j] = m.b[j];
      cc[j] = m.c[j];
    }
    YDegree d = monomial_degree(b, cc, m.J, m.K, datum, a, conv);
    if (!deg) deg = d;
    else if (*deg != d) throw IllFormed("polynomial not homogeneous: " + p.str());
  }
  return deg;
}

}  // namespace forge
