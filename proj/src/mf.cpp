#include "forge/mf.hpp"

#include <bit>
#include <optional>
#include <string>

#include "forge/clifford.hpp"

namespace forge {

namespace {

// Does p have YDegree deg throughout (in the given convention)?  Zero
// polynomials and exact matches pass; inhomogeneous or mismatched fail.
bool is_homogeneous_of(const SuperPolynomial& p, const Datum& datum, int a,
                       DegreeConvention conv, const YDegree& want) {
  try {
    auto d = homogeneous_degree(p, datum, a, conv);
    return !d.has_value() || *d == want;
  } catch (const IllFormed&) {
    return false;
  }
}

}  // namespace

MatrixFactorization build_O0(const SuperPolynomial& w, int n, int a) {
  if (a < 0) a = n;
  if (w.n != n) throw IllFormed("build_O0: variable count mismatch");
  for (const auto& [m, q] : w.t)
    if (m.J != 0 || m.K != 0)
      throw NoEvenPart("superpotential must be theta-free: " + w.str());

  MatrixFactorization mf;
  mf.n = n;
  mf.a = a;
  mf.datum = datum_G(n, 1);  // ambient datum; the r-weight enters via a
  mf.w = w;

  // delta = sum_j (u_j dtheta_j + w_j theta_j) with the Euler decomposition
  // w = sum_j u_j w_j; euler_split rejects monomials without a u part.
  std::vector<SuperPolynomial> wj =
      w.zero() ? std::vector<SuperPolynomial>(n, sp_zero(n)) : euler_split(w);
  SuperPolynomial delta = sp_zero(n);
  for (int j = 0; j < n; ++j) {
    delta += mul(sp_u(n, j), sp_dtheta(n, 1u << j));
    if (!wj[j].zero()) delta += mul(wj[j], sp_theta(n, 1u << j));
  }
  mf.delta = delta;

  mf.graded = is_homogeneous_of(w, mf.datum, a, DegreeConvention::Polyvector,
                                f_degree(mf.datum, 2));
  return mf;
}

SuperPolynomial square(const MatrixFactorization& mf) {
  SuperPolynomial sq = op_mul(mf.delta, mf.delta);
  SuperPolynomial scalar(mf.n);
  SuperPolynomial residual(mf.n);
  for (const auto& [m, q] : sq.t) {
    if (m.J == 0 && m.K == 0)
      scalar.add_term(m, q);
    else
      residual.add_term(m, q);
  }
  if (!residual.zero())
    throw NotScalar("delta^2 has a non-scalar part", residual);
  return scalar;
}

MfDegreeReport mf_degree_check(const MatrixFactorization& mf) {
  MfDegreeReport rep;
  auto violate = [&](const std::string& s) { rep.violations.push_back(s); };

  // parity: delta must be odd
  try {
    if (!mf.delta.zero() && mf.delta.parity() != 1) violate("delta is not odd");
  } catch (const IllFormed&) {
    violate("delta has mixed parity");
  }

  // square must be the superpotential
  try {
    SuperPolynomial sq = square(mf);
    if (!(sq - mf.w).zero()) violate("delta^2 != w * id");
  } catch (const NotScalar&) {
    violate("delta^2 is not scalar");
  }

  int checked = 0, skipped = 0;
  if (mf.graded) {
    // delta has operator degree f(1); w has polyvector degree f(2)
    if (!is_homogeneous_of(mf.delta, mf.datum, mf.a, DegreeConvention::Operator,
                           f_degree(mf.datum, 1)))
      violate("delta is not homogeneous of degree f(1)");
    else
      ++checked;
    if (!is_homogeneous_of(mf.w, mf.datum, mf.a, DegreeConvention::Polyvector,
                           f_degree(mf.datum, 2)))
      violate("w is not homogeneous of degree f(2)");
    else
      ++checked;
    // module generators theta^J sit in cochain-input degree (-|J|, y_J)
    for (uint32_t J = 0; J < (1u << mf.n); ++J) {
      auto d = homogeneous_degree(sp_theta(mf.n, J), mf.datum, mf.a,
                                  DegreeConvention::CochainInput);
      YDegree want = zero_degree(mf.datum);
      want.v[0] = -int(std::popcount(J));
      for (int j = 0; j < mf.n; ++j)
        if (J & (1u << j)) want.v[1 + j] += 1;
      if (!d || !(*d == want))
        violate("theta^J generator degree mismatch at J=" + std::to_string(J));
      else
        ++checked;
    }
  } else {
    skipped = 2 + (1 << mf.n);
  }

  rep.passed = rep.violations.empty();
  rep.summary = rep.passed
                    ? (mf.graded ? std::to_string(checked) + " degree assignments verified"
                                 : "structure checks hold; " + std::to_string(skipped) +
                                       " homogeneity checks skipped (w not graded)")
                    : std::to_string(rep.violations.size()) + " violations";
  return rep;
}

TransferData endo_dga(const MatrixFactorization& mf, const TruncationPolicy& pol) {
  SuperPolynomial sq = square(mf);  // throws NotScalar on a malformed delta
  if (!(sq - mf.w).zero())
    throw IllFormed("endo_dga: delta^2 != w * id");

  TransferData td;
  td.n = mf.n;
  td.a = mf.a;
  td.datum = mf.datum;
  td.pol = pol;
  // split delta into the contraction part (K != 0) and the wedge part (J != 0)
  td.delta0 = sp_zero(mf.n);
  td.delta1 = sp_zero(mf.n);
  for (const auto& [m, q] : mf.delta.t) {
    if (m.K != 0 && m.J == 0)
      td.delta0.add_term(m, q);
    else if (m.J != 0 && m.K == 0)
      td.delta1.add_term(m, q);
    else
      throw IllFormed("endo_dga: delta has a mixed theta/dtheta monomial");
  }
  return td;
}

SuperPolynomial fermat_potential(int n) {
  SuperPolynomial w = sp_zero(n);
  SuperPolynomial vol = sp_const(n, Rational(1));
  for (int j = 0; j < n; ++j) vol = mul(vol, sp_u(n, j));
  w += vol;
  for (int j = 0; j < n; ++j) w += mul(sp_r(n, j), sp_u(n, j, n));
  return w;
}

SuperPolynomial fermat_potential_at(int n, const Rational& r) {
  SuperPolynomial w = sp_zero(n);
  SuperPolynomial vol = sp_const(n, Rational(1));
  for (int j = 0; j < n; ++j) vol = mul(vol, sp_u(n, j));
  w += vol;
  for (int j = 0; j < n; ++j) w += sp_u(n, j, n) * r;
  return w;
}

}  // namespace forge
