#include "forge/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace forge {

IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (sgn(x.at(i, k)) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

IntMat mat_sub(const IntMat& x, const IntMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("mat_sub: shape mismatch");
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

Integer mat_det(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("mat_det: not square");
  int n = m.rows;
  if (n == 0) return Integer(1);
  IntMat w = m;
  Integer prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(w.at(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (sgn(w.at(i, k)) != 0) { p = i; break; }
      if (p < 0) return Integer(0);
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Integer t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        w.at(i, j) = t / prev;  // exact division (Bareiss)
      }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

namespace {

void row_swap(IntMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void col_swap(IntMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row i += q * row j
void row_axpy(IntMat& m, int i, int j, const Integer& q) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) += q * m.at(j, c);
}
void col_axpy(IntMat& m, int i, int j, const Integer& q) {
  for (int r = 0; r < m.rows; ++r) m.at(r, i) += q * m.at(r, j);
}
void row_neg(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
  SmithForm sf;
  sf.D = m;
  sf.U = IntMat::identity(m.rows);
  sf.V = IntMat::identity(m.cols);
  IntMat& D = sf.D;
  int t = 0;
  int limit = std::min(m.rows, m.cols);
  while (t < limit) {
    // find a pivot with minimal absolute value in the remaining block
    int pi = -1, pj = -1;
    Integer best;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        if (sgn(D.at(i, j)) == 0) continue;
        Integer v = abs(D.at(i, j));
        if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
      }
    if (pi < 0) break;  // remaining block is zero
    if (pi != t) { row_swap(D, t, pi); row_swap(sf.U, t, pi); }
    if (pj != t) { col_swap(D, t, pj); col_swap(sf.V, t, pj); }

    bool clean = true;
    for (int i = t + 1; i < D.rows; ++i) {
      if (sgn(D.at(i, t)) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), D.at(i, t).get_mpz_t(), D.at(t, t).get_mpz_t());
      row_axpy(D, i, t, -q);
      row_axpy(sf.U, i, t, -q);
      if (sgn(D.at(i, t)) != 0) clean = false;
    }
    for (int j = t + 1; j < D.cols; ++j) {
      if (sgn(D.at(t, j)) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), D.at(t, j).get_mpz_t(), D.at(t, t).get_mpz_t());
      col_axpy(D, j, t, -q);
      col_axpy(sf.V, j, t, -q);
      if (sgn(D.at(t, j)) != 0) clean = false;
    }
    if (!clean) continue;  // new smaller remainders appeared; redo the pivot

    // pivot must divide every entry of the remaining block
    bool divides = true;
    for (int i = t + 1; i < D.rows && divides; ++i)
      for (int j = t + 1; j < D.cols && divides; ++j) {
        if (sgn(D.at(i, j)) == 0) continue;
        Integer r;
        mpz_tdiv_r(r.get_mpz_t(), D.at(i, j).get_mpz_t(), D.at(t, t).get_mpz_t());
        if (sgn(r) != 0) {
          // fold row i into row t to pull the bad entry into the pivot column
          row_axpy(D, t, i, Integer(1));
          row_axpy(sf.U, t, i, Integer(1));
          divides = false;
        }
      }
    if (!divides) continue;

    if (sgn(D.at(t, t)) < 0) { row_neg(D, t); row_neg(sf.U, t); }
    ++t;
  }
  sf.rank = t;
  return sf;
}

bool in_column_lattice(const SmithForm& sf, const std::vector<Integer>& z) {
  if (static_cast<int>(z.size()) != sf.D.rows)
    throw std::invalid_argument("in_column_lattice: size mismatch");
  for (int i = 0; i < sf.D.rows; ++i) {
    Integer y(0);
    for (int j = 0; j < sf.U.cols; ++j) y += sf.U.at(i, j) * z[j];
    if (i < sf.rank) {
      Integer r;
      mpz_tdiv_r(r.get_mpz_t(), y.get_mpz_t(), sf.D.at(i, i).get_mpz_t());
      if (sgn(r) != 0) return false;
    } else if (sgn(y) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace forge
