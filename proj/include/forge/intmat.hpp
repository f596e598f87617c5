#pragma once

#include <vector>

#include "forge/rational.hpp"

namespace forge {

// Dense integer matrix with arbitrary-precision entries. Sizes here are
// tiny (group presentations), so no attempt at sparsity.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Integer> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Integer(0)) {}

  Integer& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Integer& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntMat mat_sub(const IntMat& x, const IntMat& y);

// Determinant by Bareiss fraction-free elimination. Used by tests to confirm
// the Smith witnesses are unimodular.
Integer mat_det(const IntMat& m);

// U * M * V = D with U, V unimodular and D diagonal, diagonal entries
// nonnegative and each dividing the next.
struct SmithForm {
  IntMat U, D, V;
  int rank = 0;  // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMat& m);

// Is z an integer combination of the columns of M? Decided through the
// cached Smith form: U z must be divisible by the diagonal entry row-wise
// and vanish on zero rows.
bool in_column_lattice(const SmithForm& sf, const std::vector<Integer>& z);

}  // namespace forge
