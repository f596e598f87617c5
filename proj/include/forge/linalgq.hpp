#pragma once

#include <map>
#include <optional>
#include <vector>

#include "forge/rational.hpp"

namespace forge {

// Sparse matrix over Q, row-major.
struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<std::map<int, Rational>> r;

  QMatrix() = default;
  QMatrix(int rows_, int cols_) : rows(rows_), cols(cols_), r(rows_) {}

  void set(int i, int j, const Rational& v) {
    if (is_zero(v))
      r[i].erase(j);
    else
      r[i][j] = v;
  }
  Rational get(int i, int j) const {
    auto it = r[i].find(j);
    return it == r[i].end() ? Rational(0) : it->second;
  }
  void add(int i, int j, const Rational& v) {
    auto it = r[i].find(j);
    if (it == r[i].end()) {
      if (!is_zero(v)) r[i][j] = v;
      return;
    }
    it->second += v;
    if (is_zero(it->second)) r[i].erase(it);
  }
  long nnz() const {
    long k = 0;
    for (const auto& row : r) k += static_cast<long>(row.size());
    return k;
  }
};

std::vector<Rational> mat_apply(const QMatrix& A, const std::vector<Rational>& x);

using SparseRow = std::map<int, Rational>;

// Row echelon form grown one row at a time: pivot rows are kept normalized
// (leading coefficient 1) and keyed by leading column, so the cost tracks the
// nonzero structure instead of the ambient dimensions.
struct IncrementalElim {
  std::map<int, SparseRow> piv;

  // Reduces `row` against the pivots it meets. Returns true when a remainder
  // survived and became a new pivot, false when the row was dependent.
  bool insert(SparseRow row);
  int rank() const { return static_cast<int>(piv.size()); }
};

// Reduced row echelon form, pivot columns in increasing order.
struct RowEchelon {
  QMatrix R;
  std::vector<int> pivot_cols;
  int rank = 0;
};

RowEchelon rref(const QMatrix& A);
int rank(const QMatrix& A);

// Basis of the right kernel {x : Ax = 0}, one dense vector per free column.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& A);

// One solution of Ax = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const QMatrix& A,
                                           const std::vector<Rational>& b);

}  // namespace forge
