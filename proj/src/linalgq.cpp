#include "forge/linalgq.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace forge {

std::vector<Rational> mat_apply(const QMatrix& A, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != A.cols)
    throw std::invalid_argument("apply: size mismatch");
  std::vector<Rational> y(A.rows, Rational(0));
  for (int i = 0; i < A.rows; ++i)
    for (const auto& [j, v] : A.r[i]) y[i] += v * x[j];
  return y;
}

bool IncrementalElim::insert(SparseRow row) {
  while (!row.empty()) {
    int lc = row.begin()->first;
    auto it = piv.find(lc);
    if (it == piv.end()) {
      Rational lead = row.begin()->second;
      if (lead != 1) {
        Rational inv = 1 / lead;
        for (auto& [j, v] : row) v *= inv;
      }
      piv.emplace(lc, std::move(row));
      return true;
    }
    Rational f = row.begin()->second;
    for (const auto& [j, v] : it->second) {
      auto rit = row.find(j);
      if (rit == row.end()) {
        Rational nv = -f * v;
        row.emplace(j, std::move(nv));
      } else {
        rit->second -= f * v;
        if (is_zero(rit->second)) row.erase(rit);
      }
    }
  }
  return false;
}

namespace {

// Eliminate later pivot columns from every pivot row (full reduction).
void back_reduce(IncrementalElim& e) {
  auto& piv = e.piv;
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    SparseRow& row = it->second;
    for (auto jt = row.upper_bound(it->first); jt != row.end();) {
      auto pt = piv.find(jt->first);
      if (pt == piv.end()) {
        ++jt;
        continue;
      }
      Rational f = jt->second;
      for (const auto& [j, v] : pt->second) {
        auto rit = row.find(j);
        if (rit == row.end()) {
          Rational nv = -f * v;
          row.emplace(j, std::move(nv));
        } else {
          rit->second -= f * v;
          if (is_zero(rit->second)) row.erase(rit);
        }
      }
      jt = row.upper_bound(it->first);
    }
  }
}

// Feed rows sparsest-first so that pivots stay sparse.
IncrementalElim eliminate(const QMatrix& A) {
  std::vector<int> order(static_cast<size_t>(A.rows));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return A.r[x].size() < A.r[y].size(); });
  IncrementalElim e;
  for (int i : order)
    if (!A.r[i].empty()) e.insert(A.r[i]);
  return e;
}

}  // namespace

RowEchelon rref(const QMatrix& A) {
  IncrementalElim e = eliminate(A);
  back_reduce(e);
  RowEchelon out;
  out.R = QMatrix(A.rows, A.cols);
  int i = 0;
  for (auto& [col, row] : e.piv) {
    out.pivot_cols.push_back(col);
    out.R.r[i++] = std::move(row);
  }
  out.rank = i;
  return out;
}

int rank(const QMatrix& A) { return static_cast<int>(eliminate(A).piv.size()); }

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& A) {
  IncrementalElim e = eliminate(A);
  std::vector<bool> is_pivot(static_cast<size_t>(A.cols), false);
  for (const auto& [c, row] : e.piv) is_pivot[static_cast<size_t>(c)] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < A.cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> x(static_cast<size_t>(A.cols), Rational(0));
    x[static_cast<size_t>(free)] = 1;
    // echelon back-substitution: pivot columns in descending order
    for (auto it = e.piv.rbegin(); it != e.piv.rend(); ++it) {
      if (it->first > free) continue;
      Rational acc(0);
      for (auto jt = std::next(it->second.begin()); jt != it->second.end(); ++jt) {
        if (jt->first > free) break;  // columns beyond `free` are all zero in x
        acc -= jt->second * x[static_cast<size_t>(jt->first)];
      }
      x[static_cast<size_t>(it->first)] = std::move(acc);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& A,
                                           const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw std::invalid_argument("solve: size mismatch");
  QMatrix aug(A.rows, A.cols + 1);
  aug.r = A.r;
  for (int i = 0; i < A.rows; ++i)
    if (!is_zero(b[i])) aug.r[i][A.cols] = b[i];
  RowEchelon e = rref(aug);
  std::vector<Rational> x(static_cast<size_t>(A.cols), Rational(0));
  for (int p = 0; p < e.rank; ++p) {
    if (e.pivot_cols[static_cast<size_t>(p)] == A.cols) return std::nullopt;
    auto it = e.R.r[p].find(A.cols);
    x[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(p)])] =
        it == e.R.r[p].end() ? Rational(0) : it->second;
  }
  return x;
}

}  // namespace forge
