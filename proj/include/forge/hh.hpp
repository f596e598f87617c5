#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "forge/cochain.hpp"

namespace forge {

// Raised when a graded piece would exceed the enumeration budget.
struct PieceInfinite : std::runtime_error {
  explicit PieceInfinite(const std::string& what) : std::runtime_error(what) {}
};

// One monomial cochain: a length-s key tuple together with a coefficient-1
// value monomial (r- and theta-part only).
struct PieceBasisElem {
  ThetaTuple key;
  SuperMonomial val;

  bool operator==(const PieceBasisElem& o) const { return key == o.key && val == o.val; }
};

// Deterministically ordered monomial basis of the finite graded piece of
// cochains with declared degree y and key length exactly s.
struct PieceBasis {
  YDegree y;
  int s = 0;
  std::vector<PieceBasisElem> elems;

  int dim() const { return static_cast<int>(elems.size()); }
};

// Enumerates the (y, s) piece over value monomials of r-order <= max_r.
// With r_order >= 0 only monomials of exactly that r-order are kept.
// Order: r-order ascending, then r-exponent vector lexicographic, then
// value theta-mask ascending, then key tuples in subset-DFS order.
// Negative s yields the empty basis. Throws PieceInfinite past `limit`.
PieceBasis cc_basis(int n, int a, const Datum& d, const YDegree& y, int s,
                    int max_r, int r_order = -1, long limit = 2000000);

// The single-term cochain for a basis element, built with the given
// truncation bounds.
HochschildCochain cc_from_elem(int n, int a, const Datum& d, const YDegree& y,
                               const PieceBasisElem& e, int L, int N);

// Cohomology of the length/degree spot (y, s): kernel of delta on the
// (y, s) piece modulo the image of delta from the (y - f(1), s - 1) piece,
// computed by exact rational elimination.
struct HHPiece {
  YDegree y;
  int s = 0;
  int dim_piece = 0;  // dim of the (y, s) piece
  int dim_in = 0;     // dim of the (y - f(1), s - 1) piece
  int dim_out = 0;    // dim of the (y + f(1), s + 1) piece
  int rank_in = 0;    // rank of delta into the piece
  int rank_out = 0;   // rank of delta out of the piece
  int dimension = 0;  // dim_piece - rank_in - rank_out
  // `dimension` cocycles whose classes form a basis of the cohomology.
  std::vector<HochschildCochain> representatives;
};

// Requires mu supported in length exactly 2 with r-order-0 values, so
// delta = [mu, -] preserves key length shift and the r-exponent vector and
// the spot decomposition is exact. r_order restricts the coefficient
// order as in cc_basis. Deterministic; throws IllFormed on an unsuitable
// mu and PieceInfinite via the enumeration bound.
HHPiece compute_hh(const AInfinityStructure& mu, const YDegree& y, int s,
                   int r_order = -1, long limit = 2000000);

std::vector<HHPiece> compute_hh_range(const AInfinityStructure& mu, const YDegree& y,
                                      int s_lo, int s_hi, int r_order = -1,
                                      long limit = 2000000);

}  // namespace forge
