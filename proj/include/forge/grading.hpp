#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/intmat.hpp"

namespace forge {

struct IllFormed : std::runtime_error {
  explicit IllFormed(const std::string& what) : std::runtime_error(what) {}
};

// Finitely generated abelian group presented by generators and relation
// columns. The Smith form of the relation matrix is cached so element and
// morphism comparisons are O(gens^2).
struct FgAbelianGroup {
  int gens = 0;
  IntMat rel;  // gens x nrels
  SmithForm sf;

  FgAbelianGroup(int gens_, IntMat rel_);

  bool contains_in_lattice(const std::vector<Integer>& z) const {
    return in_column_lattice(sf, z);
  }
  bool elements_equal(const std::vector<Integer>& a, const std::vector<Integer>& b) const;

  // invariant factors >= 2 plus free rank, canonical under iso
  std::vector<Integer> torsion() const;
  int free_rank() const { return gens - sf.rank; }

  bool same_presentation(const FgAbelianGroup& o) const {
    return gens == o.gens && rel == o.rel;
  }
};

using Group = std::shared_ptr<const FgAbelianGroup>;

Group make_group(int gens, IntMat rel);
Group group_Z();      // free of rank 1
Group group_Z2();     // Z/2

// Homomorphism between presented groups, stored on generators.
struct GroupHom {
  Group source, target;
  IntMat mat;  // target.gens x source.gens

  static GroupHom checked(Group src, Group dst, IntMat m);
  static GroupHom unchecked(Group src, Group dst, IntMat m);

  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  bool well_defined() const;

 private:
  GroupHom(Group s, Group t, IntMat m)
      : source(std::move(s)), target(std::move(t)), mat(std::move(m)) {}
};

GroupHom compose(const GroupHom& outer, const GroupHom& inner);
// Agree on generators modulo target relations. Sound and complete for maps
// out of a presented group.
bool hom_equal(const GroupHom& a, const GroupHom& b);

// Unsigned grading datum {Z -> Y} with its sign morphism to Z/2.
struct GradingDatum {
  Group Y;
  IntMat f;      // Y.gens x 1
  IntMat sigma;  // 1 x Y.gens, entries read mod 2
  // metadata for the standard family G^n_a; -1 when not applicable
  int n = -1;
  int a = 0;

  void validate() const;
};

using Datum = std::shared_ptr<const GradingDatum>;

// Degree in the Y of a datum, compared modulo the relation lattice.
struct YDegree {
  Datum datum;
  std::vector<Integer> v;

  YDegree() = default;
  YDegree(Datum d, std::vector<Integer> vv) : datum(std::move(d)), v(std::move(vv)) {}

  bool operator==(const YDegree& o) const;
  bool operator!=(const YDegree& o) const { return !(*this == o); }
  YDegree operator+(const YDegree& o) const;
  YDegree operator-(const YDegree& o) const;
  YDegree operator*(long k) const;
  int sigma() const;  // parity under the sign morphism
  std::string str() const;
};

YDegree f_degree(const Datum& d, long k);   // k * f(1)
YDegree zero_degree(const Datum& d);

// Pseudo-grading datum (f : Z^p -> Z^q, c : Z^p -> Z with even image).
struct PseudoGradingDatum {
  int zrank = 0, yrank = 0;
  IntMat f;  // yrank x zrank
  IntMat c;  // 1 x zrank, even entries

  void validate() const;
};

// Morphism of pseudo-grading data. Realizes to a hom of grading data when
// the c-compatibility c_src = c_dst . pZ + d . f_src holds.
struct PseudoMorphism {
  PseudoGradingDatum src, dst;
  IntMat pZ;  // dst.zrank x src.zrank
  IntMat pY;  // dst.yrank x src.yrank
  IntMat d;   // 1 x src.yrank, even entries

  bool c_compatible() const;
};

PseudoMorphism pm_compose(const PseudoMorphism& outer, const PseudoMorphism& inner);

Datum realize(const PseudoGradingDatum& h);
// j + y |-> (j + d(y)) + pY(y); throws IllFormed unless c-compatible
// (set check=false to build the map anyway, for negative tests).
GroupHom realize_morphism(const PseudoMorphism& pm, bool check = true);

// Standard family.
PseudoGradingDatum pseudo_zero();
PseudoGradingDatum pseudo_H(int n, int a);   // c = 2(n-a), f = y_[n]
PseudoGradingDatum pseudo_H_MF(int n);       // c = 2, f = *n
Datum datum_GZ();
Datum datum_G(int n, int a);
Datum datum_G_MF(int n);

// Corners of the commuting square: q1 : H^n_n -> 0, p1 : H^n_n -> H^n_1,
// q2 : H^n_1 -> H_MF(n).
PseudoMorphism square_q1(int n);
PseudoMorphism square_p1(int n);
PseudoMorphism square_q2(int n, bool perturb_d = false);

// The square q2 . p1 = p2 . q1 : G^n_n -> G_MF(n) of realized morphisms.
// With perturb_q2_d the d-component of q2 is zeroed, which breaks
// commutativity; the composites are still compared on generators.
bool check_square(int n, bool perturb_q2_d = false);

// Degree bookkeeping conventions. CochainInput matches the Hochschild
// accounting (theta and u both (-1, y_j)); Operator grades the algebra
// S[theta, dtheta] so delta gets degree f(1); Polyvector grades the HKR
// codomain so phi is degree-preserving.
enum class DegreeConvention { CochainInput, Operator, Polyvector };

YDegree monomial_degree(const std::vector<int>& b, const std::vector<int>& c,
                        uint32_t J, uint32_t K, const Datum& datum, int a,
                        DegreeConvention conv = DegreeConvention::CochainInput);

// One solution of the degree-constraint system for G^n_a at order j and
// total degree s + t.
struct GradingSolution {
  std::vector<int> b, c;
  uint32_t K = 0;
  long q = 0;
  long s = 0, t = 0;

  bool operator==(const GradingSolution& o) const {
    return b == o.b && c == o.c && K == o.K && q == o.q && s == o.s && t == o.t;
  }
};

// Enumerates (b, c, K, q) with y_K + a*c - b = q*y_[n], s = |b|, |c| = j,
// t = st - s subject to t = (n-2)q + (2-a)j, |K| = s+t+2(q-j) and the
// redundant check (n-2)|K| = (n-2)s + nt + 2(a-n)j, with |b| <= bound.
std::vector<GradingSolution> solve_gradings(int n, int a, int j, long st, int bound_b);

}  // namespace forge
