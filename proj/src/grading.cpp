#include "forge/grading.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace forge {

FgAbelianGroup::FgAbelianGroup(int gens_, IntMat rel_) : gens(gens_), rel(std::move(rel_)) {
  if (rel.rows != gens) throw std::invalid_argument("relation matrix row count != gens");
  sf = smith_normal_form(rel);
}

bool FgAbelianGroup::elements_equal(const std::vector<Integer>& a,
                                    const std::vector<Integer>& b) const {
  if (static_cast<int>(a.size()) != gens || static_cast<int>(b.size()) != gens)
    throw std::invalid_argument("element size mismatch");
  std::vector<Integer> z(gens);
  for (int i = 0; i < gens; ++i) z[i] = a[i] - b[i];
  return contains_in_lattice(z);
}

std::vector<Integer> FgAbelianGroup::torsion() const {
  std::vector<Integer> t;
  for (int i = 0; i < sf.rank; ++i)
    if (sf.D.at(i, i) > 1) t.push_back(sf.D.at(i, i));
  return t;
}

Group make_group(int gens, IntMat rel) {
  return std::make_shared<FgAbelianGroup>(gens, std::move(rel));
}

Group group_Z() {
  static Group g = make_group(1, IntMat(1, 0));
  return g;
}

Group group_Z2() {
  IntMat rel(1, 1);
  rel.at(0, 0) = 2;
  static Group g = make_group(1, std::move(rel));
  return g;
}

GroupHom GroupHom::checked(Group src, Group dst, IntMat m) {
  GroupHom h(std::move(src), std::move(dst), std::move(m));
  if (h.mat.rows != h.target->gens || h.mat.cols != h.source->gens)
    throw IllFormed("hom matrix shape mismatch");
  if (!h.well_defined()) throw IllFormed("map does not send relations into relations");
  return h;
}

GroupHom GroupHom::unchecked(Group src, Group dst, IntMat m) {
  return GroupHom(std::move(src), std::move(dst), std::move(m));
}

bool GroupHom::well_defined() const {
  IntMat image = mat_mul(mat, source->rel);
  std::vector<Integer> col(target->gens);
  for (int j = 0; j < image.cols; ++j) {
    for (int i = 0; i < target->gens; ++i) col[i] = image.at(i, j);
    if (!target->contains_in_lattice(col)) return false;
  }
  return true;
}

std::vector<Integer> GroupHom::apply(const std::vector<Integer>& v) const {
  if (static_cast<int>(v.size()) != source->gens)
    throw std::invalid_argument("apply: element size mismatch");
  std::vector<Integer> out(target->gens, Integer(0));
  for (int i = 0; i < mat.rows; ++i)
    for (int j = 0; j < mat.cols; ++j) out[i] += mat.at(i, j) * v[j];
  return out;
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (!outer.source->same_presentation(*inner.target))
    throw std::invalid_argument("compose: middle group mismatch");
  return GroupHom::unchecked(inner.source, outer.target, mat_mul(outer.mat, inner.mat));
}

bool hom_equal(const GroupHom& a, const GroupHom& b) {
  if (!a.source->same_presentation(*b.source) || !a.target->same_presentation(*b.target))
    return false;
  IntMat diff = mat_sub(a.mat, b.mat);
  std::vector<Integer> col(a.target->gens);
  for (int j = 0; j < diff.cols; ++j) {
    for (int i = 0; i < diff.rows; ++i) col[i] = diff.at(i, j);
    if (!a.target->contains_in_lattice(col)) return false;
  }
  return true;
}

void GradingDatum::validate() const {
  if (f.rows != Y->gens || f.cols != 1) throw IllFormed("f shape");
  if (sigma.rows != 1 || sigma.cols != Y->gens) throw IllFormed("sigma shape");
  // sigma must kill the relations mod 2
  IntMat sr = mat_mul(sigma, Y->rel);
  for (int j = 0; j < sr.cols; ++j)
    if (!is_even(sr.at(0, j))) throw IllFormed("sign morphism not defined on quotient");
  Integer sf1(0);
  for (int i = 0; i < Y->gens; ++i) sf1 += sigma.at(0, i) * f.at(i, 0);
  if (is_even(sf1)) throw IllFormed("sigma(f(1)) must be odd");
}

bool YDegree::operator==(const YDegree& o) const {
  if (!datum || !o.datum) throw std::invalid_argument("degree without datum");
  if (!datum->Y->same_presentation(*o.datum->Y)) return false;
  return datum->Y->elements_equal(v, o.v);
}

YDegree YDegree::operator+(const YDegree& o) const {
  YDegree r(datum, v);
  for (size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
  return r;
}

YDegree YDegree::operator-(const YDegree& o) const {
  YDegree r(datum, v);
  for (size_t i = 0; i < v.size(); ++i) r.v[i] -= o.v[i];
  return r;
}

YDegree YDegree::operator*(long k) const {
  YDegree r(datum, v);
  for (auto& x : r.v) x *= k;
  return r;
}

int YDegree::sigma() const {
  Integer s(0);
  for (int i = 0; i < datum->Y->gens; ++i) s += datum->sigma.at(0, i) * v[i];
  return is_even(s) ? 0 : 1;
}

std::string YDegree::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

YDegree f_degree(const Datum& d, long k) {
  std::vector<Integer> v(d->Y->gens);
  for (int i = 0; i < d->Y->gens; ++i) v[i] = d->f.at(i, 0) * k;
  return YDegree(d, std::move(v));
}

YDegree zero_degree(const Datum& d) {
  return YDegree(d, std::vector<Integer>(d->Y->gens, Integer(0)));
}

void PseudoGradingDatum::validate() const {
  if (f.rows != yrank || f.cols != zrank) throw IllFormed("pseudo f shape");
  if (c.rows != 1 || c.cols != zrank) throw IllFormed("pseudo c shape");
  for (int j = 0; j < zrank; ++j)
    if (!is_even(c.at(0, j))) throw IllFormed("c must have image in 2Z");
}

bool PseudoMorphism::c_compatible() const {
  // c_src = c_dst . pZ + d . f_src
  IntMat lhs = src.c;
  IntMat rhs = mat_mul(dst.c, pZ);
  IntMat df = mat_mul(d, src.f);
  for (int j = 0; j < lhs.cols; ++j)
    if (lhs.at(0, j) != rhs.at(0, j) + df.at(0, j)) return false;
  return true;
}

PseudoMorphism pm_compose(const PseudoMorphism& outer, const PseudoMorphism& inner) {
  if (outer.src.zrank != inner.dst.zrank || outer.src.yrank != inner.dst.yrank)
    throw std::invalid_argument("pm_compose: middle datum mismatch");
  PseudoMorphism r;
  r.src = inner.src;
  r.dst = outer.dst;
  r.pZ = mat_mul(outer.pZ, inner.pZ);
  r.pY = mat_mul(outer.pY, inner.pY);
  // d = d_inner + d_outer . pY_inner
  r.d = mat_mul(outer.d, inner.pY);
  for (int j = 0; j < r.d.cols; ++j) r.d.at(0, j) += inner.d.at(0, j);
  return r;
}

Datum realize(const PseudoGradingDatum& h) {
  h.validate();
  int gens = 1 + h.yrank;
  IntMat rel(gens, h.zrank);
  for (int z = 0; z < h.zrank; ++z) {
    rel.at(0, z) = -h.c.at(0, z);
    for (int y = 0; y < h.yrank; ++y) rel.at(1 + y, z) = h.f.at(y, z);
  }
  auto d = std::make_shared<GradingDatum>();
  d->Y = make_group(gens, std::move(rel));
  d->f = IntMat(gens, 1);
  d->f.at(0, 0) = 1;
  d->sigma = IntMat(1, gens);
  d->sigma.at(0, 0) = 1;
  d->validate();
  return d;
}

GroupHom realize_morphism(const PseudoMorphism& pm, bool check) {
  if (check && !pm.c_compatible())
    throw IllFormed("pseudo-morphism fails c-compatibility");
  Datum S = realize(pm.src);
  Datum T = realize(pm.dst);
  int sg = 1 + pm.src.yrank, tg = 1 + pm.dst.yrank;
  IntMat m(tg, sg);
  m.at(0, 0) = 1;
  for (int j = 0; j < pm.src.yrank; ++j) m.at(0, 1 + j) = pm.d.at(0, j);
  for (int i = 0; i < pm.dst.yrank; ++i)
    for (int j = 0; j < pm.src.yrank; ++j) m.at(1 + i, 1 + j) = pm.pY.at(i, j);
  if (check) return GroupHom::checked(S->Y, T->Y, std::move(m));
  return GroupHom::unchecked(S->Y, T->Y, std::move(m));
}

PseudoGradingDatum pseudo_zero() {
  PseudoGradingDatum h;
  h.zrank = 0;
  h.yrank = 0;
  h.f = IntMat(0, 0);
  h.c = IntMat(1, 0);
  return h;
}

PseudoGradingDatum pseudo_H(int n, int a) {
  PseudoGradingDatum h;
  h.zrank = 1;
  h.yrank = n;
  h.f = IntMat(n, 1);
  for (int i = 0; i < n; ++i) h.f.at(i, 0) = 1;
  h.c = IntMat(1, 1);
  h.c.at(0, 0) = 2 * (n - a);
  return h;
}

PseudoGradingDatum pseudo_H_MF(int n) {
  PseudoGradingDatum h;
  h.zrank = 1;
  h.yrank = 1;
  h.f = IntMat(1, 1);
  h.f.at(0, 0) = n;
  h.c = IntMat(1, 1);
  h.c.at(0, 0) = 2;
  return h;
}

Datum datum_GZ() { return realize(pseudo_zero()); }

Datum datum_G(int n, int a) {
  Datum d = realize(pseudo_H(n, a));
  auto out = std::make_shared<GradingDatum>(*d);
  out->n = n;
  out->a = a;
  return out;
}

Datum datum_G_MF(int n) { return realize(pseudo_H_MF(n)); }

PseudoMorphism square_q1(int n) {
  PseudoMorphism q;
  q.src = pseudo_H(n, n);
  q.dst = pseudo_zero();
  q.pZ = IntMat(0, 1);
  q.pY = IntMat(0, n);
  q.d = IntMat(1, n);
  return q;
}

PseudoMorphism square_p1(int n) {
  PseudoMorphism p;
  p.src = pseudo_H(n, n);
  p.dst = pseudo_H(n, 1);
  p.pZ = IntMat(1, 1);
  p.pZ.at(0, 0) = n;
  p.pY = IntMat(n, n);
  for (int i = 0; i < n; ++i) p.pY.at(i, i) = n;
  p.d = IntMat(1, n);
  for (int j = 0; j < n; ++j) p.d.at(0, j) = 2 * (1 - n);
  return p;
}

PseudoMorphism square_q2(int n, bool perturb_d) {
  PseudoMorphism q;
  q.src = pseudo_H(n, 1);
  q.dst = pseudo_H_MF(n);
  q.pZ = IntMat(1, 1);
  q.pZ.at(0, 0) = -1;
  q.pY = IntMat(1, n);
  for (int j = 0; j < n; ++j) q.pY.at(0, j) = -1;
  q.d = IntMat(1, n);
  if (!perturb_d)
    for (int j = 0; j < n; ++j) q.d.at(0, j) = 2;
  return q;
}

bool check_square(int n, bool perturb_q2_d) {
  GroupHom q1 = realize_morphism(square_q1(n));
  GroupHom p1 = realize_morphism(square_p1(n));
  GroupHom q2 = realize_morphism(square_q2(n, perturb_q2_d), !perturb_q2_d);
  // p2 : G_Z -> G_MF(n) is the unique morphism out of the initial datum,
  // determined by f |-> f.
  Datum gz = datum_GZ();
  Datum gmf = datum_G_MF(n);
  IntMat m(gmf->Y->gens, 1);
  m.at(0, 0) = 1;
  GroupHom p2 = GroupHom::checked(gz->Y, gmf->Y, std::move(m));

  GroupHom left = compose(q2, p1);
  GroupHom right = compose(p2, q1);
  return hom_equal(left, right);
}

YDegree monomial_degree(const std::vector<int>& b, const std::vector<int>& c,
                        uint32_t J, uint32_t K, const Datum& datum, int a,
                        DegreeConvention conv) {
  int gens = datum->Y->gens;
  int n = gens - 1;
  std::vector<Integer> v(gens, Integer(0));
  auto add = [&](long z, int j, long y) {
    v[0] += z;
    v[1 + j] += y;
  };
  for (int j = 0; j < n; ++j) {
    long bj = j < static_cast<int>(b.size()) ? b[j] : 0;
    long cj = j < static_cast<int>(c.size()) ? c[j] : 0;
    if (bj) {
      switch (conv) {
        case DegreeConvention::CochainInput: add(-bj, j, bj); break;
        case DegreeConvention::Operator:
        case DegreeConvention::Polyvector: add(2 * bj, j, -bj); break;
      }
    }
    if (cj) add(static_cast<long>(2 - 2 * a) * cj, j, static_cast<long>(a) * cj);
    if (J >> j & 1u) {
      switch (conv) {
        case DegreeConvention::CochainInput:
        case DegreeConvention::Polyvector: add(-1, j, 1); break;
        case DegreeConvention::Operator: add(1, j, -1); break;
      }
    }
    if (K >> j & 1u) {
      switch (conv) {
        case DegreeConvention::CochainInput:
        case DegreeConvention::Polyvector: add(1, j, -1); break;
        case DegreeConvention::Operator: add(-1, j, 1); break;
      }
    }
  }
  return YDegree(datum, std::move(v));
}

std::vector<GradingSolution> solve_gradings(int n, int a, int j, long st, int bound_b) {
  std::vector<GradingSolution> out;
  // enumerate c >= 0 with |c| = j, in lexicographic order
  std::vector<std::vector<int>> cs;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[pos] = left;
      cs.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (n > 0) rec(rec, 0, j);

  for (uint32_t K = 0; K < (1u << n); ++K) {
    int sizeK = __builtin_popcount(K);
    for (const auto& c : cs) {
      long qhi = std::numeric_limits<long>::max();
      for (int i = 0; i < n; ++i) {
        long cap = (K >> i & 1u) + static_cast<long>(a) * c[i];
        qhi = std::min(qhi, cap);
      }
      long total = sizeK + static_cast<long>(a) * j;  // |b| = total - n*q
      // |b| <= bound_b  =>  q >= ceil((total - bound)/n)
      long qlo = -(bound_b + 8);  // fallback when n == 0 never happens (n >= 1)
      if (n > 0) {
        long num = total - bound_b;
        qlo = (num >= 0) ? (num + n - 1) / n : -((-num) / n);
      }
      for (long q = qlo; q <= qhi; ++q) {
        std::vector<int> b(n);
        long s = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          long bi = (K >> i & 1u) + static_cast<long>(a) * c[i] - q;
          if (bi < 0) { ok = false; break; }
          b[i] = static_cast<int>(bi);
          s += bi;
        }
        if (!ok || s > bound_b) continue;
        long t = st - s;
        if (t != static_cast<long>(n - 2) * q + static_cast<long>(2 - a) * j) continue;
        if (sizeK != s + t + 2 * (q - j)) continue;
        if (static_cast<long>(n - 2) * sizeK !=
            static_cast<long>(n - 2) * s + static_cast<long>(n) * t +
                2 * static_cast<long>(a - n) * j)
          continue;
        GradingSolution sol;
        sol.b = b;
        sol.c = c;
        sol.K = K;
        sol.q = q;
        sol.s = s;
        sol.t = t;
        out.push_back(std::move(sol));
      }
    }
  }
  return out;
}

}  // namespace forge
