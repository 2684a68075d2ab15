#pragma once

// Rational polyhedral cones given by lattice generators.
//
// Facets are computed eagerly by the double description method applied to the
// dual cone. Cones that are not full-dimensional are handled in coordinates of
// the saturated lattice of their linear span, so the DD step always runs in
// full dimension.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "nashloop/exactmath.hpp"

namespace nashloop {

class NotPointedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void sort_unique(std::vector<LatticeVector>& vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

/// Greedy lexicographically-first linearly independent subset (indices).
inline std::vector<std::size_t> independent_subset(const std::vector<LatticeVector>& vs,
                                                   std::size_t dim) {
  std::vector<std::size_t> picked;
  std::vector<LatticeVector> cur;
  for (std::size_t i = 0; i < vs.size() && cur.size() < dim; ++i) {
    cur.push_back(vs[i]);
    if (rank(cur, dim) == cur.size()) {
      picked.push_back(i);
    } else {
      cur.pop_back();
    }
  }
  return picked;
}

/// Extreme rays of { a : <c, a> >= 0 for all c in constraints }.
///
/// The constraints must span Q^dim, which makes the dual pointed. Uses the
/// double description method with the combinatorial adjacency test.
inline std::vector<LatticeVector> dual_extreme_rays(const std::vector<LatticeVector>& constraints,
                                                    std::size_t dim) {
  if (dim == 0) return {};
  const std::size_t n = constraints.size();
  auto basis = independent_subset(constraints, dim);
  if (basis.size() != dim) throw std::logic_error("dual_extreme_rays: constraints do not span");

  IntMatrix g0(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g0(i, j) = constraints[basis[i]][j];
  Integer d = det(g0);
  IntMatrix adj = adjugate(g0);

  using Bits = boost::dynamic_bitset<>;
  std::vector<LatticeVector> rays;
  std::vector<Bits> tight;
  for (std::size_t j = 0; j < dim; ++j) {
    LatticeVector r = adj.column(j);
    if (d < 0) r = -r;
    rays.push_back(primitive(std::move(r)));
    Bits b(n);
    for (std::size_t i = 0; i < dim; ++i)
      if (i != j) b.set(basis[i]);
    tight.push_back(std::move(b));
  }

  std::vector<bool> in_basis(n, false);
  for (auto i : basis) in_basis[i] = true;

  for (std::size_t k = 0; k < n; ++k) {
    if (in_basis[k]) continue;
    const auto& c = constraints[k];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(c, rays[i]);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) tight[i].set(k);
      continue;
    }
    std::vector<LatticeVector> next_rays;
    std::vector<Bits> next_tight;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      next_rays.push_back(rays[i]);
      next_tight.push_back(tight[i]);
      if (val[i] == 0) next_tight.back().set(k);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits z = tight[p] & tight[q];
        if (dim >= 2 && z.count() < dim - 2) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          if (z.is_subset_of(tight[o])) adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector r = val[p] * rays[q] - val[q] * rays[p];
        next_rays.push_back(primitive(std::move(r)));
        z.set(k);
        next_tight.push_back(std::move(z));
      }
    }
    rays = std::move(next_rays);
    tight = std::move(next_tight);
  }
  sort_unique(rays);
  return rays;
}

/// Normal n to the hyperplane spanned by `face` (dim - 1 vectors in Q^dim):
/// <n, v> = det(v, face...).
inline LatticeVector hyperplane_normal(const std::vector<LatticeVector>& face, std::size_t dim) {
  LatticeVector n(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    IntMatrix minor(dim - 1, dim - 1);
    for (std::size_t r = 0, rr = 0; r < dim; ++r) {
      if (r == i) continue;
      for (std::size_t c = 0; c + 1 < dim; ++c) minor(rr, c) = face[c][r];
      ++rr;
    }
    Integer m = det(minor);
    n[i] = (i % 2 == 0) ? m : Integer(-m);
  }
  return n;
}

}  // namespace detail

/// A rational polyhedral cone, immutable after construction.
class Cone {
 public:
  Cone() = default;

  /// Cone generated by `vs` in Z^dim. An empty list gives the zero cone.
  static Cone from_generators(std::size_t dim, std::vector<LatticeVector> vs) {
    Cone c;
    c.ambient_dim_ = dim;
    for (auto& v : vs) {
      if (v.dim() != dim) throw DimensionError("cone generator has wrong dimension");
      if (!v.is_zero()) c.generators_.push_back(primitive(std::move(v)));
    }
    detail::sort_unique(c.generators_);
    c.build_span();
    c.build_facets();
    return c;
  }

  static Cone from_generators(std::vector<LatticeVector> vs) {
    if (vs.empty()) throw DimensionError("from_generators: cannot infer dimension of empty list");
    std::size_t d = vs.front().dim();
    return from_generators(d, std::move(vs));
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the linear span.
  std::size_t dim() const { return span_dim_; }
  bool is_full_dimensional() const { return span_dim_ == ambient_dim_; }
  bool is_pointed() const { return pointed_; }

  /// Primitive generators, sorted; exactly the extreme rays when pointed.
  const std::vector<LatticeVector>& generators() const { return generators_; }
  const std::vector<LatticeVector>& rays() const { return generators_; }
  /// Primitive inner facet normals (ambient coordinates), sorted.
  const std::vector<LatticeVector>& facets() const { return facets_; }
  /// Integer equations cutting out the linear span.
  const std::vector<LatticeVector>& equations() const { return equations_; }

  bool contains(const LatticeVector& x) const {
    if (x.dim() != ambient_dim_) throw DimensionError("contains: dimension mismatch");
    for (const auto& e : equations_)
      if (dot(e, x) != 0) return false;
    for (const auto& f : facets_)
      if (dot(f, x) < 0) return false;
    return true;
  }

  /// Strictly positive integral functional on the nonzero points of the cone.
  LatticeVector positive_grading() const { return primitive(positive_grading_unreduced()); }

  /// Simplices of a placing triangulation, as index tuples into rays().
  const std::vector<std::vector<std::size_t>>& triangulation_indices() const {
    require_triangulable();
    return triangulation_;
  }

  std::vector<Cone> triangulate() const {
    std::vector<Cone> out;
    for (const auto& simplex : triangulation_indices()) {
      std::vector<LatticeVector> g;
      for (auto i : simplex) g.push_back(generators_[i]);
      out.push_back(from_generators(ambient_dim_, std::move(g)));
    }
    return out;
  }

  bool is_simplicial() const { return generators_.size() == span_dim_; }

  /// d! times the volume of { x in cone : <grading, x> <= 1 }, measured in the
  /// span lattice; `grading` is in ambient coordinates and positive on the rays.
  /// Independent of the triangulation.
  Rational sliced_volume(const LatticeVector& grading) const {
    Rational vol = 0;
    for (const auto& simplex : triangulation_indices()) {
      Integer denom = 1;
      for (auto i : simplex) {
        Integer g = dot(grading, generators_[i]);
        if (g <= 0) throw std::domain_error("sliced_volume: grading is not positive on the rays");
        denom *= g;
      }
      vol += Rational(Integer(abs(det(span_matrix(simplex)))), denom);
    }
    return vol;
  }

  /// sliced_volume for the sum of the primitive facet normals, which every
  /// lattice automorphism preserves.
  Rational normalized_volume() const { return sliced_volume(positive_grading_unreduced()); }

  // --- span-lattice coordinates -------------------------------------------

  /// Columns form a Z-basis of span ∩ Z^d.
  const std::vector<LatticeVector>& span_basis() const { return span_basis_; }

  /// Coordinates of x (in span ∩ Z^d) with respect to span_basis().
  LatticeVector to_span(const LatticeVector& x) const {
    if (full_) return x;
    LatticeVector xr(span_dim_);
    for (std::size_t i = 0; i < span_dim_; ++i) xr[i] = x[pivot_rows_[i]];
    LatticeVector y = span_adj_ * xr;
    for (std::size_t i = 0; i < span_dim_; ++i) {
      if (y[i] % span_det_ != 0) throw std::domain_error("to_span: vector not in span lattice");
      y[i] /= span_det_;
    }
    return y;
  }

  LatticeVector from_span(const LatticeVector& y) const {
    if (full_) return y;
    LatticeVector x(ambient_dim_);
    for (std::size_t j = 0; j < span_dim_; ++j) x += y[j] * span_basis_[j];
    return x;
  }

  /// Facet normals in span coordinates.
  const std::vector<LatticeVector>& span_facets() const { return span_facets_; }
  const std::vector<LatticeVector>& span_rays() const { return span_rays_; }

  /// Matrix (span coordinates) whose columns are the rays at `idx`.
  IntMatrix span_matrix(const std::vector<std::size_t>& idx) const {
    std::vector<LatticeVector> cols;
    for (auto i : idx) cols.push_back(span_rays_[i]);
    return IntMatrix(span_dim_, std::move(cols));
  }

 private:
  LatticeVector positive_grading_unreduced() const {
    if (!pointed_) throw NotPointedError("positive_grading: cone is not pointed");
    LatticeVector l(ambient_dim_);
    for (const auto& f : facets_) l += f;
    return l;
  }

  void require_triangulable() const {
    if (!pointed_) throw NotPointedError("triangulate: cone is not pointed");
  }

  void build_span() {
    const std::size_t d = ambient_dim_;
    std::size_t r = rank(generators_, d);
    span_dim_ = r;
    full_ = (r == d);
    if (full_) {
      for (std::size_t i = 0; i < d; ++i) span_basis_.push_back(LatticeVector::unit(d, i));
      span_rays_ = generators_;
      return;
    }
    // equations: integer kernel of G^T
    if (generators_.empty()) {
      for (std::size_t i = 0; i < d; ++i) equations_.push_back(LatticeVector::unit(d, i));
    } else {
      IntMatrix gt = IntMatrix(d, generators_).transposed();
      equations_ = integer_kernel(gt);
    }
    if (r == 0) {
      span_adj_ = IntMatrix(0, 0);
      span_det_ = 1;
      return;
    }
    IntMatrix e = IntMatrix(d, equations_).transposed();
    span_basis_ = integer_kernel(e);
    IntMatrix k(d, span_basis_);
    // pick r independent rows of K
    std::vector<LatticeVector> krows;
    for (std::size_t i = 0; i < d; ++i) krows.push_back(k.row(i));
    pivot_rows_ = detail::independent_subset(krows, r);
    IntMatrix kr(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) kr(i, j) = k(pivot_rows_[i], j);
    span_det_ = det(kr);
    span_adj_ = adjugate(kr);
    for (const auto& g : generators_) span_rays_.push_back(to_span(g));
  }

  LatticeVector ambient_functional(const LatticeVector& a) const {
    if (full_) return a;
    // f(x) = sign(det) * a^T adj(K_R) x_R, a positive multiple of <a, y(x)>.
    LatticeVector f(ambient_dim_);
    LatticeVector w = span_adj_.transposed() * a;
    for (std::size_t i = 0; i < span_dim_; ++i) f[pivot_rows_[i]] = span_det_ < 0 ? Integer(-w[i]) : w[i];
    return primitive(std::move(f));
  }

  bool span_contains(const LatticeVector& y) const {
    for (const auto& a : span_facets_)
      if (dot(a, y) < 0) return false;
    return true;
  }

  void build_facets() {
    span_facets_ = detail::dual_extreme_rays(span_rays_, span_dim_);
    for (const auto& a : span_facets_) facets_.push_back(ambient_functional(a));

    // Pointed iff no generator has its negative inside the cone.
    pointed_ = std::none_of(span_rays_.begin(), span_rays_.end(),
                            [&](const LatticeVector& y) { return span_contains(-y); });
    if (!pointed_) return;

    // Keep only extreme rays: those with span_dim - 1 independent tight facets.
    std::vector<LatticeVector> keep, keep_span;
    for (std::size_t i = 0; i < span_rays_.size(); ++i) {
      std::vector<LatticeVector> tight;
      for (const auto& a : span_facets_)
        if (dot(a, span_rays_[i]) == 0) tight.push_back(a);
      if (span_dim_ == 0 || rank(tight, span_dim_) + 1 == span_dim_) {
        keep.push_back(generators_[i]);
        keep_span.push_back(span_rays_[i]);
      }
    }
    generators_ = std::move(keep);
    span_rays_ = std::move(keep_span);
    build_triangulation();
  }

  /// Placing triangulation over the rays in lexicographic order.
  void build_triangulation() {
    const std::size_t r = span_dim_;
    if (r == 0) return;
    auto init = detail::independent_subset(span_rays_, r);
    std::vector<std::vector<std::size_t>> simplices{init};
    std::vector<bool> used(span_rays_.size(), false);
    for (auto i : init) used[i] = true;

    for (std::size_t v = 0; v < span_rays_.size(); ++v) {
      if (used[v]) continue;
      // boundary faces: (r-1)-subsets contained in exactly one simplex
      std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> faces;  // -> (count, opposite)
      for (const auto& s : simplices) {
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          std::vector<std::size_t> f;
          for (std::size_t t = 0; t < s.size(); ++t)
            if (t != drop) f.push_back(s[t]);
          auto& entry = faces[f];
          entry.first += 1;
          entry.second = s[drop];
        }
      }
      std::vector<std::vector<std::size_t>> added;
      for (const auto& [f, info] : faces) {
        if (info.first != 1) continue;
        std::vector<LatticeVector> fv;
        for (auto i : f) fv.push_back(span_rays_[i]);
        LatticeVector n = detail::hyperplane_normal(fv, r);
        if (dot(n, span_rays_[info.second]) < 0) n = -n;
        if (dot(n, span_rays_[v]) < 0) {
          auto s = f;
          s.push_back(v);
          std::sort(s.begin(), s.end());
          added.push_back(std::move(s));
        }
      }
      for (auto& s : added) simplices.push_back(std::move(s));
      used[v] = true;
    }
    std::sort(simplices.begin(), simplices.end());
    triangulation_ = std::move(simplices);
  }

  std::size_t ambient_dim_ = 0;
  std::size_t span_dim_ = 0;
  bool full_ = true;
  bool pointed_ = true;
  std::vector<LatticeVector> generators_;
  std::vector<LatticeVector> facets_;
  std::vector<LatticeVector> equations_;
  std::vector<LatticeVector> span_basis_;
  std::vector<std::size_t> pivot_rows_;
  IntMatrix span_adj_;
  Integer span_det_ = 1;
  std::vector<LatticeVector> span_rays_;
  std::vector<LatticeVector> span_facets_;
  std::vector<std::vector<std::size_t>> triangulation_;
};

}  // namespace nashloop
