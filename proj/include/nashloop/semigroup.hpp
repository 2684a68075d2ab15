#pragma once

// Finitely generated affine semigroups in Z^d.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nashloop/cone.hpp"
#include "nashloop/exactmath.hpp"

namespace nashloop {

class SemigroupError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

/// Depth-first search for nonnegative integer multiplicities c with
/// sum c_i gens[i] == target. `order` lists generator indices by decreasing
/// grading; the residual must stay inside `cone` and have nonnegative grading.
class Decomposer {
 public:
  Decomposer(const std::vector<LatticeVector>& gens, const LatticeVector& grading, const Cone& cone,
             std::optional<std::size_t> skip = std::nullopt)
      : gens_(gens), grading_(grading), cone_(cone) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (skip && *skip == i) continue;
      order_.push_back(i);
      values_.push_back(dot(grading, gens[i]));
    }
    std::vector<std::size_t> perm(order_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return values_[a] > values_[b]; });
    std::vector<std::size_t> o;
    std::vector<Integer> v;
    for (auto p : perm) {
      o.push_back(order_[p]);
      v.push_back(values_[p]);
    }
    order_ = std::move(o);
    values_ = std::move(v);
  }

  std::optional<std::vector<Integer>> run(const LatticeVector& target) {
    std::vector<Integer> mult(gens_.size());
    failed_.clear();
    if (search(0, target, dot(grading_, target), mult)) return mult;
    return std::nullopt;
  }

 private:
  bool search(std::size_t pos, const LatticeVector& residual, const Integer& budget,
              std::vector<Integer>& mult) {
    if (budget == 0) return residual.is_zero();
    if (budget < 0 || pos == order_.size()) return false;
    if (!cone_.contains(residual)) return false;
    auto key = std::make_pair(pos, residual);
    if (failed_.count(key)) return false;

    const auto& g = gens_[order_[pos]];
    const Integer& gv = values_[pos];
    Integer kmax = budget / gv;
    for (Integer k = kmax; k >= 0; --k) {
      LatticeVector next = residual - k * g;
      mult[order_[pos]] = k;
      if (search(pos + 1, next, budget - k * gv, mult)) return true;
    }
    mult[order_[pos]] = 0;
    failed_.insert(std::move(key));
    return false;
  }

  const std::vector<LatticeVector>& gens_;
  const LatticeVector& grading_;
  const Cone& cone_;
  std::vector<std::size_t> order_;
  std::vector<Integer> values_;
  std::set<std::pair<std::size_t, LatticeVector>> failed_;
};

}  // namespace detail

/// Hilbert basis of the saturated semigroup cone ∩ Z^d, sorted.
///
/// Triangulates the cone, collects the lattice points of every half-open
/// fundamental parallelepiped together with the rays, and keeps the
/// irreducible ones.
inline std::vector<LatticeVector> saturation_hilbert_basis(const Cone& cone) {
  if (!cone.is_pointed()) throw NotPointedError("saturation_hilbert_basis: cone is not pointed");
  const std::size_t r = cone.dim();
  if (r == 0) return {};

  std::vector<LatticeVector> candidates = cone.span_rays();
  for (const auto& simplex : cone.triangulation_indices()) {
    IntMatrix v = cone.span_matrix(simplex);
    Integer d = det(v);
    if (d == 1 || d == -1) continue;
    IntMatrix adj = adjugate(v);
    auto h = hermite_form(v).form;  // lower triangular, positive diagonal
    // Coset representatives of Z^r / V Z^r: 0 <= x_i < h(i, i).
    LatticeVector x(r);
    while (true) {
      if (!x.is_zero()) {
        LatticeVector lam = adj * x;  // = d * V^{-1} x
        LatticeVector fl(r);
        for (std::size_t i = 0; i < r; ++i) fl[i] = floor_div(lam[i], d);
        LatticeVector y = x - v * fl;
        if (!y.is_zero()) candidates.push_back(std::move(y));
      }
      std::size_t i = 0;
      while (i < r) {
        x[i] += 1;
        if (x[i] < h(i, i)) break;
        x[i] = 0;
        ++i;
      }
      if (i == r) break;
    }
  }
  detail::sort_unique(candidates);

  LatticeVector grading(r);
  for (const auto& a : cone.span_facets()) grading += a;
  std::vector<std::pair<Integer, LatticeVector>> graded;
  for (auto& c : candidates) graded.emplace_back(dot(grading, c), std::move(c));
  std::sort(graded.begin(), graded.end());

  auto in_span_cone = [&](const LatticeVector& y) {
    for (const auto& a : cone.span_facets())
      if (dot(a, y) < 0) return false;
    return true;
  };

  std::vector<std::pair<Integer, LatticeVector>> basis;
  for (const auto& [gx, x] : graded) {
    bool reducible = false;
    for (const auto& [gh, h] : basis) {
      if (gh >= gx) break;
      if (in_span_cone(x - h)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.emplace_back(gx, x);
  }

  std::vector<LatticeVector> out;
  for (const auto& [g, y] : basis) out.push_back(cone.from_span(y));
  std::sort(out.begin(), out.end());
  return out;
}

/// A finitely generated sub-semigroup of Z^d.
///
/// Immutable; the Hilbert basis is computed on first request and cached
/// (thread-safe). Copies share the cache.
class AffineSemigroup {
 public:
  AffineSemigroup() = default;

  /// Semigroup generated by `gens`; zero vectors and duplicates are dropped.
  static AffineSemigroup generated_by(std::size_t dim, std::vector<LatticeVector> gens) {
    auto st = std::make_shared<State>();
    st->dim = dim;
    for (auto& g : gens) {
      if (g.dim() != dim) throw DimensionError("semigroup generator has wrong dimension");
      if (!g.is_zero()) st->generators.push_back(std::move(g));
    }
    detail::sort_unique(st->generators);
    st->cone = Cone::from_generators(dim, st->generators);
    if (st->cone.is_pointed()) st->grading = st->cone.positive_grading();
    return AffineSemigroup(std::move(st));
  }

  static AffineSemigroup generated_by(std::vector<LatticeVector> gens) {
    if (gens.empty()) throw DimensionError("generated_by: cannot infer dimension of empty list");
    std::size_t d = gens.front().dim();
    return generated_by(d, std::move(gens));
  }

  /// The saturated semigroup cone ∩ Z^d, presented by its Hilbert basis.
  static AffineSemigroup saturation_of(const Cone& cone) {
    auto hb = saturation_hilbert_basis(cone);
    auto s = generated_by(cone.ambient_dim(), hb);
    s.state_->hilbert_basis = std::move(hb);
    std::call_once(s.state_->hb_once, [] {});
    return s;
  }

  /// Trusted constructor for a list already known to be a minimal generating set.
  static AffineSemigroup from_hilbert_basis(std::size_t dim, std::vector<LatticeVector> hb) {
    auto s = generated_by(dim, std::move(hb));
    s.state_->hilbert_basis = s.state_->generators;
    std::call_once(s.state_->hb_once, [] {});
    return s;
  }

  std::size_t ambient_dim() const { return state_->dim; }
  const std::vector<LatticeVector>& generators() const { return state_->generators; }
  const Cone& cone() const { return state_->cone; }
  bool is_pointed() const { return state_->cone.is_pointed(); }

  const LatticeVector& grading() const {
    require_pointed("grading");
    return state_->grading;
  }

  /// True iff the generators span Z^d as a group.
  bool generates_full_lattice() const {
    if (state_->generators.empty()) return state_->dim == 0;
    return nashloop::generates_full_lattice(IntMatrix(state_->dim, state_->generators));
  }

  /// Unique minimal generating set (sorted). Requires pointedness.
  const std::vector<LatticeVector>& hilbert_basis() const {
    require_pointed("hilbert_basis");
    std::call_once(state_->hb_once, [this] {
      const auto& gens = state_->generators;
      std::vector<LatticeVector> hb;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        detail::Decomposer dec(gens, state_->grading, state_->cone, i);
        if (!dec.run(gens[i])) hb.push_back(gens[i]);
      }
      state_->hilbert_basis = std::move(hb);
    });
    return state_->hilbert_basis;
  }

  /// Multiplicities over generators() summing to x, if x is in the semigroup.
  std::optional<std::vector<Integer>> decompose(const LatticeVector& x) const {
    require_pointed("membership");
    if (x.dim() != state_->dim) throw DimensionError("membership: dimension mismatch");
    if (x.is_zero()) return std::vector<Integer>(state_->generators.size());
    if (!state_->cone.contains(x)) return std::nullopt;
    detail::Decomposer dec(state_->generators, state_->grading, state_->cone);
    return dec.run(x);
  }

  bool contains(const LatticeVector& x) const { return decompose(x).has_value(); }

 private:
  struct State {
    std::size_t dim = 0;
    std::vector<LatticeVector> generators;
    Cone cone;
    LatticeVector grading;
    std::once_flag hb_once;
    std::vector<LatticeVector> hilbert_basis;
  };

  explicit AffineSemigroup(std::shared_ptr<State> st) : state_(std::move(st)) {}

  void require_pointed(const char* what) const {
    if (!is_pointed()) throw NotPointedError(std::string(what) + ": semigroup is not pointed");
  }

  std::shared_ptr<State> state_;
};

struct Membership {
  bool member = false;
  std::vector<Integer> witness;  ///< multiplicities over s.generators()
};

inline Membership membership(const AffineSemigroup& s, const LatticeVector& x) {
  auto w = s.decompose(x);
  if (!w) return {};
  return {true, std::move(*w)};
}

inline const std::vector<LatticeVector>& hilbert_basis(const AffineSemigroup& s) {
  return s.hilbert_basis();
}

inline bool semigroups_equal(const AffineSemigroup& a, const AffineSemigroup& b) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  const auto& ha = a.hilbert_basis();
  const auto& hb = b.hilbert_basis();
  return std::all_of(ha.begin(), ha.end(), [&](const auto& g) { return b.contains(g); }) &&
         std::all_of(hb.begin(), hb.end(), [&](const auto& g) { return a.contains(g); });
}

inline AffineSemigroup saturate(const AffineSemigroup& s) {
  if (!s.is_pointed()) throw NotPointedError("saturate: semigroup is not pointed");
  return AffineSemigroup::saturation_of(s.cone());
}

inline bool is_saturated(const AffineSemigroup& s) {
  return s.hilbert_basis() == saturation_hilbert_basis(s.cone());
}

/// Pointed, saturated and generating Z^d are required.
inline bool is_smooth(const AffineSemigroup& s) {
  if (!s.is_pointed()) throw SemigroupError("is_smooth: semigroup is not pointed");
  if (!s.generates_full_lattice()) throw SemigroupError("is_smooth: group generated is not Z^d");
  if (!is_saturated(s)) throw SemigroupError("is_smooth: semigroup is not saturated");
  const auto& hb = s.hilbert_basis();
  if (hb.size() != s.ambient_dim()) return false;
  return is_unimodular(IntMatrix(s.ambient_dim(), hb));
}

}  // namespace nashloop
