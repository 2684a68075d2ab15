#pragma once

// Combinatorial Nash blowup and normalized Nash blowup of an affine toric
// variety X(S) in characteristic p.
//
// Charts are indexed by d-subsets A of the Hilbert basis H(S) with
// det_p(A) != 0. For h in A, G_A(h) collects the differences g - h over
// g in H(S) \ A such that replacing h by g (in h's column) keeps det_p
// nonzero. The chart semigroup S_A is generated by H(S) together with all
// G_A(h); the normalized chart is its saturation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nashloop/exactmath.hpp"
#include "nashloop/parallel.hpp"
#include "nashloop/semigroup.hpp"

namespace nashloop {

class ChartError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BlowupChart {
  AffineSemigroup source;
  Characteristic characteristic;
  std::vector<std::size_t> subset;     ///< indices into source.hilbert_basis(), increasing
  std::vector<LatticeVector> subset_A;  ///< the chosen Hilbert basis elements, in subset order
  Integer det_p;                        ///< det_p of the matrix with columns subset_A
  std::vector<std::vector<LatticeVector>> g_sets;  ///< G_A(h) for h = subset_A[i]
  std::vector<LatticeVector> g_union;              ///< G_A, sorted, duplicates removed
  AffineSemigroup chart_semigroup;                 ///< S_A
  std::optional<AffineSemigroup> normalized_chart;  ///< saturation of S_A, when pointed
  bool pointed = false;
};

inline IntMatrix column_matrix(const std::vector<LatticeVector>& cols) {
  return IntMatrix::from_columns(cols);
}

/// G_A(h) for h = A[position]: { g - h : g in H(S) \ A, det_p(A with g in h's column) != 0 }.
inline std::vector<LatticeVector> g_set(const std::vector<LatticeVector>& hilbert,
                                        const std::vector<LatticeVector>& A, std::size_t position,
                                        Characteristic p) {
  if (position >= A.size()) throw ChartError("g_set: h is not an element of A");
  IntMatrix m = column_matrix(A);
  if (det_p(m, p) == 0) throw ChartError("g_set: det_p(A) is zero");
  const LatticeVector& h = A[position];
  std::vector<LatticeVector> out;
  for (const auto& g : hilbert) {
    if (std::find(A.begin(), A.end(), g) != A.end()) continue;
    IntMatrix replaced = m;
    replaced.column(position) = g;
    if (det_p(replaced, p) != 0) out.push_back(g - h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// G_A(h) by element rather than position.
inline std::vector<LatticeVector> g_set(const AffineSemigroup& s, const std::vector<LatticeVector>& A,
                                        const LatticeVector& h, Characteristic p) {
  auto it = std::find(A.begin(), A.end(), h);
  if (it == A.end()) throw ChartError("g_set: h is not an element of A");
  return g_set(s.hilbert_basis(), A, static_cast<std::size_t>(it - A.begin()), p);
}

/// The chart for A given as indices into s.hilbert_basis().
inline BlowupChart chart(const AffineSemigroup& s, const std::vector<std::size_t>& subset,
                         Characteristic p, bool normalized = true) {
  const auto& hb = s.hilbert_basis();
  const std::size_t d = s.ambient_dim();
  if (subset.size() != d) throw ChartError("chart: A must have exactly d elements");
  BlowupChart c;
  c.source = s;
  c.characteristic = p;
  c.subset = subset;
  for (auto i : subset) {
    if (i >= hb.size()) throw ChartError("chart: subset index out of range");
    c.subset_A.push_back(hb[i]);
  }
  c.det_p = det_p(column_matrix(c.subset_A), p);
  if (c.det_p == 0) throw ChartError("chart: det_p(A) is zero");

  std::vector<LatticeVector> gens = hb;
  for (std::size_t i = 0; i < d; ++i) {
    c.g_sets.push_back(g_set(hb, c.subset_A, i, p));
    gens.insert(gens.end(), c.g_sets.back().begin(), c.g_sets.back().end());
  }
  detail::sort_unique(gens);
  c.g_union = gens;
  c.chart_semigroup = AffineSemigroup::generated_by(d, std::move(gens));
  c.pointed = c.chart_semigroup.is_pointed();
  if (c.pointed && normalized) c.normalized_chart = saturate(c.chart_semigroup);
  return c;
}

/// Chart for A given by its elements (each must be in H(S)).
inline BlowupChart chart(const AffineSemigroup& s, const std::vector<LatticeVector>& A,
                         Characteristic p, bool normalized = true) {
  const auto& hb = s.hilbert_basis();
  std::vector<std::size_t> idx;
  for (const auto& a : A) {
    auto it = std::lower_bound(hb.begin(), hb.end(), a);
    if (it == hb.end() || *it != a) throw ChartError("chart: element of A is not in H(S)");
    idx.push_back(static_cast<std::size_t>(it - hb.begin()));
  }
  std::sort(idx.begin(), idx.end());
  return chart(s, idx, p, normalized);
}

/// Index subsets A (lexicographic) with det_p(A) != 0.
inline std::vector<std::vector<std::size_t>> admissible_subsets(const AffineSemigroup& s,
                                                                Characteristic p) {
  const auto& hb = s.hilbert_basis();
  const std::size_t d = s.ambient_dim();
  std::vector<std::vector<std::size_t>> out;
  if (hb.size() < d || d == 0) return out;
  std::vector<std::size_t> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = i;
  do {
    std::vector<LatticeVector> cols;
    for (auto i : c) cols.push_back(hb[i]);
    if (det_p(column_matrix(cols), p) != 0) out.push_back(c);
  } while (detail::next_combination(c, hb.size()));
  return out;
}

/// All charts of one (normalized) Nash blowup step, ordered by subset.
/// Charts with non-pointed S_A are kept with pointed == false.
inline std::vector<BlowupChart> blowup_step(const AffineSemigroup& s, Characteristic p,
                                            bool normalized, unsigned threads = 1) {
  if (!s.is_pointed()) throw NotPointedError("blowup_step: semigroup is not pointed");
  if (!s.generates_full_lattice())
    throw SemigroupError("blowup_step: group generated by S is not Z^d");
  auto subsets = admissible_subsets(s, p);
  std::vector<BlowupChart> charts(subsets.size());
  detail::parallel_for(subsets.size(), threads,
                       [&](std::size_t i) { charts[i] = chart(s, subsets[i], p, normalized); });
  return charts;
}

/// The semigroup a chart contributes as a vertex: saturated in normalized
/// mode, S_A otherwise.
inline const AffineSemigroup& chart_vertex(const BlowupChart& c, bool normalized) {
  if (normalized) {
    if (!c.normalized_chart) throw ChartError("chart_vertex: chart has no normalization");
    return *c.normalized_chart;
  }
  return c.chart_semigroup;
}

}  // namespace nashloop
