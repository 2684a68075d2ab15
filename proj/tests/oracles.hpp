#pragma once

// Brute-force reference implementations on 64-bit integers. They share no
// code with the library: determinants by cofactor expansion, cone membership
// by Caratheodory (nonnegative solution on some independent generator
// subset), Hilbert bases by box enumeration and irreducibility checks.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "nashloop/exactmath.hpp"

namespace oracle {

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;  // row-major

inline long long laplace_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    long long term = m[0][c] * laplace_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

inline long long dot(const Vec& a, const Vec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Square matrix whose columns are the given vectors.
inline Mat columns_to_mat(const std::vector<Vec>& cols) {
  Mat m(cols.empty() ? 0 : cols[0].size(), Vec(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) m[r][c] = cols[c][r];
  return m;
}

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// x in Cone(gens)? By Caratheodory: x is a nonnegative combination of a
/// linearly independent subset. Each subset is solved by Cramer's rule on a
/// nonsingular square row selection, then checked on all rows.
inline bool in_cone(const std::vector<Vec>& gens, const Vec& x) {
  const std::size_t d = x.size();
  if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) return true;
  for (std::size_t k = 1; k <= std::min(d, gens.size()); ++k) {
    bool found = false;
    for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& sub) {
      if (found) return;
      bool solved = false;
      for_each_subset(d, k, [&](const std::vector<std::size_t>& rows) {
        if (solved || found) return;
        Mat a(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) a[i][j] = gens[sub[j]][rows[i]];
        long long D = laplace_det(a);
        if (D == 0) return;
        solved = true;  // independent subset: the solution is unique if it exists
        std::vector<long long> num(k);
        for (std::size_t j = 0; j < k; ++j) {
          Mat aj = a;
          for (std::size_t i = 0; i < k; ++i) aj[i][j] = x[rows[i]];
          num[j] = laplace_det(aj);
          if ((num[j] > 0 && D < 0) || (num[j] < 0 && D > 0)) return;
        }
        for (std::size_t r = 0; r < d; ++r) {
          long long lhs = 0;
          for (std::size_t j = 0; j < k; ++j) lhs += num[j] * gens[sub[j]][r];
          if (lhs != D * x[r]) return;
        }
        found = true;
      });
    });
    if (found) return true;
  }
  return false;
}

/// Some integer functional positive on every generator, by search in a box.
inline std::optional<Vec> find_grading(const std::vector<Vec>& gens, std::size_t d, long long box) {
  Vec l(d, -box);
  while (true) {
    if (std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return dot(l, g) > 0; })) return l;
    std::size_t i = 0;
    while (i < d && l[i] == box) l[i++] = -box;
    if (i == d) return std::nullopt;
    ++l[i];
  }
}

/// Hilbert basis of Cone(gens) cap Z^d. Every Hilbert basis element lies in
/// the half-open parallelepiped of some simplicial subcone, so the box
/// |x_j| <= sum_i |g_ij| contains all of them. Candidates are processed by
/// increasing grading; x is kept iff no kept h has x - h in the cone.
inline std::vector<Vec> hilbert_basis(const std::vector<Vec>& gens, const Vec& grading) {
  const std::size_t d = grading.size();
  Vec bound(d, 0);
  for (const auto& g : gens)
    for (std::size_t j = 0; j < d; ++j) bound[j] += std::llabs(g[j]);
  std::vector<Vec> cands;
  Vec x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = -bound[j];
  while (true) {
    if (dot(grading, x) > 0 && in_cone(gens, x)) cands.push_back(x);
    std::size_t i = 0;
    while (i < d && x[i] == bound[i]) {
      x[i] = -bound[i];
      ++i;
    }
    if (i == d) break;
    ++x[i];
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [&](const Vec& a, const Vec& b) { return dot(grading, a) < dot(grading, b); });
  std::vector<Vec> hb;
  for (const auto& c : cands) {
    bool reducible = false;
    for (const auto& h : hb) {
      if (dot(grading, h) >= dot(grading, c)) continue;
      Vec diff(d);
      for (std::size_t j = 0; j < d; ++j) diff[j] = c[j] - h[j];
      if (in_cone(gens, diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hb.push_back(c);
  }
  std::sort(hb.begin(), hb.end());
  return hb;
}

/// Number of d-subsets of hb with determinant nonzero mod p (exact if p = 0).
inline std::size_t count_admissible(const std::vector<Vec>& hb, long long p) {
  const std::size_t d = hb.empty() ? 0 : hb[0].size();
  std::size_t n = 0;
  for_each_subset(hb.size(), d, [&](const std::vector<std::size_t>& sub) {
    std::vector<Vec> cols;
    for (auto i : sub) cols.push_back(hb[i]);
    long long D = laplace_det(columns_to_mat(cols));
    if (p == 0 ? D != 0 : ((D % p) + p) % p != 0) ++n;
  });
  return n;
}

// --- conversions and random data ---------------------------------------------

inline Vec to_vec(const nashloop::LatticeVector& v) {
  Vec out;
  for (const auto& e : v) out.push_back(static_cast<long long>(e));
  return out;
}

inline nashloop::LatticeVector to_lattice(const Vec& v) {
  std::vector<nashloop::Integer> e(v.begin(), v.end());
  return nashloop::LatticeVector(std::move(e));
}

inline std::vector<Vec> to_vecs(const std::vector<nashloop::LatticeVector>& vs) {
  std::vector<Vec> out;
  for (const auto& v : vs) out.push_back(to_vec(v));
  return out;
}

inline std::vector<nashloop::LatticeVector> to_lattices(const std::vector<Vec>& vs) {
  std::vector<nashloop::LatticeVector> out;
  for (const auto& v : vs) out.push_back(to_lattice(v));
  return out;
}

inline Mat to_mat(const nashloop::IntMatrix& m) {
  Mat out(m.rows(), Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = static_cast<long long>(m(r, c));
  return out;
}

inline nashloop::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                         long long lo, long long hi) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  nashloop::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

/// Product of random elementary operations and sign flips.
inline nashloop::IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  nashloop::IntMatrix u = nashloop::IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    int k = coef(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

/// Random full-dimensional cone with a positive grading, entries in [lo, hi].
struct RandomCone {
  std::vector<Vec> generators;
  Vec grading;
};

inline RandomCone random_pointed_cone(std::mt19937_64& rng, std::size_t d, std::size_t n,
                                      long long lo, long long hi) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  while (true) {
    std::vector<Vec> gens(n, Vec(d));
    for (auto& g : gens)
      for (auto& e : g) e = dist(rng);
    if (std::any_of(gens.begin(), gens.end(),
                    [](const Vec& g) { return std::all_of(g.begin(), g.end(), [](long long v) { return v == 0; }); }))
      continue;
    bool full = false;
    for_each_subset(n, d, [&](const std::vector<std::size_t>& sub) {
      std::vector<Vec> cols;
      for (auto i : sub) cols.push_back(gens[i]);
      if (laplace_det(columns_to_mat(cols)) != 0) full = true;
    });
    if (!full) continue;
    auto l = find_grading(gens, d, 6);
    if (!l) continue;
    return {gens, *l};
  }
}

}  // namespace oracle
