#pragma once

// Embedded data for the five-dimensional characteristic-3 loop and the
// related four-dimensional cones. Indices h1..h9 are 1-based throughout, to
// match the usual naming of the generators.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "nashloop/exactmath.hpp"

namespace nashloop::fixtures {

/// Columns h1..h8 of the 5x8 generator matrix B.
inline IntMatrix matrix_B() {
  return IntMatrix::from_rows({
      {1, 0, 0, 0, 0, 2, 1, 1},
      {0, 1, 0, 0, 0, 2, 2, 2},
      {0, 0, 1, 0, 0, -1, -1, 0},
      {0, 0, 0, 1, 0, 1, 1, 0},
      {0, 0, 0, 0, 1, -2, -1, -1},
  });
}

inline LatticeVector h9() { return LatticeVector{1, 1, 0, 1, -1}; }

/// h1..h9 with h[0] unused so that h[i] is h_i.
inline std::vector<LatticeVector> h_vectors(const LatticeVector& ninth = h9()) {
  std::vector<LatticeVector> h(10);
  auto b = matrix_B();
  for (std::size_t i = 1; i <= 8; ++i) h[i] = b.column(i - 1);
  h[9] = ninth;
  return h;
}

/// Reeves cone: columns of a 4x4 matrix.
inline IntMatrix matrix_reeves() {
  return IntMatrix::from_rows({
      {1, 0, 0, 1},
      {0, 1, 0, 1},
      {0, 0, 1, 1},
      {0, 0, 0, 5},
  });
}

/// The four-dimensional characteristic-3 cone with a two-step loop.
inline IntMatrix matrix_dim4char3() {
  return IntMatrix::from_rows({
      {1, 0, 1, 0, 0},
      {0, 1, 2, 0, 3},
      {0, 0, 3, 0, 3},
      {0, 0, 0, 1, 1},
  });
}

/// The lattice automorphism U carrying S onto the chart S_A.
inline IntMatrix matrix_U() {
  return IntMatrix::from_rows({
      {-1, 0, 1, 0, -2},
      {0, -1, 0, 0, -2},
      {0, 1, 0, 1, 2},
      {0, 0, 0, -1, -1},
      {1, 0, 0, 0, 2},
  });
}

/// The chart subset A = {h1, h2, h4, h5, h6}.
inline std::vector<int> chart_subset() { return {1, 2, 4, 5, 6}; }

/// Integer combination of h1..h9: pairs (index, coefficient).
using HExpr = std::vector<std::pair<int, int>>;

inline LatticeVector evaluate(const HExpr& e, const std::vector<LatticeVector>& h) {
  LatticeVector v(5);
  for (auto [i, c] : e) v += Integer(c) * h[static_cast<std::size_t>(i)];
  return v;
}

inline HExpr diff(int a, int b) { return {{a, 1}, {b, -1}}; }
inline HExpr single(int a) { return {{a, 1}}; }

/// Simplicial subdivision sigma_1..sigma_7 of Cone(B), as index sets.
inline std::vector<std::array<int, 5>> subdivision() {
  return {{1, 2, 3, 4, 5}, {1, 2, 4, 5, 7}, {1, 2, 3, 6, 8}, {1, 2, 4, 6, 7},
          {1, 2, 3, 4, 9}, {1, 2, 4, 6, 9}, {1, 2, 3, 6, 9}};
}

/// One entry of the replacement-determinant table: g replaces `replaced`.
struct ReplacementEntry {
  int replaced;
  int g;
  bool nonzero;
};

/// The 20 replacement determinants mod 3 for A = {h1,h2,h4,h5,h6}.
inline std::vector<ReplacementEntry> determinant_table() {
  return {
      {1, 3, true},  {1, 7, true},  {1, 8, true},  {1, 9, true},   //
      {2, 3, true},  {2, 7, false}, {2, 8, true},  {2, 9, true},   //
      {4, 3, true},  {4, 7, false}, {4, 8, false}, {4, 9, true},   //
      {5, 3, true},  {5, 7, true},  {5, 8, true},  {5, 9, true},   //
      {6, 3, true},  {6, 7, true},  {6, 8, false}, {6, 9, false},  //
  };
}

/// The displayed G_A: for each h in A, the g's with g - h in G_A(h).
inline std::vector<std::pair<int, std::vector<int>>> g_blocks() {
  return {{1, {3, 7, 8, 9}}, {2, {3, 8, 9}}, {4, {3, 9}}, {5, {3, 7, 8, 9}}, {6, {3, 7}}};
}

/// The nine-element generating set H of S_A.
inline std::vector<HExpr> chart_generators() {
  return {single(1), diff(3, 2), diff(9, 2), diff(3, 4), diff(9, 4),
          diff(3, 5), diff(7, 5), diff(3, 6), diff(7, 6)};
}

/// Decomposition identities lhs = sum of rhs terms; each term is in H or is the
/// left-hand side of another identity. Together with h8 - h2 = h9 - h4 they
/// cover every element of G_A outside H.
struct Decomposition {
  HExpr lhs;
  std::vector<HExpr> rhs;
};

inline std::vector<Decomposition> decompositions() {
  return {
      {single(2), {diff(7, 6), diff(9, 4)}},
      {single(4), {diff(7, 6), diff(9, 2)}},
      {single(5), {diff(7, 6), single(1)}},
      {single(6), {diff(7, 5), single(1)}},
      {diff(3, 1), {diff(3, 5), diff(7, 6)}},
      {diff(7, 1), {diff(7, 5), diff(7, 6)}},
      {diff(8, 5), {diff(7, 5), diff(3, 4)}},
      {diff(9, 5), {diff(7, 5), diff(3, 2)}},
      {single(3), {diff(3, 5), single(5)}},
      {single(7), {diff(7, 5), single(5)}},
      {diff(8, 1), {diff(7, 1), diff(3, 4)}},
      {diff(9, 1), {diff(7, 1), diff(3, 2)}},
      {single(8), {diff(8, 1), single(1)}},
      {single(9), {diff(9, 1), single(1)}},
  };
}

/// Images U(h_i) for i = 1..9, as expressions in h.
inline std::vector<std::pair<int, HExpr>> u_images() {
  return {{1, diff(7, 6)}, {2, diff(3, 2)}, {3, single(1)}, {4, diff(3, 4)}, {5, diff(3, 6)},
          {6, diff(7, 5)}, {7, diff(3, 5)}, {8, diff(9, 2)}, {9, diff(9, 4)}};
}

/// Binomial x^a - x^b in k[x1..x9], as exponent vectors (index 0 unused).
struct Binomial {
  std::array<int, 10> lhs{};
  std::array<int, 10> rhs{};
};

inline std::vector<Binomial> toric_binomials() {
  auto mono = [](std::initializer_list<std::pair<int, int>> powers) {
    std::array<int, 10> e{};
    for (auto [i, k] : powers) e[static_cast<std::size_t>(i)] += k;
    return e;
  };
  return {
      {mono({{9, 2}}), mono({{3, 1}, {4, 1}, {6, 1}})},
      {mono({{7, 1}, {8, 1}}), mono({{2, 2}, {6, 1}})},
      {mono({{1, 1}, {7, 1}}), mono({{5, 1}, {6, 1}})},
      {mono({{7, 1}, {9, 1}}), mono({{2, 1}, {4, 1}, {6, 1}})},
      {mono({{8, 1}, {9, 1}}), mono({{2, 1}, {3, 1}, {6, 1}})},
      {mono({{5, 1}, {9, 1}}), mono({{1, 1}, {2, 1}, {4, 1}})},
      {mono({{5, 1}, {8, 1}}), mono({{1, 1}, {2, 2}})},
      {mono({{4, 1}, {8, 1}}), mono({{2, 1}, {9, 1}})},
      {mono({{3, 1}, {7, 1}}), mono({{2, 1}, {9, 1}})},
      {mono({{3, 1}, {5, 1}, {6, 1}}), mono({{1, 1}, {2, 1}, {9, 1}})},
  };
}

}  // namespace nashloop::fixtures
