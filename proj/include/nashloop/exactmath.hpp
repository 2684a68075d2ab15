#pragma once

// Exact integer and rational linear algebra over arbitrary-precision integers.
//
// Everything downstream (cones, semigroups, blowup charts, isomorphism
// certificates) is built on LatticeVector and IntMatrix. All operations are
// pure and never round.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nashloop {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidCharacteristic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of the lattice Z^d. Ordered lexicographically.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : entries_(dim) {}
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long long> entries) {
    entries_.reserve(entries.size());
    for (long long e : entries) entries_.emplace_back(e);
  }

  static LatticeVector unit(std::size_t dim, std::size_t i) {
    LatticeVector v(dim);
    v[i] = 1;
    return v;
  }

  std::size_t dim() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  LatticeVector& operator*=(const Integer& k) {
    for (auto& e : entries_) e *= k;
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                  b.entries_.begin(), b.entries_.end(),
                                                  [](const Integer& x, const Integer& y) {
                                                    return x.compare(y) <=> 0;
                                                  });
  }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << entries_[i];
    os << ')';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }

 private:
  void check_dim(const LatticeVector& o) const {
    if (o.dim() != dim()) throw DimensionError("lattice vector dimensions differ");
  }
  std::vector<Integer> entries_;
};

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("dot: dimensions differ");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& e : v) g = boost::multiprecision::gcd(g, e);
  return g;
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
inline LatticeVector primitive(LatticeVector v) {
  Integer g = content(v);
  if (g > 1) {
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= g;
  }
  return v;
}

/// Floor division for arbitrary-precision integers (b != 0).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Canonical residue in [0, m).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Integer matrix stored by columns.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, LatticeVector(rows)) {}
  IntMatrix(std::size_t rows, std::vector<LatticeVector> columns)
      : rows_(rows), columns_(std::move(columns)) {
    for (const auto& c : columns_)
      if (c.dim() != rows_) throw DimensionError("matrix column has wrong dimension");
  }

  static IntMatrix from_columns(std::vector<LatticeVector> columns) {
    if (columns.empty()) throw DimensionError("from_columns needs at least one column");
    std::size_t r = columns.front().dim();
    return IntMatrix(r, std::move(columns));
  }

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    if (rows.empty()) throw DimensionError("from_rows needs at least one row");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw DimensionError("ragged row list");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  bool is_square() const { return rows_ == cols(); }

  const Integer& operator()(std::size_t r, std::size_t c) const { return columns_[c][r]; }
  Integer& operator()(std::size_t r, std::size_t c) { return columns_[c][r]; }
  const LatticeVector& column(std::size_t c) const { return columns_[c]; }
  LatticeVector& column(std::size_t c) { return columns_[c]; }
  const std::vector<LatticeVector>& columns() const { return columns_; }

  LatticeVector row(std::size_t r) const {
    LatticeVector v(cols());
    for (std::size_t c = 0; c < cols(); ++c) v[c] = (*this)(r, c);
    return v;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols(), rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  LatticeVector operator*(const LatticeVector& x) const {
    if (x.dim() != cols()) throw DimensionError("matrix-vector dimension mismatch");
    LatticeVector y(rows());
    for (std::size_t c = 0; c < cols(); ++c) {
      if (x[c] == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r) y[r] += columns_[c][r] * x[c];
    }
    return y;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (o.rows() != cols()) throw DimensionError("matrix product dimension mismatch");
    IntMatrix p(rows(), o.cols());
    for (std::size_t j = 0; j < o.cols(); ++j) p.columns_[j] = (*this) * o.column(j);
    return p;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    return a.columns_ <=> b.columns_;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::vector<LatticeVector> columns_;
};

namespace detail {

inline void require_square(const IntMatrix& m, const char* what) {
  if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
}

/// Row-major working copy for elimination.
inline std::vector<std::vector<Integer>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace detail

/// Fraction-free Bareiss determinant.
inline Integer det(const IntMatrix& m) {
  detail::require_square(m, "det");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto a = detail::to_rows(m);
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// A field characteristic: 0 or a prime.
class Characteristic {
 public:
  constexpr Characteristic() = default;
  explicit Characteristic(long long p) : p_(p) {
    if (p < 0 || (p != 0 && !detail::is_prime(p)))
      throw InvalidCharacteristic("characteristic must be 0 or prime, got " + std::to_string(p));
  }
  long long value() const { return p_; }
  bool is_zero() const { return p_ == 0; }
  friend bool operator==(Characteristic, Characteristic) = default;

 private:
  long long p_ = 0;
};

/// det(m) for p = 0, otherwise det(m) mod p in [0, p).
inline Integer det_p(const IntMatrix& m, Characteristic p) {
  Integer d = det(m);
  if (p.is_zero()) return d;
  return mod_floor(d, Integer(p.value()));
}

inline Integer det_p(const IntMatrix& m, long long p) { return det_p(m, Characteristic(p)); }

inline bool is_unimodular(const IntMatrix& m) {
  detail::require_square(m, "is_unimodular");
  Integer d = det(m);
  return d == 1 || d == -1;
}

/// Adjugate of a square matrix: m * adj(m) == det(m) * I.
inline IntMatrix adjugate(const IntMatrix& m) {
  detail::require_square(m, "adjugate");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ij, placed at adj(j, i)
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer cof = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  }
  return adj;
}

/// Rational solution of m x = target; nullopt if m is singular.
inline std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m,
                                                           const LatticeVector& target) {
  detail::require_square(m, "solve_rational");
  if (target.dim() != m.rows()) throw DimensionError("solve_rational: target dimension");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n] = Rational(target[i]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[k], a[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

/// The unique solution of m x = target if it exists and is integral.
inline std::optional<LatticeVector> solve_integral(const IntMatrix& m, const LatticeVector& target) {
  auto x = solve_rational(m, target);
  if (!x) return std::nullopt;
  LatticeVector out(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) {
    if (denominator((*x)[i]) != 1) return std::nullopt;
    out[i] = numerator((*x)[i]);
  }
  return out;
}

/// Inverse of a unimodular matrix (exact, integral).
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  Integer d = det(m);
  if (d != 1 && d != -1) throw std::domain_error("inverse_unimodular: matrix is not unimodular");
  IntMatrix inv = adjugate(m);
  if (d == -1)
    for (std::size_t j = 0; j < inv.cols(); ++j) inv.column(j) *= Integer(-1);
  return inv;
}

struct HermiteResult {
  IntMatrix form;       ///< column Hermite normal form H = m * transform
  IntMatrix transform;  ///< unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  ///< row of the leading entry of column j, j < rank
};

/// Column-style Hermite normal form: m * T = H with T unimodular.
///
/// H is in column echelon form: column j < rank has its leading (topmost
/// nonzero) entry at pivot_rows[j] > 0, strictly increasing in j; entries to
/// the left of a pivot in the same row are reduced into [0, pivot). Columns
/// j >= rank are zero.
inline HermiteResult hermite_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix t = IntMatrix::identity(cols);
  std::vector<std::size_t> pivots;

  auto col_combine = [&](IntMatrix& x, std::size_t i, std::size_t j, const Integer& a,
                         const Integer& b, const Integer& c, const Integer& d) {
    // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    LatticeVector ci = x.column(i), cj = x.column(j);
    x.column(i) = a * ci + b * cj;
    x.column(j) = c * ci + d * cj;
  };

  std::size_t k = 0;  // next pivot column
  for (std::size_t r = 0; r < rows && k < cols; ++r) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (h(r, j) == 0) continue;
      if (h(r, k) == 0) {
        std::swap(h.column(k), h.column(j));
        std::swap(t.column(k), t.column(j));
        continue;
      }
      // extended gcd on (h(r,k), h(r,j))
      Integer a = h(r, k), b = h(r, j);
      Integer old_r = a, cur_r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
      while (cur_r != 0) {
        Integer q = old_r / cur_r;
        Integer tmp = old_r - q * cur_r; old_r = cur_r; cur_r = tmp;
        tmp = old_s - q * cur_s; old_s = cur_s; cur_s = tmp;
        tmp = old_t - q * cur_t; old_t = cur_t; cur_t = tmp;
      }
      Integer g = old_r;  // = old_s*a + old_t*b
      Integer a_g = a / g, b_g = b / g;
      // new col_k = s col_k + t col_j ; new col_j = -b/g col_k + a/g col_j (det = 1)
      col_combine(h, k, j, old_s, old_t, -b_g, a_g);
      col_combine(t, k, j, old_s, old_t, -b_g, a_g);
    }
    if (h(r, k) == 0) continue;
    if (h(r, k) < 0) {
      h.column(k) *= Integer(-1);
      t.column(k) *= Integer(-1);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Integer q = floor_div(h(r, j), h(r, k));
      if (q != 0) {
        h.column(j) -= q * h.column(k);
        t.column(j) -= q * t.column(k);
      }
    }
    pivots.push_back(r);
    ++k;
  }
  return HermiteResult{std::move(h), std::move(t), k, std::move(pivots)};
}

inline std::size_t rank(const IntMatrix& m) {
  if (m.cols() == 0) return 0;
  return hermite_form(m).rank;
}

inline std::size_t rank(const std::vector<LatticeVector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  return rank(IntMatrix(dim, vs));
}

/// True iff the columns of m generate all of Z^rows as a group.
inline bool generates_full_lattice(const IntMatrix& m) {
  if (m.cols() == 0) return m.rows() == 0;
  auto hr = hermite_form(m);
  if (hr.rank != m.rows()) return false;
  for (std::size_t j = 0; j < hr.rank; ++j)
    if (hr.form(hr.pivot_rows[j], j) != 1) return false;
  return true;
}

/// A Z-basis (as columns) of the integer kernel { x in Z^cols : m x = 0 }.
inline std::vector<LatticeVector> integer_kernel(const IntMatrix& m) {
  auto hr = hermite_form(m);
  std::vector<LatticeVector> basis;
  for (std::size_t j = hr.rank; j < m.cols(); ++j) basis.push_back(hr.transform.column(j));
  return basis;
}

}  // namespace nashloop
