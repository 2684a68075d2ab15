#pragma once

// Unimodular (GL(Z)) equivalence of pointed affine semigroups.
//
// Two semigroups in Z^d are isomorphic through a lattice automorphism U iff U
// maps one Hilbert basis bijectively onto the other. Candidate maps are found
// by assigning a fixed basis D of H(a) to elements of H(b) and solving for U;
// the assignment is pruned with facet-height invariants, which every lattice
// automorphism preserves (facets map to facets, primitive normals to
// primitive normals).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashloop/exactmath.hpp"
#include "nashloop/parallel.hpp"
#include "nashloop/semigroup.hpp"

namespace nashloop {

struct IsoCertificate {
  IntMatrix matrix;
  /// (index in H(a), index in H(b)) for every Hilbert basis element of a.
  std::vector<std::pair<std::size_t, std::size_t>> mapping;

  friend bool operator==(const IsoCertificate&, const IsoCertificate&) = default;
};

/// GL(Z)-invariant summary of a full-dimensional pointed semigroup.
///
/// Byte serialization (version 1), all counts as big-endian u32 and every
/// integer as [sign byte 0/1][u32 byte length][big-endian magnitude]:
///   "NLFP" 0x01
///   ambient_dim, hilbert_count, ray_count, facet_count        (u32 each)
///   ray_incidences      (count, then integers)  facets through each ray, sorted
///   facet_incidences    (count, then integers)  rays on each facet, sorted
///   normalized_volume   (integer numerator, integer denominator)
///                       volume of the slice below the sum of facet normals
///   height_profiles     (count, then for each: count, integers)
///                       per Hilbert element, its heights over all primitive
///                       facet normals, sorted; the list itself sorted
///   det_source          (u8) 0 = Hilbert basis, 1 = extreme rays, 2 = omitted
///   subset_dets         (count, then integers) sorted |det| of all d-subsets
struct Fingerprint {
  std::size_t ambient_dim = 0;
  std::size_t hilbert_count = 0;
  std::size_t ray_count = 0;
  std::size_t facet_count = 0;
  std::vector<Integer> ray_incidences;
  std::vector<Integer> facet_incidences;
  Rational normalized_volume = 0;
  std::vector<std::vector<Integer>> height_profiles;
  std::uint8_t det_source = 2;
  std::vector<Integer> subset_dets;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> out{'N', 'L', 'F', 'P', 1};
    auto u32 = [&](std::size_t v) {
      for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xff));
    };
    auto integer = [&](const Integer& v) {
      out.push_back(v < 0 ? 1 : 0);
      std::vector<std::uint8_t> mag;
      boost::multiprecision::export_bits(Integer(abs(v)), std::back_inserter(mag), 8);
      if (v == 0) mag.clear();
      u32(mag.size());
      out.insert(out.end(), mag.begin(), mag.end());
    };
    auto list = [&](const std::vector<Integer>& xs) {
      u32(xs.size());
      for (const auto& x : xs) integer(x);
    };
    u32(ambient_dim);
    u32(hilbert_count);
    u32(ray_count);
    u32(facet_count);
    list(ray_incidences);
    list(facet_incidences);
    integer(numerator(normalized_volume));
    integer(denominator(normalized_volume));
    u32(height_profiles.size());
    for (const auto& p : height_profiles) list(p);
    out.push_back(det_source);
    list(subset_dets);
    return out;
  }

  /// 64-bit FNV-1a digest of bytes(), as 16 hex digits.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto b : bytes()) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

namespace detail {

inline void require_iso_input(const AffineSemigroup& s, const char* what) {
  if (!s.is_pointed()) throw NotPointedError(std::string(what) + ": semigroup is not pointed");
  if (!s.cone().is_full_dimensional())
    throw SemigroupError(std::string(what) + ": semigroup is not full-dimensional");
}

/// heights[i][f] = <facet f, H[i]>.
inline std::vector<std::vector<Integer>> height_matrix(const AffineSemigroup& s) {
  const auto& hb = s.hilbert_basis();
  const auto& facets = s.cone().facets();
  std::vector<std::vector<Integer>> h(hb.size(), std::vector<Integer>(facets.size()));
  for (std::size_t i = 0; i < hb.size(); ++i)
    for (std::size_t f = 0; f < facets.size(); ++f) h[i][f] = dot(facets[f], hb[i]);
  return h;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1u << 30)) return r;
  }
  return r;
}

inline std::vector<Integer> subset_abs_dets(const std::vector<LatticeVector>& vs, std::size_t d) {
  std::vector<Integer> out;
  if (vs.size() < d || d == 0) return out;
  std::vector<std::size_t> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = i;
  do {
    std::vector<LatticeVector> cols;
    for (auto i : c) cols.push_back(vs[i]);
    out.push_back(abs(det(IntMatrix(d, std::move(cols)))));
  } while (next_combination(c, vs.size()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Per-element invariant: extreme-ray flag, then sorted heights.
struct ElementSignature {
  bool extreme;
  std::vector<Integer> heights;
  friend bool operator==(const ElementSignature&, const ElementSignature&) = default;
  friend auto operator<=>(const ElementSignature& a, const ElementSignature& b) {
    if (auto c = a.extreme <=> b.extreme; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.heights.begin(), a.heights.end(), b.heights.begin(), b.heights.end(),
        [](const Integer& x, const Integer& y) { return x.compare(y) <=> 0; });
  }
};

inline std::vector<ElementSignature> element_signatures(
    const AffineSemigroup& s, const std::vector<std::vector<Integer>>& heights) {
  const auto& hb = s.hilbert_basis();
  const auto& rays = s.cone().rays();
  std::vector<ElementSignature> sig;
  for (std::size_t i = 0; i < hb.size(); ++i) {
    ElementSignature e{std::binary_search(rays.begin(), rays.end(), hb[i]), heights[i]};
    std::sort(e.heights.begin(), e.heights.end());
    sig.push_back(std::move(e));
  }
  return sig;
}

}  // namespace detail

inline constexpr std::size_t kMaxFingerprintSubsets = 20000;

inline Fingerprint fingerprint(const AffineSemigroup& s) {
  detail::require_iso_input(s, "fingerprint");
  const auto& cone = s.cone();
  const auto& hb = s.hilbert_basis();
  const std::size_t d = s.ambient_dim();
  Fingerprint fp;
  fp.ambient_dim = d;
  fp.hilbert_count = hb.size();
  fp.ray_count = cone.rays().size();
  fp.facet_count = cone.facets().size();
  for (const auto& r : cone.rays()) {
    Integer n = 0;
    for (const auto& f : cone.facets())
      if (dot(f, r) == 0) ++n;
    fp.ray_incidences.push_back(n);
  }
  for (const auto& f : cone.facets()) {
    Integer n = 0;
    for (const auto& r : cone.rays())
      if (dot(f, r) == 0) ++n;
    fp.facet_incidences.push_back(n);
  }
  std::sort(fp.ray_incidences.begin(), fp.ray_incidences.end());
  std::sort(fp.facet_incidences.begin(), fp.facet_incidences.end());
  fp.normalized_volume = cone.normalized_volume();

  auto heights = detail::height_matrix(s);
  for (auto& row : heights) {
    std::sort(row.begin(), row.end());
    fp.height_profiles.push_back(std::move(row));
  }
  std::sort(fp.height_profiles.begin(), fp.height_profiles.end());

  if (detail::binomial(hb.size(), d) <= kMaxFingerprintSubsets) {
    fp.det_source = 0;
    fp.subset_dets = detail::subset_abs_dets(hb, d);
  } else if (detail::binomial(cone.rays().size(), d) <= kMaxFingerprintSubsets) {
    fp.det_source = 1;
    fp.subset_dets = detail::subset_abs_dets(cone.rays(), d);
  }
  return fp;
}

/// True iff |det U| = 1 and U maps H(a) bijectively onto H(b). A nonempty
/// mapping in the certificate must agree with U.
inline bool verify_certificate(const AffineSemigroup& a, const AffineSemigroup& b,
                               const IsoCertificate& cert) {
  const std::size_t d = a.ambient_dim();
  if (b.ambient_dim() != d) return false;
  if (cert.matrix.rows() != d || cert.matrix.cols() != d) return false;
  if (!is_unimodular(cert.matrix)) return false;
  const auto& ha = a.hilbert_basis();
  const auto& hb = b.hilbert_basis();
  if (ha.size() != hb.size()) return false;
  std::vector<bool> hit(hb.size(), false);
  std::vector<std::size_t> image(ha.size());
  for (std::size_t i = 0; i < ha.size(); ++i) {
    LatticeVector u = cert.matrix * ha[i];
    auto it = std::lower_bound(hb.begin(), hb.end(), u);
    if (it == hb.end() || *it != u) return false;
    std::size_t j = static_cast<std::size_t>(it - hb.begin());
    if (hit[j]) return false;
    hit[j] = true;
    image[i] = j;
  }
  if (!cert.mapping.empty()) {
    if (cert.mapping.size() != ha.size()) return false;
    for (auto [i, j] : cert.mapping)
      if (i >= ha.size() || image[i] != j) return false;
  }
  return true;
}

/// Builds the certificate (with mapping) for a matrix already known to be valid.
inline IsoCertificate make_certificate(const AffineSemigroup& a, const AffineSemigroup& b,
                                       IntMatrix m) {
  IsoCertificate c{std::move(m), {}};
  const auto& ha = a.hilbert_basis();
  const auto& hb = b.hilbert_basis();
  for (std::size_t i = 0; i < ha.size(); ++i) {
    LatticeVector u = c.matrix * ha[i];
    auto it = std::lower_bound(hb.begin(), hb.end(), u);
    c.mapping.emplace_back(i, static_cast<std::size_t>(it - hb.begin()));
  }
  return c;
}

inline IsoCertificate identity_certificate(const AffineSemigroup& s) {
  return make_certificate(s, s, IntMatrix::identity(s.ambient_dim()));
}

/// Certificate for b -> a from one for a -> b.
inline IsoCertificate inverse(const IsoCertificate& c) {
  IsoCertificate r{inverse_unimodular(c.matrix), {}};
  for (auto [i, j] : c.mapping) r.mapping.emplace_back(j, i);
  std::sort(r.mapping.begin(), r.mapping.end());
  return r;
}

/// Certificate for a -> c from a -> b and b -> c.
inline IsoCertificate compose(const IsoCertificate& ab, const IsoCertificate& bc) {
  IsoCertificate r{bc.matrix * ab.matrix, {}};
  std::vector<std::size_t> next(bc.mapping.size());
  for (auto [j, k] : bc.mapping) next.at(j) = k;
  for (auto [i, j] : ab.mapping) r.mapping.emplace_back(i, next.at(j));
  return r;
}

struct IsoOptions {
  /// Enumerate every certificate and return the lexicographically smallest
  /// matrix, independent of search order.
  bool canonical = false;
};

namespace detail {

class IsoSearch {
 public:
  IsoSearch(const AffineSemigroup& a, const AffineSemigroup& b, bool all)
      : a_(a), b_(b), all_(all), d_(a.ambient_dim()) {}

  std::vector<IsoCertificate> run() {
    const auto& ha = a_.hilbert_basis();
    const auto& hb = b_.hilbert_basis();
    if (b_.ambient_dim() != d_ || ha.size() != hb.size()) return {};
    if (a_.cone().facets().size() != b_.cone().facets().size()) return {};
    if (a_.cone().rays().size() != b_.cone().rays().size()) return {};
    heights_a_ = height_matrix(a_);
    heights_b_ = height_matrix(b_);
    sig_a_ = element_signatures(a_, heights_a_);
    sig_b_ = element_signatures(b_, heights_b_);
    {
      auto sa = sig_a_, sb = sig_b_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return {};
    }
    basis_ = independent_subset(ha, d_);
    if (basis_.size() != d_) return {};
    IntMatrix dm(d_, d_);
    for (std::size_t j = 0; j < d_; ++j) dm.column(j) = ha[basis_[j]];
    det_ = det(dm);
    adj_ = adjugate(dm);
    used_.assign(hb.size(), false);
    assign(0);
    return std::move(found_);
  }

 private:
  /// Multiset over facets of the height tuples of the first k+1 assigned elements.
  static std::vector<std::vector<Integer>> joint_columns(
      const std::vector<std::vector<Integer>>& heights, const std::vector<std::size_t>& elems) {
    std::size_t nf = heights.empty() ? 0 : heights.front().size();
    std::vector<std::vector<Integer>> cols(nf);
    for (std::size_t f = 0; f < nf; ++f)
      for (auto e : elems) cols[f].push_back(heights[e][f]);
    std::sort(cols.begin(), cols.end());
    return cols;
  }

  bool assign(std::size_t k) {
    const auto& hb = b_.hilbert_basis();
    if (k == d_) return try_complete();
    std::size_t src = basis_[k];
    for (std::size_t j = 0; j < hb.size(); ++j) {
      if (used_[j] || !(sig_a_[src] == sig_b_[j])) continue;
      chosen_.push_back(j);
      std::vector<std::size_t> srcs(basis_.begin(), basis_.begin() + static_cast<long>(k + 1));
      if (joint_columns(heights_a_, srcs) == joint_columns(heights_b_, chosen_)) {
        used_[j] = true;
        bool done = assign(k + 1);
        used_[j] = false;
        if (done && !all_) return true;
      }
      chosen_.pop_back();
    }
    return false;
  }

  bool try_complete() {
    const auto& hb = b_.hilbert_basis();
    IntMatrix img(d_, d_);
    for (std::size_t j = 0; j < d_; ++j) img.column(j) = hb[chosen_[j]];
    IntMatrix num = img * adj_;  // = det * U
    IntMatrix u(d_, d_);
    for (std::size_t r = 0; r < d_; ++r)
      for (std::size_t c = 0; c < d_; ++c) {
        if (num(r, c) % det_ != 0) return false;
        u(r, c) = num(r, c) / det_;
      }
    IsoCertificate cert{u, {}};
    if (!verify_certificate(a_, b_, cert)) return false;
    found_.push_back(make_certificate(a_, b_, std::move(u)));
    return true;
  }

  const AffineSemigroup& a_;
  const AffineSemigroup& b_;
  bool all_;
  std::size_t d_;
  std::vector<std::vector<Integer>> heights_a_, heights_b_;
  std::vector<ElementSignature> sig_a_, sig_b_;
  std::vector<std::size_t> basis_;
  Integer det_;
  IntMatrix adj_;
  std::vector<bool> used_;
  std::vector<std::size_t> chosen_;
  std::vector<IsoCertificate> found_;
};

}  // namespace detail

/// A lattice automorphism carrying a onto b, if one exists.
inline std::optional<IsoCertificate> find_isomorphism(const AffineSemigroup& a,
                                                      const AffineSemigroup& b,
                                                      IsoOptions options = {}) {
  detail::require_iso_input(a, "find_isomorphism");
  detail::require_iso_input(b, "find_isomorphism");
  auto found = detail::IsoSearch(a, b, options.canonical).run();
  if (found.empty()) return std::nullopt;
  if (options.canonical)
    return *std::min_element(found.begin(), found.end(),
                             [](const auto& x, const auto& y) { return x.matrix < y.matrix; });
  return found.front();
}

/// Every lattice automorphism carrying a onto b.
inline std::vector<IsoCertificate> all_isomorphisms(const AffineSemigroup& a,
                                                    const AffineSemigroup& b) {
  detail::require_iso_input(a, "all_isomorphisms");
  detail::require_iso_input(b, "all_isomorphisms");
  return detail::IsoSearch(a, b, true).run();
}

}  // namespace nashloop
