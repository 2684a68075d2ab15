#include <random>

#include <gtest/gtest.h>

#include "nashloop/fixtures.hpp"
#include "nashloop/semigroup.hpp"
#include "oracles.hpp"

namespace nashloop {
namespace {

AffineSemigroup semigroup_S() {
  return AffineSemigroup::saturation_of(Cone::from_generators(fixtures::matrix_B().columns()));
}

AffineSemigroup semigroup_H() {
  auto h = fixtures::h_vectors();
  std::vector<LatticeVector> gens;
  for (const auto& e : fixtures::chart_generators()) gens.push_back(fixtures::evaluate(e, h));
  return AffineSemigroup::generated_by(5, gens);
}

std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(SaturationHilbertBasis, ConeOfB) {
  auto hb = saturation_hilbert_basis(Cone::from_generators(fixtures::matrix_B().columns()));
  auto h = fixtures::h_vectors();
  EXPECT_EQ(hb, sorted({h.begin() + 1, h.end()}));
  EXPECT_NE(std::find(hb.begin(), hb.end(), LatticeVector{1, 1, 0, 1, -1}), hb.end());
}

TEST(SaturationHilbertBasis, Smooth) {
  std::vector<LatticeVector> units;
  for (std::size_t i = 0; i < 4; ++i) units.push_back(LatticeVector::unit(4, i));
  EXPECT_EQ(saturation_hilbert_basis(Cone::from_generators(units)), sorted(units));
}

TEST(SaturationHilbertBasis, A2) {
  auto hb = saturation_hilbert_basis(Cone::from_generators({LatticeVector{1, 0}, LatticeVector{1, 2}}));
  EXPECT_EQ(hb, (std::vector<LatticeVector>{{1, 0}, {1, 1}, {1, 2}}));
  // the brute-force oracle gives the same three vectors
  auto o = oracle::hilbert_basis({{1, 0}, {1, 2}}, {1, 0});
  EXPECT_EQ(o, (std::vector<oracle::Vec>{{1, 0}, {1, 1}, {1, 2}}));
}

TEST(SaturationHilbertBasis, RejectsNonPointed) {
  EXPECT_THROW(saturation_hilbert_basis(Cone::from_generators({LatticeVector{1}, LatticeVector{-1}})),
               NotPointedError);
}

TEST(SaturationHilbertBasis, OracleEquivalence) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    std::size_t d = t < 20 ? 2 : 3;
    auto rc = oracle::random_pointed_cone(rng, d, d + 1 + t % 2, -5, 5);
    auto expected = oracle::hilbert_basis(rc.generators, rc.grading);
    auto got = saturation_hilbert_basis(Cone::from_generators(oracle::to_lattices(rc.generators)));
    EXPECT_EQ(oracle::to_vecs(got), expected) << "cone " << t;
  }
}

TEST(SaturationHilbertBasis, LowerDimensional) {
  auto c = Cone::from_generators({LatticeVector{1, 0, 0}, LatticeVector{1, 2, 0}});
  EXPECT_EQ(saturation_hilbert_basis(c), (std::vector<LatticeVector>{{1, 0, 0}, {1, 1, 0}, {1, 2, 0}}));
  auto tilted = Cone::from_generators({LatticeVector{1, 0, 1}, LatticeVector{1, 2, 3}});
  EXPECT_EQ(saturation_hilbert_basis(tilted),
            (std::vector<LatticeVector>{{1, 0, 1}, {1, 1, 2}, {1, 2, 3}}));
}

TEST(Membership, Examples) {
  auto H = semigroup_H();
  auto h = fixtures::h_vectors();
  auto m = membership(H, h[2]);
  ASSERT_TRUE(m.member);
  LatticeVector sum(5);
  for (std::size_t i = 0; i < m.witness.size(); ++i) sum += m.witness[i] * H.generators()[i];
  EXPECT_EQ(sum, h[2]);
  // h2 = (h7 - h6) + (h9 - h4) is one such witness
  EXPECT_EQ(h[7] - h[6] + h[9] - h[4], h[2]);

  EXPECT_TRUE(membership(H, LatticeVector(5)).member);
  auto num = AffineSemigroup::generated_by({LatticeVector{2}, LatticeVector{3}});
  EXPECT_FALSE(membership(num, LatticeVector{1}).member);
  EXPECT_TRUE(membership(num, LatticeVector{7}).member);
  EXPECT_FALSE(membership(num, LatticeVector{-2}).member);
}

TEST(Membership, RejectsNonPointed) {
  auto s = AffineSemigroup::generated_by({LatticeVector{1}, LatticeVector{-1}});
  EXPECT_THROW(membership(s, LatticeVector{1}), NotPointedError);
}

TEST(HilbertBasis, Examples) {
  EXPECT_EQ(semigroup_S().hilbert_basis().size(), 9u);
  auto s = AffineSemigroup::generated_by({LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}});
  EXPECT_EQ(s.hilbert_basis(), (std::vector<LatticeVector>{{0, 1}, {1, 0}}));
  auto H = semigroup_H();
  EXPECT_EQ(H.hilbert_basis(), sorted(H.generators()));
  EXPECT_EQ(H.hilbert_basis().size(), 9u);
}

TEST(HilbertBasis, ZeroGeneratorDropped) {
  auto s = AffineSemigroup::generated_by({LatticeVector{0, 0}, LatticeVector{1, 0}});
  EXPECT_EQ(s.generators(), (std::vector<LatticeVector>{{1, 0}}));
}

TEST(HilbertBasis, MinimalAndGenerating) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long long> dist(0, 4);
  for (int t = 0; t < 20; ++t) {
    std::vector<LatticeVector> gens;
    for (int i = 0; i < 5; ++i) gens.push_back(LatticeVector{1 + dist(rng), dist(rng) - 2, dist(rng)});
    auto s = AffineSemigroup::generated_by(3, gens);
    const auto& hb = s.hilbert_basis();
    auto reduced = AffineSemigroup::generated_by(3, hb);
    for (const auto& g : gens) EXPECT_TRUE(reduced.contains(g));
    for (std::size_t i = 0; i < hb.size(); ++i) {
      std::vector<LatticeVector> others = hb;
      others.erase(others.begin() + static_cast<long>(i));
      if (others.empty()) continue;
      EXPECT_FALSE(AffineSemigroup::generated_by(3, others).contains(hb[i]));
    }
  }
}

// No Hilbert basis element of a saturation is u + v for nonzero lattice
// points u, v of the cone with smaller grading.
TEST(HilbertBasis, NoSumDecomposition) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 8; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3, 4, -3, 3);
    auto c = Cone::from_generators(oracle::to_lattices(rc.generators));
    auto l = oracle::to_lattice(rc.grading);
    auto hb = saturation_hilbert_basis(c);
    Integer top = 0;
    for (const auto& h : hb) top = std::max(top, dot(l, h));
    std::vector<LatticeVector> points;
    long long b = 0;
    for (const auto& g : rc.generators)
      for (auto e : g) b = std::max(b, std::llabs(e));
    b *= 3;
    for (long long x = -b; x <= b; ++x)
      for (long long y = -b; y <= b; ++y)
        for (long long z = -b; z <= b; ++z) {
          LatticeVector v{x, y, z};
          if (!v.is_zero() && c.contains(v) && dot(l, v) < top) points.push_back(v);
        }
    for (const auto& h : hb)
      for (const auto& u : points)
        if (dot(l, u) < dot(l, h)) EXPECT_FALSE(c.contains(h - u)) << h << " = " << u << " + " << h - u;
  }
}

TEST(SemigroupsEqual, Examples) {
  auto S = semigroup_S();
  EXPECT_TRUE(semigroups_equal(S, S));
  EXPECT_FALSE(semigroups_equal(AffineSemigroup::generated_by({LatticeVector{1}}),
                                AffineSemigroup::generated_by({LatticeVector{2}})));
  auto a = AffineSemigroup::generated_by({LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}});
  auto b = AffineSemigroup::generated_by({LatticeVector{1, 0}, LatticeVector{0, 1}});
  EXPECT_TRUE(semigroups_equal(a, b));
}

TEST(Saturate, Examples) {
  auto num = AffineSemigroup::generated_by({LatticeVector{2}, LatticeVector{3}});
  EXPECT_EQ(saturate(num).hilbert_basis(), (std::vector<LatticeVector>{{1}}));
  EXPECT_FALSE(is_saturated(num));
  EXPECT_TRUE(is_saturated(semigroup_S()));
  auto S = semigroup_S();
  EXPECT_TRUE(semigroups_equal(saturate(S), S));
}

TEST(Saturate, IdempotentAndContaining) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<long long> dist(-3, 3);
  int tested = 0;
  while (tested < 30) {
    std::vector<LatticeVector> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(LatticeVector{dist(rng), dist(rng), dist(rng)});
    auto s = AffineSemigroup::generated_by(3, gens);
    if (!s.is_pointed() || s.generators().empty()) continue;
    ++tested;
    auto once = saturate(s);
    auto twice = saturate(once);
    EXPECT_EQ(once.hilbert_basis(), twice.hilbert_basis());
    EXPECT_TRUE(is_saturated(once));
    for (const auto& g : s.generators()) EXPECT_TRUE(once.contains(g));
  }
}

TEST(Smooth, Examples) {
  std::vector<LatticeVector> units;
  for (std::size_t i = 0; i < 5; ++i) units.push_back(LatticeVector::unit(5, i));
  EXPECT_TRUE(is_smooth(AffineSemigroup::saturation_of(Cone::from_generators(units))));
  EXPECT_FALSE(is_smooth(semigroup_S()));
  EXPECT_FALSE(is_smooth(AffineSemigroup::saturation_of(Cone::from_generators({LatticeVector{1, 0}, LatticeVector{1, 2}}))));
}

TEST(Smooth, HypothesesEnforced) {
  EXPECT_THROW(is_smooth(AffineSemigroup::generated_by({LatticeVector{2}, LatticeVector{3}})), SemigroupError);
  EXPECT_THROW(is_smooth(AffineSemigroup::generated_by({LatticeVector{2}})), SemigroupError);
  EXPECT_THROW(is_smooth(AffineSemigroup::generated_by({LatticeVector{1}, LatticeVector{-1}})), SemigroupError);
}

TEST(Smooth, SaturatedSimplicialUnimodular) {
  // smooth iff the saturated Hilbert basis is a lattice basis
  auto s = AffineSemigroup::saturation_of(Cone::from_generators({LatticeVector{1, 0}, LatticeVector{1, 1}}));
  EXPECT_TRUE(is_smooth(s));
}

}  // namespace
}  // namespace nashloop
