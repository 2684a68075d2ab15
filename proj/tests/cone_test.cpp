#include <random>

#include <gtest/gtest.h>

#include "nashloop/cone.hpp"
#include "nashloop/fixtures.hpp"
#include "oracles.hpp"

namespace nashloop {
namespace {

Cone cone_B() { return Cone::from_generators(fixtures::matrix_B().columns()); }

TEST(Cone, RaysOfB) {
  auto c = cone_B();
  auto h = fixtures::h_vectors();
  std::vector<LatticeVector> expected(h.begin() + 1, h.begin() + 9);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(c.rays(), expected);
  EXPECT_TRUE(c.is_full_dimensional());
  EXPECT_EQ(c.facets().size(), 9u);
}

TEST(Cone, InteriorGeneratorDropped) {
  auto c = Cone::from_generators({LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}});
  EXPECT_EQ(c.rays(), (std::vector<LatticeVector>{{0, 1}, {1, 0}}));
}

TEST(Cone, ReevesHasFourRays) {
  auto c = Cone::from_generators(fixtures::matrix_reeves().columns());
  EXPECT_EQ(c.rays().size(), 4u);
  EXPECT_TRUE(c.is_simplicial());
}

TEST(Cone, GeneratorsMadePrimitive) {
  auto c = Cone::from_generators({LatticeVector{2, 4}, LatticeVector{3, 0}});
  EXPECT_EQ(c.rays(), (std::vector<LatticeVector>{{1, 0}, {1, 2}}));
}

TEST(Cone, Pointedness) {
  EXPECT_TRUE(cone_B().is_pointed());
  EXPECT_FALSE(Cone::from_generators({LatticeVector{1}, LatticeVector{-1}}).is_pointed());
  EXPECT_TRUE(Cone::from_generators(3, {}).is_pointed());
  EXPECT_FALSE(Cone::from_generators({LatticeVector{1, 0}, LatticeVector{-1, 0}, LatticeVector{0, 1}})
                   .is_pointed());
}

TEST(Cone, ZeroConeContainsOnlyZero) {
  auto z = Cone::from_generators(2, {LatticeVector{0, 0}});
  EXPECT_EQ(z.dim(), 0u);
  EXPECT_TRUE(z.contains(LatticeVector{0, 0}));
  EXPECT_FALSE(z.contains(LatticeVector{1, 0}));
}

TEST(Cone, PositiveGrading) {
  auto c = cone_B();
  auto l = c.positive_grading();
  for (const auto& r : c.rays()) EXPECT_GE(dot(l, r), 1);
  LatticeVector ones{1, 1, 1, 1, 1};
  auto h = fixtures::h_vectors();
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(dot(ones, h[static_cast<std::size_t>(i)]), 1);
  for (int i = 6; i <= 8; ++i) EXPECT_GE(dot(ones, h[static_cast<std::size_t>(i)]), 2);

  auto a2 = Cone::from_generators({LatticeVector{1, 0}, LatticeVector{1, 2}});
  LatticeVector l2{1, 0};
  for (const auto& r : a2.rays()) EXPECT_EQ(dot(l2, r), 1);
  for (const auto& r : a2.rays()) EXPECT_GE(dot(a2.positive_grading(), r), 1);

  EXPECT_THROW(Cone::from_generators({LatticeVector{1}, LatticeVector{-1}}).positive_grading(),
               NotPointedError);
}

TEST(Cone, Membership) {
  auto c = cone_B();
  EXPECT_TRUE(c.contains(fixtures::h9()));
  EXPECT_FALSE(c.contains(LatticeVector{-1, 0, 0, 0, 0}));
  EXPECT_TRUE(c.contains(LatticeVector(5)));
  EXPECT_THROW(c.contains(LatticeVector{1, 0}), DimensionError);
}

TEST(Cone, LowerDimensionalMembership) {
  auto c = Cone::from_generators({LatticeVector{1, 1, 0}, LatticeVector{1, -1, 0}});
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_TRUE(c.contains(LatticeVector{2, 0, 0}));
  EXPECT_FALSE(c.contains(LatticeVector{2, 0, 1}));
  EXPECT_FALSE(c.contains(LatticeVector{0, 1, 0}));
  auto ray = Cone::from_generators({LatticeVector{2, 0, 0}});
  EXPECT_TRUE(ray.contains(LatticeVector{5, 0, 0}));
  EXPECT_FALSE(ray.contains(LatticeVector{-1, 0, 0}));
}

TEST(Cone, ContainsGeneratorsAndTheirSums) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3, 4, -5, 5);
    auto c = Cone::from_generators(oracle::to_lattices(rc.generators));
    std::uniform_int_distribution<int> k(0, 4);
    for (std::size_t i = 0; i < rc.generators.size(); ++i) {
      auto gi = oracle::to_lattice(rc.generators[i]);
      EXPECT_TRUE(c.contains(gi));
      for (std::size_t j = 0; j < rc.generators.size(); ++j)
        EXPECT_TRUE(c.contains(Integer(k(rng)) * gi + Integer(k(rng)) * oracle::to_lattice(rc.generators[j])));
    }
  }
}

TEST(Cone, MembershipMatchesCaratheodory) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long long> coord(-6, 6);
  for (int t = 0; t < 25; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3, 5, -4, 4);
    auto c = Cone::from_generators(oracle::to_lattices(rc.generators));
    for (int s = 0; s < 60; ++s) {
      oracle::Vec x{coord(rng), coord(rng), coord(rng)};
      EXPECT_EQ(c.contains(oracle::to_lattice(x)), oracle::in_cone(rc.generators, x));
    }
  }
}

TEST(Cone, DualityRoundTrip) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3 + t % 2, 6, -4, 4);
    auto c = Cone::from_generators(oracle::to_lattices(rc.generators));
    // rays are exactly the primitive vectors tight on d-1 independent facets
    for (const auto& r : c.rays()) {
      std::vector<LatticeVector> tight;
      for (const auto& f : c.facets()) {
        EXPECT_GE(dot(f, r), 0);
        if (dot(f, r) == 0) tight.push_back(f);
      }
      EXPECT_EQ(rank(tight, c.ambient_dim()), c.ambient_dim() - 1);
    }
    // and every facet is tight on d-1 independent rays
    for (const auto& f : c.facets()) {
      std::vector<LatticeVector> tight;
      for (const auto& r : c.rays())
        if (dot(f, r) == 0) tight.push_back(r);
      EXPECT_EQ(rank(tight, c.ambient_dim()), c.ambient_dim() - 1);
    }
    auto again = Cone::from_generators(c.rays());
    EXPECT_EQ(again.facets(), c.facets());
  }
}

TEST(Cone, PointedIffGradingExists) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<long long> dist(-3, 3);
  for (int t = 0; t < 60; ++t) {
    std::vector<oracle::Vec> gens(4, oracle::Vec(2));
    for (auto& g : gens)
      for (auto& e : g) e = dist(rng);
    auto c = Cone::from_generators(2, oracle::to_lattices(gens));
    std::vector<oracle::Vec> nonzero;
    for (const auto& g : gens)
      if (g[0] != 0 || g[1] != 0) nonzero.push_back(g);
    bool has_grading = oracle::find_grading(nonzero, 2, 10).has_value();
    EXPECT_EQ(c.is_pointed(), has_grading);
    if (c.is_pointed() && !nonzero.empty()) {
      auto l = c.positive_grading();
      for (const auto& g : nonzero) EXPECT_GE(dot(l, oracle::to_lattice(g)), 1);
    }
  }
}

TEST(Triangulation, Examples) {
  auto simplicial = Cone::from_generators({LatticeVector{1, 0, 0}, LatticeVector{1, 1, 0}, LatticeVector{1, 1, 3}});
  EXPECT_EQ(simplicial.triangulate().size(), 1u);
  auto fan = Cone::from_generators({LatticeVector{1, 0}, LatticeVector{1, 1}, LatticeVector{0, 1}});
  // (1,1) is not a ray, so Cone((1,0),(0,1)) is already simplicial
  EXPECT_EQ(fan.triangulate().size(), 1u);
  auto square = Cone::from_generators(
      {LatticeVector{1, 0, 1}, LatticeVector{0, 1, 1}, LatticeVector{-1, 0, 1}, LatticeVector{0, -1, 1}});
  EXPECT_EQ(square.triangulate().size(), 2u);
  EXPECT_THROW(Cone::from_generators({LatticeVector{1}, LatticeVector{-1}}).triangulate(), NotPointedError);
}

TEST(Triangulation, CoversConeOfB) {
  auto c = cone_B();
  auto simplices = c.triangulate();
  Rational total = 0;
  LatticeVector ones{1, 1, 1, 1, 1};
  for (const auto& s : simplices) {
    EXPECT_TRUE(s.is_simplicial());
    total += s.sliced_volume(ones);
  }
  EXPECT_EQ(total, c.sliced_volume(ones));
}

// Every sampled lattice point of the cone lies in some simplex; a point in
// the interior of one simplex lies in no other simplex.
void check_cover(const Cone& c, std::mt19937_64& rng, int samples, long long box) {
  auto simplices = c.triangulate();
  std::uniform_int_distribution<long long> coord(-box, box);
  const std::size_t d = c.ambient_dim();
  int inside = 0;
  for (int s = 0; s < samples; ++s) {
    LatticeVector x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = coord(rng);
    if (!c.contains(x)) continue;
    ++inside;
    std::size_t containing = 0, interior = 0;
    for (const auto& t : simplices) {
      if (!t.contains(x)) continue;
      ++containing;
      bool strict = std::all_of(t.facets().begin(), t.facets().end(),
                                [&](const auto& f) { return dot(f, x) > 0; });
      if (strict) ++interior;
    }
    EXPECT_GE(containing, 1u) << x;
    if (interior > 0) EXPECT_EQ(containing, 1u) << x;
  }
  EXPECT_GT(inside, 0);
}

TEST(Triangulation, SampledCover) {
  std::mt19937_64 rng(25);
  check_cover(cone_B(), rng, 10000, 4);
  for (int t = 0; t < 10; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3, 6, -4, 4);
    check_cover(Cone::from_generators(oracle::to_lattices(rc.generators)), rng, 1000, 8);
  }
}

TEST(Triangulation, VolumeAdditive) {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 30; ++t) {
    auto rc = oracle::random_pointed_cone(rng, 3, 6, -5, 5);
    auto c = Cone::from_generators(oracle::to_lattices(rc.generators));
    auto l = oracle::to_lattice(rc.grading);
    Rational total = 0;
    for (const auto& s : c.triangulate()) total += s.sliced_volume(l);
    EXPECT_EQ(total, c.sliced_volume(l));
  }
}

TEST(Cone, SubdivisionSimplicesLieInConeOfB) {
  auto c = cone_B();
  auto h = fixtures::h_vectors();
  for (const auto& sigma : fixtures::subdivision())
    for (int i : sigma) EXPECT_TRUE(c.contains(h[static_cast<std::size_t>(i)]));
}

}  // namespace
}  // namespace nashloop
