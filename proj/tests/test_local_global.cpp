#include "oracles.hpp"
#include "tate/random_scenarios.hpp"

#include <gtest/gtest.h>

using namespace tate;

namespace {

FgAbGroup cyc(long long n) { return FgAbGroup::from_invariants({n}); }

// Gamma = Z/2 acting on {a, b, c}: a and b swapped (split place), c fixed
// (inert place).
PlaceSet split_inert() {
  return PlaceSet(GSet::from_generator_images(groups::cyclic(2), 3, {{1, 0, 2}}));
}

GlobalScenario with_trivial(const PlaceSet& p, const FgAbGroup& lambda) {
  return GlobalScenario(p, {GModule::trivial(p.group(), lambda), "trivial"});
}

}  // namespace

TEST(DivisorModules, Examples) {
  const PlaceSet one(GSet::from_generator_images(groups::cyclic(2), 1, {{0}}));
  EXPECT_EQ(divisor_module(one).underlying(), FgAbGroup::free(1));
  EXPECT_EQ(degree_zero_module(one).module.rank(), 0u);

  const PlaceSet pair(GSet::from_generator_images(groups::cyclic(2), 2, {{1, 0}}));
  const DegreeZero z2 = degree_zero_module(pair);
  EXPECT_EQ(z2.module.action(1), IntMatrix{{-1}});

  // sigma(a - b) = -(a - b), sigma(b - c) = (a - b) + (b - c).
  const DegreeZero z3 = degree_zero_module(split_inert());
  EXPECT_EQ(z3.module.action(1), (IntMatrix{{-1, 1}, {0, 1}}));
  EXPECT_EQ(z3.inclusion.matrix(), (IntMatrix{{1, 0}, {-1, 1}, {0, -1}}));
  EXPECT_THROW(PlaceSet(GSet(groups::cyclic(2), 0, {{}, {}})), InputError);
}

TEST(DivisorModules, QuotientIsTrivialZ) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random::random_scenario(rng);
    const DegreeZero z = degree_zero_module(s.places);
    const auto q = cokernel(z.inclusion);
    EXPECT_EQ(q.group, FgAbGroup::free(1));
    EXPECT_TRUE(z.inclusion.is_injective());
    // Equivariance of the inclusion.
    const GModule zv = divisor_module(s.places);
    for (std::size_t g = 0; g < s.group().order(); ++g)
      EXPECT_EQ(zv.action(int(g)) * z.inclusion.matrix(), z.inclusion.matrix() * z.module.action(int(g)));
  }
}

TEST(GlobalA, Examples) {
  // Oracle: A = coker(sigma - 1) on Z[V]_0 = Z^2 / <(-2, 0), (1, 0)> = Z.
  EXPECT_EQ(oracle::cokernel_of(IntMatrix{{-2, 1}, {0, 0}}), FgAbGroup::free(1));
  const auto z = with_trivial(split_inert(), FgAbGroup::free(1));
  EXPECT_EQ(global_A(z).group(), FgAbGroup::free(1));
  EXPECT_TRUE(global_h1(z).is_trivial());
  // Lambda = Z/2: (Z/2)^2 modulo the image of [[0, 1], [0, 0]] (= sigma - 1 mod 2).
  EXPECT_EQ(oracle::cokernel_of(IntMatrix{{0, 1, 2, 0}, {0, 0, 0, 2}}), cyc(2));
  const auto t = with_trivial(split_inert(), cyc(2));
  EXPECT_EQ(global_A(t).group(), cyc(2));
  EXPECT_EQ(global_h1(t), cyc(2));
  const PlaceSet one(GSet::from_generator_images(groups::cyclic(2), 1, {{0}}));
  EXPECT_TRUE(global_A(with_trivial(one, cyc(3))).group().is_trivial());
  EXPECT_TRUE(global_h1(with_trivial(one, cyc(3))).is_trivial());
}

TEST(Localization, SplitInertZ2) {
  const auto s = with_trivial(split_inert(), cyc(2));
  // Hand computation: A = Z/2 generated by e2 = b - c. At the split place
  // (representative a) x_b = sigma a gives the class of lambda; at the inert
  // place -x_c gives -lambda = lambda. So e2 -> 1 at both places.
  const Localization split = localize(s, 0);
  const Localization inert = localize(s, 1);
  EXPECT_EQ(split.representative, 0);
  EXPECT_EQ(inert.representative, 2);
  EXPECT_EQ(split.decomposition.order(), 1u);
  EXPECT_EQ(inert.decomposition.order(), 2u);
  EXPECT_EQ(split.local_group, cyc(2));
  EXPECT_EQ(inert.local_group, cyc(2));
  EXPECT_EQ(split.map.canonical_matrix(), IntMatrix{{1}});
  EXPECT_EQ(inert.map.canonical_matrix(), IntMatrix{{1}});
  EXPECT_TRUE(inert.map.is_surjective());
  EXPECT_THROW(localize(s, 2), InputError);
  const PlaceSet one(GSet::from_generator_images(groups::cyclic(2), 1, {{0}}));
  EXPECT_TRUE(localize(with_trivial(one, cyc(2)), 0).map.is_zero());
}

TEST(Obstruction, SplitInertZ2) {
  const auto s = with_trivial(split_inert(), cyc(2));
  EXPECT_EQ(sum_to_global(s, {}), IntVector{0});
  EXPECT_EQ(sum_to_global(s, {{1}, {0}}), IntVector{1});
  EXPECT_EQ(sum_to_global(s, {{1}, {1}}), IntVector{0});

  const ObstructionReport no = check_in_image(s, {{1}, {0}});
  EXPECT_FALSE(no.in_image);
  ASSERT_TRUE(no.obstruction.has_value());
  EXPECT_EQ(*no.obstruction, IntVector{1});
  EXPECT_FALSE(no.certificate.has_value());

  const ObstructionReport yes = check_in_image(s, {{1}, {1}});
  EXPECT_TRUE(yes.in_image);
  ASSERT_TRUE(yes.certificate.has_value());
  EXPECT_EQ(*yes.certificate, IntVector{1});

  const ObstructionReport zero = check_in_image(s, {});
  EXPECT_TRUE(zero.in_image);
  EXPECT_EQ(*zero.certificate, IntVector{0});

  EXPECT_THROW(check_in_image(s, {{2}, {0}}), InputError);
  EXPECT_THROW(check_in_image(s, {{1}, {0}, {0}}), InputError);
}

TEST(Obstruction, ExactnessOnRandomScenarios) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = random::random_scenario(rng);
    EXPECT_TRUE(verify_exactness(s));
    std::vector<IntVector> locals;
    for (std::size_t u = 0; u < s.places.orbits().size(); ++u) {
      const FgAbGroup lg = local_coinvariants(s, s.places.representative(u));
      IntVector c(lg.canonical_rank());
      for (std::size_t i = 0; i < c.size(); ++i) {
        const Integer m = lg.canonical_modulus(i);
        c[i] = m == 0 ? Integer(int(rng() % 5) - 2) : Integer(rng() % static_cast<unsigned long long>(m));
      }
      locals.push_back(c);
    }
    EXPECT_NO_THROW(check_in_image(s, locals));
  }
}

TEST(Shapiro, IsomorphismAndRepresentativeChange) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random::random_scenario(rng);
    for (std::size_t u = 0; u < s.places.orbits().size(); ++u) {
      const int w = s.places.representative(u);
      const AbHom base = shapiro_map(s, u, w);
      EXPECT_TRUE(base.is_isomorphism());
      EXPECT_EQ(induced_coinvariants(s, u), local_coinvariants(s, w));
      for (int w2 : s.places.orbits()[u]) {
        const AbHom other = shapiro_map(s, u, w2);
        EXPECT_TRUE(other.equals(compose(change_of_representative(s, w, w2), base)));
        // Localizations through w and w2 differ by the same identification.
        const Localization lw = localize(s, u, w), lw2 = localize(s, u, w2);
        EXPECT_TRUE(lw2.map.equals(compose(change_of_representative(s, w, w2), lw.map)));
      }
    }
  }
}

TEST(Transition, Examples) {
  const FiniteGroup one;
  const GlobalScenario k_one(PlaceSet(GSet(one, 1, {{0}})), catalog::gl(1));
  // Totally split into 3 points.
  const FiniteGroup c3 = groups::cyclic(3);
  const Tower split = make_tower(k_one, PlaceSet(GSet::cosets(c3, c3.subgroups().front())), {0, 0, 0}, {0, 0, 0});
  EXPECT_EQ(transition_p(split).full, (IntMatrix{{1}, {1}, {1}}));
  // Inert.
  const Tower inert = make_tower(k_one, PlaceSet(GSet::cosets(c3, c3.whole())), {0, 0, 0}, {0});
  EXPECT_EQ(transition_p(inert).full, IntMatrix{{3}});
  // [L:K] = 4, v splits into two points of degree 2: p(v) = 2 w1 + 2 w2.
  const FiniteGroup c4 = groups::cyclic(4);
  const Subgroup half = c4.make_subgroup({0, 2});
  const Tower two = make_tower(k_one, PlaceSet(GSet::cosets(c4, half)), {0, 0, 0, 0}, {0, 0});
  const Transition p = transition_p(two);
  EXPECT_EQ(p.full, (IntMatrix{{2}, {2}}));
  EXPECT_EQ(p.local_degrees, (std::vector<long long>{2, 2}));
  try {
    transition_p(two, {1, 2});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("K-point 0"), std::string::npos);
  }
}

TEST(Transition, RejectsInconsistentTowers) {
  const FiniteGroup one;
  const GlobalScenario k_two(PlaceSet(GSet(one, 2, {{0, 1}})), catalog::gl(1));
  const FiniteGroup c2 = groups::cyclic(2);
  // Two L-points swapped by Gamma(L/K) cannot lie over different K-points.
  EXPECT_THROW(make_tower(k_two, PlaceSet(GSet::from_generator_images(c2, 2, {{1, 0}})), {0, 0}, {0, 1}), InputError);
  EXPECT_THROW(make_tower(k_two, PlaceSet(GSet::from_generator_images(c2, 2, {{1, 0}})), {0, 0}, {0, 0}), InputError);
}

TEST(Transition, RandomTowersPreserveDegreeZeroAndEquivariance) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Tower t = random::random_tower(rng);
    const Transition p = transition_p(t);
    for (std::size_t j = 0; j < p.full.cols(); ++j) {
      Integer deg = 0;
      for (std::size_t i = 0; i < p.full.rows(); ++i) deg += p.full(i, j);
      EXPECT_EQ(deg, Integer(t.degree()));
    }
    const DegreeZero zk = degree_zero_module(t.lower.places), zl = degree_zero_module(t.upper.places);
    for (std::size_t g = 0; g < t.projection.size(); ++g)
      EXPECT_EQ(p.degree_zero * zk.module.action(t.projection[g]), zl.module.action(int(g)) * p.degree_zero);
  }
}

TEST(Tower, IdentityTowerIsBijective) {
  const auto s = with_trivial(split_inert(), cyc(2));
  const Tower t = make_tower(s, s.places, {0, 1}, {0, 1, 2});
  const TowerReport r = tower_compare(t);
  EXPECT_TRUE(r.bijective);
  EXPECT_TRUE(r.squares_commute);
  EXPECT_EQ(r.map.matrix(), IntMatrix::identity(r.map.matrix().rows()));
}

TEST(Tower, QuadraticOverTrivialScalesByDegree) {
  // K = F with two places; L quadratic, one place split and one inert.
  const FiniteGroup one;
  const GlobalScenario k(PlaceSet(GSet(one, 2, {{0, 1}})), catalog::gl(1));
  const Tower t = make_tower(k, split_inert(), {0, 0}, {0, 0, 1});
  const TowerReport r = tower_compare(t);
  // Both A groups are Z and the map is multiplication by [L:K] = 2.
  EXPECT_EQ(r.lower_A, FgAbGroup::free(1));
  EXPECT_EQ(r.upper_A, FgAbGroup::free(1));
  EXPECT_TRUE(r.groups_isomorphic);
  EXPECT_EQ(abs(r.map.matrix()(0, 0)), 2);
  EXPECT_FALSE(r.bijective);
  EXPECT_FALSE(r.squares_commute);
  for (const auto& sq : r.squares) EXPECT_TRUE(sq.commutes_scaled);
}

TEST(Tower, ScaledSquaresAlwaysCommute) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const TowerReport r = tower_compare(random::random_tower(rng));
    for (const auto& sq : r.squares) EXPECT_TRUE(sq.commutes_scaled);
    if (r.degree == 1) {
      EXPECT_TRUE(r.bijective);
      EXPECT_TRUE(r.squares_commute);
    }
  }
}
