#include "tate/fundamental_group.hpp"

#include <gtest/gtest.h>

using namespace tate;

namespace {

FgAbGroup cyc(long long n) { return FgAbGroup::from_invariants({n}); }

}  // namespace

TEST(FundamentalGroup, FromRootData) {
  const FiniteGroup one;
  EXPECT_EQ(fundamental_group({1, {}, {}}, one).module.underlying(), FgAbGroup::free(1));
  EXPECT_EQ(fundamental_group({1, {{2}}, {}}, one).module.underlying(), cyc(2));
  // SL_n with coroots e_i - e_{i+1} inside the sum-zero sublattice, written in
  // the basis f_i = e_i - e_n: coroot i is f_i - f_{i+1}, the last one is f_{n-1}.
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<IntVector> roots;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      IntVector v(n - 1);
      v[i] = 1;
      if (i + 2 < n) v[i + 1] = -1;
      roots.push_back(v);
    }
    EXPECT_EQ(abs(determinant(IntMatrix::from_columns(n - 1, roots))), 1);
    EXPECT_TRUE(fundamental_group({n - 1, roots, {}}, one).module.underlying().is_trivial()) << n;
  }
}

TEST(FundamentalGroup, Catalog) {
  EXPECT_EQ(catalog::pgl(3).module.underlying(), cyc(3));
  EXPECT_TRUE(catalog::sl(5).module.underlying().is_trivial());
  EXPECT_EQ(catalog::gl(4).module.underlying(), FgAbGroup::free(1));
  EXPECT_EQ(catalog::split_torus(3).module.underlying(), FgAbGroup::free(3));
  const FundamentalGroup t = catalog::norm_one_torus();
  EXPECT_EQ(t.module.underlying(), FgAbGroup::free(1));
  EXPECT_EQ(t.module.action(1), IntMatrix{{-1}});
  EXPECT_THROW(catalog::by_name("e8", 0, FiniteGroup()), InputError);
  EXPECT_THROW(catalog::norm_one_torus(groups::cyclic(3)), InputError);
}

TEST(FundamentalGroup, PglAgreesWithAdjointQuotientModel) {
  // X_* = Z^n / Z(1, ..., 1) in the basis e_1 .. e_{n-1} (e_n = -sum), with
  // coroots e_i - e_{i+1}; the last one is e_{n-1} + sum of all.
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<IntVector> roots;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      IntVector v(n - 1);
      v[i] = 1;
      v[i + 1] = -1;
      roots.push_back(v);
    }
    IntVector last(n - 1, 1);
    last[n - 2] = 2;
    roots.push_back(last);
    EXPECT_EQ(fundamental_group({n - 1, roots, {}}, FiniteGroup()).module.underlying(),
              catalog::pgl(n).module.underlying());
    EXPECT_EQ(local_h1(catalog::pgl(n)), cyc(static_cast<long long>(n)));
  }
}

TEST(FundamentalGroup, RejectsBadActions) {
  const FiniteGroup c2 = groups::cyclic(2);
  const IntMatrix swap{{0, 1}, {1, 0}};
  try {
    fundamental_group({2, {{2, 0}}, {swap}}, c2);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("generator 0"), std::string::npos);
  }
  EXPECT_THROW(fundamental_group({1, {}, {IntMatrix{{2}}}}, c2), InputError);
  // Preserves the span but does not permute the listed coroots.
  EXPECT_THROW(fundamental_group({1, {{1}}, {IntMatrix{{-1}}}}, c2), InputError);
  EXPECT_NO_THROW(fundamental_group({2, {{1, -1}, {-1, 1}}, {swap}}, c2));
}

TEST(LocalTargets, Examples) {
  EXPECT_EQ(local_basic_classes(catalog::pgl(2)), cyc(2));
  EXPECT_EQ(local_basic_classes(catalog::gl(1)), FgAbGroup::free(1));
  EXPECT_EQ(local_basic_classes(catalog::norm_one_torus()), cyc(2));
  EXPECT_TRUE(local_h1(catalog::gl(1)).is_trivial());
  EXPECT_EQ(local_h1(catalog::norm_one_torus()), cyc(2));
  EXPECT_TRUE(local_h1(catalog::sl(3, groups::cyclic(4))).is_trivial());
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(local_h1(catalog::pgl(n, groups::cyclic(3))), cyc(long(n)));
}

TEST(LocalTargets, ToriUseFullLattice) {
  // Z^2 with the swap: coinvariants Z, torsion 0.
  const FiniteGroup c2 = groups::cyclic(2);
  const FundamentalGroup t = fundamental_group({2, {}, {IntMatrix{{0, 1}, {1, 0}}}}, c2);
  EXPECT_EQ(local_basic_classes(t), coinvariants(t.module).group);
  EXPECT_EQ(local_basic_classes(t), FgAbGroup::free(1));
}
