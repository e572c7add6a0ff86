#include <gtest/gtest.h>

#include "grpext/abelian.hpp"
#include "grpext/errors.hpp"

using namespace grpext;

TEST(Abelian, CyclicDecomposition) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({6});
  EXPECT_EQ(g.invariant_factors(), (std::vector<long long>{6}));
  EXPECT_EQ(g.order(), 6);
}

TEST(Abelian, KleinFour) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({2, 2});
  EXPECT_EQ(g.invariant_factors(), (std::vector<long long>{2, 2}));
}

TEST(Abelian, MixedFactorsNormalize) {
  // Z2 x Z3 x Z4 = Z12 x Z2 -> invariant factors 2 | 12.
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({2, 3, 4});
  EXPECT_EQ(g.invariant_factors(), (std::vector<long long>{2, 12}));
}

TEST(Abelian, TrivialGroup) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({});
  EXPECT_EQ(g.order(), 1);
  EXPECT_TRUE(g.invariant_factors().empty());
}

TEST(Abelian, CoordinatesRoundTrip) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({2, 4});
  for (int e = 0; e < g.order(); ++e)
    EXPECT_EQ(g.element_from_coordinates(g.coordinates(e)), e);
}

TEST(Abelian, BasisOrdersMatchFactors) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({2, 2, 3});
  auto factors = g.invariant_factors();
  ASSERT_EQ(factors.size(), g.basis().size());
  for (size_t i = 0; i < factors.size(); ++i)
    EXPECT_EQ(g.element_order(g.basis()[i]), factors[i]);
}

TEST(Abelian, RejectsNonGroup) {
  std::vector<std::vector<int>> bad = {{0, 1}, {1, 1}};
  EXPECT_THROW(FiniteAbelianGroup::from_table(bad, 0), Error);
}

TEST(Abelian, ScaleAndNeg) {
  auto g = FiniteAbelianGroup::direct_sum_of_cyclic({5});
  EXPECT_EQ(g.scale(3, 2), 1);  // 3*2 = 6 = 1 mod 5
  EXPECT_EQ(g.neg(2), 3);
  EXPECT_EQ(g.scale(-1, 2), 3);
}
