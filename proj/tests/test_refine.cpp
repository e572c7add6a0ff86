#include <gtest/gtest.h>

#include "grpext/errors.hpp"
#include "grpext/refine.hpp"

using namespace grpext;

TEST(Refine, IdentityCoverOfGroup) {
  auto k = cyclic_group_groupoid(2);
  OpenCover u{{{0}}};
  auto r = refine(k, u);
  EXPECT_EQ(r.refined->num_objects(), 1);
  EXPECT_EQ(r.refined->num_arrows(), 2);
  EXPECT_TRUE(is_equivalence(r.projection));
  EXPECT_TRUE(r.refined->same_tables(*k) ||
              (r.refined->num_arrows() == k->num_arrows()));
}

TEST(Refine, PartitionCoverOfPairGroupoid) {
  auto k = pair_groupoid(2);
  OpenCover u{{{0}, {1}}};
  auto r = refine(k, u);
  EXPECT_EQ(r.refined->num_objects(), 2);
  EXPECT_EQ(r.refined->num_arrows(), 4);
  EXPECT_TRUE(is_equivalence(r.projection));
}

TEST(Refine, OverlappingCoverOfPairGroupoid) {
  auto k = pair_groupoid(2);
  OpenCover u{{{0, 1}, {1}}};
  auto r = refine(k, u);
  EXPECT_EQ(r.refined->num_objects(), 3);
  EXPECT_EQ(r.refined->num_arrows(), 9);
  EXPECT_TRUE(is_equivalence(r.projection));
}

TEST(Refine, InvalidCoverRejected) {
  auto k = pair_groupoid(2);
  EXPECT_THROW(refine(k, OpenCover{{{0}}}), InvalidCover);       // misses object 1
  EXPECT_THROW(refine(k, OpenCover{{{0}, {}}}), InvalidCover);   // empty subset
}

TEST(Refine, EmptyGroupoidEmptyCover) {
  GroupoidData d;
  auto g = FiniteGroupoid::validate(d).groupoid;
  auto r = refine(g, OpenCover{});
  EXPECT_EQ(r.refined->num_objects(), 0);
}

TEST(Refine, RefinementTriangleCommutes) {
  // W = {{0},{1},{1}} refines U = {{0,1},{1}} over the pair groupoid; the
  // induced functor triangle over K commutes on objects and arrows.
  auto k = pair_groupoid(2);
  OpenCover u{{{0, 1}, {1}}};
  OpenCover w{{{0}, {1}, {1}}};
  auto ru = refine(k, u);
  auto rw = refine(k, w);
  auto subset_map = refines(w, u);
  ASSERT_TRUE(subset_map.has_value());
  auto iota = refinement_morphism(rw, ru, *subset_map);
  EXPECT_TRUE(is_equivalence(iota));
  auto through = compose_morphisms(iota, ru.projection);
  EXPECT_TRUE(through == rw.projection);
}

TEST(Refine, CommonRefinementIntersections) {
  OpenCover u{{{0, 1}, {2}}};
  OpenCover v{{{0}, {1, 2}}};
  auto w = common_refinement(u, v);
  ASSERT_EQ(w.subsets.size(), 3u);  // {0}, {1}, {2}
  EXPECT_EQ(w.subsets[0], (std::vector<int>{0}));
  EXPECT_EQ(w.subsets[1], (std::vector<int>{1}));
  EXPECT_EQ(w.subsets[2], (std::vector<int>{2}));
  ASSERT_TRUE(refines(w, u).has_value());
  ASSERT_TRUE(refines(w, v).has_value());
}
