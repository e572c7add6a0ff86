#include "grpext/groupoid.hpp"

#include <gtest/gtest.h>

#include "grpext/errors.hpp"

using namespace grpext;

namespace {

GroupoidData data_of(const FiniteGroupoid& g) { return g.data(); }

bool has_kind(const ValidationResult& r, ViolationKind k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST(Groupoid, CyclicTwoValidates) {
  auto g = cyclic_group_groupoid(2);
  EXPECT_EQ(g->num_objects(), 1);
  EXPECT_EQ(g->num_arrows(), 2);
  int e = g->arrow_index("e"), a = g->arrow_index("g1");
  EXPECT_EQ(g->compose(a, a), e);
  EXPECT_EQ(g->inverse(a), a);
  EXPECT_TRUE(g->is_unit(e));
}

TEST(Groupoid, PairGroupoidOnThreeObjects) {
  auto g = pair_groupoid(3);
  EXPECT_EQ(g->num_objects(), 3);
  EXPECT_EQ(g->num_arrows(), 9);
  // (i,j) * (j,k) = (i,k)
  int a01 = 0 * 3 + 1, a12 = 1 * 3 + 2, a02 = 0 * 3 + 2;
  EXPECT_EQ(g->compose(a01, a12), a02);
  EXPECT_EQ(g->src(a01), 0);
  EXPECT_EQ(g->tgt(a01), 1);
}

TEST(Groupoid, CorruptedTableReportsInverseViolation) {
  auto data = data_of(*cyclic_group_groupoid(2));
  // Redefine g1 * g1 = g1.
  for (auto& e : data.compose)
    if (e[0] == 1 && e[1] == 1) e[2] = 1;
  auto r = FiniteGroupoid::validate(data);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_kind(r, ViolationKind::Inverse) || has_kind(r, ViolationKind::Unit));
}

TEST(Groupoid, MissingCompositeReported) {
  auto data = data_of(*cyclic_group_groupoid(3));
  data.compose.pop_back();
  auto r = FiniteGroupoid::validate(data);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_kind(r, ViolationKind::CompositionDomain));
}

TEST(Groupoid, AssociativityViolationReported) {
  // A 3-element "group" table that breaks associativity but keeps the
  // unit and inverse laws: swap two non-unit products of Z/3.
  auto data = data_of(*cyclic_group_groupoid(3));
  for (auto& e : data.compose) {
    if (e[0] == 1 && e[1] == 1) e[2] = 1;  // g1*g1 = g1 (was g2)
  }
  auto r = FiniteGroupoid::validate(data);
  EXPECT_FALSE(r.ok());
}

TEST(Groupoid, EmptyGroupoidIsValid) {
  GroupoidData d;
  auto r = FiniteGroupoid::validate(d);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.groupoid->num_objects(), 0);
  EXPECT_EQ(r.groupoid->num_arrows(), 0);
}

TEST(Groupoid, SymmetricGroupTable) {
  auto g = symmetric3_groupoid();
  EXPECT_EQ(g->num_arrows(), 6);
  // Non-commutative witnesses exist.
  bool noncomm = false;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (g->compose(a, b) != g->compose(b, a)) noncomm = true;
  EXPECT_TRUE(noncomm);
}

TEST(Groupoid, DisjointUnionComponents) {
  auto g = disjoint_union({cyclic_group_groupoid(2), cyclic_group_groupoid(2)});
  EXPECT_EQ(g->num_objects(), 2);
  EXPECT_EQ(g->num_arrows(), 4);
  auto comp = g->object_components();
  EXPECT_NE(comp[0], comp[1]);
}

TEST(Groupoid, UnitGroupoid) {
  auto g = unit_groupoid(3);
  EXPECT_EQ(g->num_arrows(), 3);
  for (int a = 0; a < 3; ++a) EXPECT_TRUE(g->is_unit(a));
}

TEST(Groupoid, CanonicalNamesAreSorted) {
  for (auto g : {cyclic_group_groupoid(4), pair_groupoid(4), symmetric3_groupoid(),
                 disjoint_union({unit_groupoid(2), cyclic_group_groupoid(3)})}) {
    for (int x = 1; x < g->num_objects(); ++x)
      EXPECT_LT(g->object_name(x - 1), g->object_name(x));
    for (int a = 1; a < g->num_arrows(); ++a)
      EXPECT_LT(g->arrow_name(a - 1), g->arrow_name(a));
  }
}

TEST(Groupoid, LoopsAndHom) {
  auto g = pair_groupoid(2);
  EXPECT_EQ(g->loops_at(0).size(), 1u);
  EXPECT_EQ(g->hom(0, 1).size(), 1u);
  auto s3 = symmetric3_groupoid();
  EXPECT_EQ(s3->loops_at(0).size(), 6u);
}
