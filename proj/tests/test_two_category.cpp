#include <gtest/gtest.h>

#include "grpext/errors.hpp"
#include "grpext/morphism.hpp"

using namespace grpext;

namespace {

// All strict morphisms A -> B by brute force.
std::vector<StrictMorphism> all_morphisms(GroupoidPtr a, GroupoidPtr b) {
  std::vector<StrictMorphism> out;
  std::vector<int> obj(a->num_objects(), 0);
  auto try_arrows = [&](const std::vector<int>& obj_map) {
    std::vector<std::vector<int>> cands(a->num_arrows());
    for (int g = 0; g < a->num_arrows(); ++g) {
      cands[g] = b->hom(obj_map[a->src(g)], obj_map[a->tgt(g)]);
      if (cands[g].empty()) return;
    }
    std::vector<int> pick(a->num_arrows(), 0);
    while (true) {
      StrictMorphism f{a, b, obj_map, {}};
      f.arrow_map.resize(a->num_arrows());
      for (int g = 0; g < a->num_arrows(); ++g) f.arrow_map[g] = cands[g][pick[g]];
      if (is_functor(f)) out.push_back(f);
      int i = a->num_arrows() - 1;
      while (i >= 0 && pick[i] + 1 == static_cast<int>(cands[i].size())) pick[i--] = 0;
      if (i < 0) break;
      ++pick[i];
    }
  };
  while (true) {
    try_arrows(obj);
    int i = a->num_objects() - 1;
    while (i >= 0 && obj[i] + 1 == b->num_objects()) obj[i--] = 0;
    if (i < 0) break;
    ++obj[i];
  }
  return out;
}

}  // namespace

TEST(TwoCategory, IdentityCompose) {
  auto g = cyclic_group_groupoid(3);
  auto id = identity_morphism(g);
  auto f = compose_morphisms(id, id);
  EXPECT_TRUE(f == id);
}

TEST(TwoCategory, SwapAutomorphismSquaresToIdentity) {
  auto v4 = klein_four_groupoid();
  // Swap va <-> vb extends to an automorphism of Z/2 x Z/2.
  StrictMorphism swap{v4, v4, {0}, {0, 2, 1, 3}};
  ASSERT_TRUE(is_functor(swap));
  auto sq = compose_morphisms(swap, swap);
  EXPECT_TRUE(sq == identity_morphism(v4));
}

TEST(TwoCategory, DomainMismatchThrows) {
  auto a = cyclic_group_groupoid(2);
  auto b = cyclic_group_groupoid(3);
  EXPECT_THROW(compose_morphisms(identity_morphism(a), identity_morphism(b)),
               DomainMismatch);
}

TEST(TwoCategory, VerticalIdentityAndInverse) {
  auto g = cyclic_group_groupoid(4);
  auto id = identity_morphism(g);
  auto one = identity_transformation(id);
  EXPECT_TRUE(vertical_compose(one, one) == one);

  // A nontrivial 2-cell id => id: conjugation by any element (abelian: all
  // central sections are cells id => id).
  NaturalTransformation r{id, id, {g->arrow_index("g1")}};
  ASSERT_TRUE(is_natural(r));
  auto rinv = vertical_inverse(r);
  EXPECT_TRUE(vertical_compose(r, rinv) == one);
}

TEST(TwoCategory, NaturalityFailureDetected) {
  auto s3 = symmetric3_groupoid();
  auto id = identity_morphism(s3);
  // A non-central loop is not a natural transformation id => id.
  NaturalTransformation r{id, id, {s3->arrow_index("s0")}};
  EXPECT_FALSE(is_natural(r));
}

TEST(TwoCategory, HorizontalOnNSections) {
  // N_{B(Z/3)} is Z/3: cells sigma_a: id => id with component a, and
  // horizontal composition adds the exponents.
  auto g = cyclic_group_groupoid(3);
  auto id = identity_morphism(g);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      NaturalTransformation ra{id, id, {a}}, rb{id, id, {b}};
      ASSERT_TRUE(is_natural(ra));
      auto c = horizontal_compose(ra, rb);
      EXPECT_EQ(c.component[0], g->compose(b, a));  // inner first
    }
}

TEST(TwoCategory, HorizontalInverseLaw) {
  auto g = cyclic_group_groupoid(4);
  auto id = identity_morphism(g);
  NaturalTransformation r{id, id, {1}};
  ASSERT_TRUE(is_natural(r));
  auto rinv = horizontal_inverse(r);
  auto prod = horizontal_compose(r, rinv);
  EXPECT_TRUE(prod == identity_transformation(id));
  auto prod2 = horizontal_compose(rinv, r);
  EXPECT_TRUE(prod2 == identity_transformation(id));
}

TEST(TwoCategory, InterchangeLawExhaustive) {
  // Exhaustive over all 2-cells between endomorphisms of B(Z/4).
  auto g = cyclic_group_groupoid(4);
  auto functors = all_morphisms(g, g);
  std::vector<NaturalTransformation> cells;
  for (const auto& f : functors)
    for (const auto& h : functors)
      for (const auto& r : all_transformations(f, h)) cells.push_back(r);

  int checked = 0;
  for (const auto& r1 : cells)
    for (const auto& r2 : cells) {
      if (!(r1.target == r2.source)) continue;
      auto v12 = vertical_compose(r1, r2);
      for (const auto& r3 : cells)
        for (const auto& r4 : cells) {
          if (!(r3.target == r4.source)) continue;
          auto v34 = vertical_compose(r3, r4);
          // (r3 . r4) after (r1 . r2) horizontally vs. the vertical of
          // horizontals.
          auto lhs = horizontal_compose(v34, v12);
          auto rhs = vertical_compose(horizontal_compose(r3, r1),
                                      horizontal_compose(r4, r2));
          EXPECT_TRUE(lhs == rhs);
          ++checked;
        }
    }
  EXPECT_GT(checked, 0);
}

TEST(TwoCategory, EquivalenceChecks) {
  auto g = pair_groupoid(2);
  EXPECT_TRUE(is_equivalence(identity_morphism(g)));
  // Collapse of the pair groupoid onto one object is an equivalence
  // (fully faithful onto B(1), essentially surjective).
  auto pt = unit_groupoid(1);
  StrictMorphism collapse{g, pt, {0, 0}, {0, 0, 0, 0}};
  ASSERT_TRUE(is_functor(collapse));
  EXPECT_TRUE(is_equivalence(collapse));
  // The unit inclusion into B(Z/2) is not full.
  auto z2 = cyclic_group_groupoid(2);
  StrictMorphism incl{pt, z2, {0}, {0}};
  ASSERT_TRUE(is_functor(incl));
  EXPECT_FALSE(is_equivalence(incl));
}
