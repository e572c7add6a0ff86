#include <gtest/gtest.h>

#include "grpext/errors.hpp"
#include "grpext/json_io.hpp"

using namespace grpext;

namespace {

GroupoidPtr round_trip(GroupoidPtr g) {
  auto j = groupoid_to_json(*g);
  auto r = FiniteGroupoid::validate(groupoid_data_from_json(j));
  EXPECT_TRUE(r.ok());
  return r.groupoid;
}

}  // namespace

TEST(JsonIo, GroupoidRoundTripIsIdentity) {
  for (auto g : {cyclic_group_groupoid(4), pair_groupoid(3), symmetric3_groupoid(),
                 unit_groupoid(2),
                 disjoint_union({cyclic_group_groupoid(2), cyclic_group_groupoid(2)})}) {
    auto back = round_trip(g);
    ASSERT_TRUE(back != nullptr);
    EXPECT_TRUE(back->same_tables(*g));
    // Serialization is byte-stable.
    EXPECT_EQ(groupoid_to_json(*g).dump(2), groupoid_to_json(*back).dump(2));
  }
}

TEST(JsonIo, LoaderSortsByIdentifier) {
  Json j;
  j["objects"] = {"b", "a"};
  j["arrows"] = {{{"id", "ib"}, {"src", "b"}, {"tgt", "b"}},
                 {{"id", "ia"}, {"src", "a"}, {"tgt", "a"}}};
  j["unit"] = {{"a", "ia"}, {"b", "ib"}};
  j["inverse"] = {{"ia", "ia"}, {"ib", "ib"}};
  j["compose"] = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}};
  auto d = groupoid_data_from_json(j);
  EXPECT_EQ(d.object_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.arrow_names, (std::vector<std::string>{"ia", "ib"}));
}

TEST(JsonIo, RejectsDuplicatesAndMissing) {
  Json j;
  j["objects"] = {"a", "a"};
  j["arrows"] = Json::array();
  j["unit"] = Json::object();
  j["inverse"] = Json::object();
  j["compose"] = Json::array();
  EXPECT_THROW(groupoid_data_from_json(j), ParseError);

  Json k;
  k["objects"] = {"a"};
  k["arrows"] = {{{"id", "ia"}, {"src", "a"}, {"tgt", "a"}}};
  k["unit"] = Json::object();  // missing unit entry
  k["inverse"] = {{"ia", "ia"}};
  k["compose"] = {{"ia", "ia", "ia"}};
  EXPECT_THROW(groupoid_data_from_json(k), ParseError);

  Json m = k;
  m["unit"] = {{"a", "ia"}};
  m["compose"] = {{"ia", "ia", "ia"}, {"ia", "ia", "ia"}};  // duplicate pair
  EXPECT_THROW(groupoid_data_from_json(m), ParseError);
}

TEST(JsonIo, MorphismRoundTrip) {
  auto g = cyclic_group_groupoid(2);
  auto id = identity_morphism(g);
  auto j = morphism_to_json(id);
  auto back = morphism_from_json(j, g, g);
  EXPECT_TRUE(back == id);
}

TEST(JsonIo, CoverRoundTrip) {
  auto k = pair_groupoid(2);
  OpenCover u{{{0, 1}, {1}}};
  auto j = cover_to_json(u, *k);
  auto back = cover_from_json(j, *k);
  EXPECT_EQ(back.subsets, u.subsets);
}

TEST(JsonIo, CocycleAndBandFormats) {
  CocycleJson c;
  c.lambda = {{"e", 0}, {"g1", 1}};
  c.omega = {{{"g1", "g1", "o", "e"}}};
  auto j = cocycle_json_to_json(c);
  auto back = cocycle_json_from_json(j);
  EXPECT_EQ(back.lambda, c.lambda);
  EXPECT_EQ(back.omega, c.omega);

  BandJson b;
  b.values = {{"e", 0}, {"g1", 1}};
  auto jb = band_json_to_json(b);
  EXPECT_EQ(band_json_from_json(jb).values, b.values);
}
