#include <gtest/gtest.h>

#include <functional>

#include "frameforge/catalog.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/io.hpp"
#include "frameforge/isomorphism.hpp"

using namespace frameforge;
using nlohmann::json;

namespace {

// Message of the Parse error raised by f, or "" if none.
std::string parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted";
  return "";
}

json digon_json() { return building_to_json(join(rank_one_building(3), rank_one_building(3))); }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Words, RoundTrip) {
  const auto h3 = build_system("H3");
  for (int w = 0; w < h3->order(); ++w) EXPECT_EQ(element_of_word_string(*h3, word_string(*h3, w)), w);
  EXPECT_EQ(word_string(*h3, 0), "");
  EXPECT_THROW(element_of_word_string(*h3, "3"), Error);
  EXPECT_THROW(element_of_word_string(*h3, "a"), Error);
}

TEST(TypeArgument, NamesAndLiterals) {
  EXPECT_EQ(parse_type_argument("C2"), parse_type_argument("[[1,4],[4,1]]"));
  EXPECT_EQ(parse_type_argument("A1xA1").rank(), 2);
  EXPECT_THROW(parse_type_argument("[[1,4],[4"), Error);
}

TEST(BuildingFormat, RoundTripIsIsomorphicAndByteStable) {
  std::vector<ChamberComplex> instances;
  for (const auto& inst : roundtrip_catalog()) {
    instances.push_back(inst.building);
    instances.push_back(suspend(inst.building, inst.embedding));
  }
  instances.push_back(coxeter_complex(build_system("G2")));
  instances.push_back(trivial_complex());
  for (const auto& cx : instances) {
    const std::string text = emit_building(cx);
    const BuildingFile back = parse_building(text);
    EXPECT_TRUE(find_isomorphism(cx, back.complex).has_value());
    EXPECT_EQ(emit_building(back.complex), text);
  }
}

TEST(BuildingFormat, LayoutAndVersion) {
  const json j = digon_json();
  EXPECT_EQ(j["format_version"], 1);
  EXPECT_EQ(j["type"]["rank"], 2);
  EXPECT_EQ(j["chambers"], 9);
  EXPECT_EQ(j["panels"]["0"].size(), 3u);
  EXPECT_TRUE(j["apartments"][0]["map"].contains(""));
  EXPECT_TRUE(j["apartments"][0]["map"].contains("01"));
  EXPECT_FALSE(j.contains("embedding"));
}

TEST(BuildingFormat, EmbeddingRoundTrip) {
  const auto cat = roundtrip_catalog();
  const FrameResult r = thick_frame(suspend(cat[2].building, cat[2].embedding));
  const json j = building_to_json(r.frame, &r.subgroup);
  ASSERT_TRUE(j.contains("embedding"));
  EXPECT_EQ(j["embedding"]["generator_roots"].size(), 2u);
  const BuildingFile back = parse_building(j.dump());
  ASSERT_TRUE(back.embedding.has_value());
  EXPECT_EQ(back.embedding->reflections, r.subgroup.reflections);
  // The whole group is not written out.
  const auto cx = join(rank_one_building(3), rank_one_building(3));
  const FrameResult fixed = thick_frame(cx);
  EXPECT_FALSE(building_to_json(fixed.frame, &fixed.subgroup).contains("embedding"));
}

TEST(BuildingFormat, LocatedErrors) {
  EXPECT_TRUE(contains(parse_error([] { parse_building("{"); }), "malformed JSON"));
  {
    json j = digon_json();
    j.erase("chambers");
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/chambers"));
  }
  {
    json j = digon_json();
    j["format_version"] = 2;
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/format_version"));
  }
  {
    json j = digon_json();
    j["panels"]["1"][2][0] = 40;
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/panels/1/2/0"));
  }
  {
    json j = digon_json();
    j["panels"]["7"] = json::array();
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/panels/7"));
  }
  {
    json j = digon_json();
    j["apartments"][1]["map"].erase("01");
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/apartments/1/map"));
  }
  {
    json j = digon_json();
    j["apartments"][0]["map"]["2"] = 0;
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/apartments/0/map/2"));
  }
  {
    json j = digon_json();
    j["type"]["coxeter_matrix"][0][1] = 3;
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "/type/coxeter_matrix"));
  }
  {
    // Dropping an apartment leaves opposite chambers without a common one.
    json j = digon_json();
    j["apartments"].erase(j["apartments"].size() - 1);
    EXPECT_TRUE(contains(parse_error([&] { parse_building(j.dump()); }), "building axioms"));
    EXPECT_NO_THROW(parse_building(j.dump(), false));
  }
}

TEST(ModelFormat, ParsesFixtures) {
  const AffineModel m = parse_model(read_file(std::string(FIXTURE_DIR) + "/tree_product.json"));
  EXPECT_EQ(m.dimension(), 2);
  EXPECT_EQ(m.charts.size(), 66u * 66u);
  const AffineModel a2 = parse_model(read_file(std::string(FIXTURE_DIR) + "/sabotage_a2.json"));
  EXPECT_EQ(a2.charts.back().element.translation[0], Rational(1, 2));
  const AffineModel a1 = parse_model(read_file(std::string(FIXTURE_DIR) + "/sabotage_a1.json"));
  EXPECT_FALSE(a1.closed_under_group);
}

TEST(ModelFormat, LocatedErrors) {
  const json base = json::parse(read_file(std::string(FIXTURE_DIR) + "/tree_product.json"));
  {
    json j = base;
    j["factors"][1]["kind"] = "cone";
    EXPECT_TRUE(contains(parse_error([&] { parse_model(j.dump()); }), "/factors/1/kind"));
  }
  {
    json j = base;
    j["weyl_group"] = "C3";
    EXPECT_TRUE(contains(parse_error([&] { parse_model(j.dump()); }), "/weyl_group"));
  }
  {
    json j = base;
    j["atlas"]["avoid_leaves"] = json::array({json::array({0, 1})});
    EXPECT_TRUE(contains(parse_error([&] { parse_model(j.dump()); }), "/atlas/avoid_leaves/0/1"));
  }
  {
    json j = base;
    j["translations"] = json::array({json::array({"1/0", 0})});
    EXPECT_TRUE(contains(parse_error([&] { parse_model(j.dump()); }), "/translations/0/0"));
  }
}

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(Rational(-1, 2)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}
