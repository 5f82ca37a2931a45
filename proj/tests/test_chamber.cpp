#include <gtest/gtest.h>

#include <set>

#include "frameforge/chamber.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/frame.hpp"

using namespace frameforge;

TEST(Chamber, CoxeterComplexCounts) {
  const auto a1 = coxeter_complex(build_system("A1"));
  EXPECT_EQ(a1.chamber_count(), 2);
  EXPECT_EQ(a1.panel_count(0), 1);
  const auto c2 = coxeter_complex(build_system("C2"));
  EXPECT_EQ(c2.chamber_count(), 8);
  EXPECT_EQ(c2.panel_count(0) + c2.panel_count(1), 8);
  const auto h3 = coxeter_complex(build_system("H3"));
  int panels = 0;
  for (int s = 0; s < 3; ++s) panels += h3.panel_count(s);
  EXPECT_EQ(panels, 120 * 3 / 2);
  for (int s = 0; s < 3; ++s)
    for (int p = 0; p < h3.panel_count(s); ++p) EXPECT_FALSE(panel_thickness(h3, s, p).is_thick());
}

TEST(Chamber, JoinPanelThickness) {
  const auto cx = join(rank_one_building(3), rank_one_building(4));
  EXPECT_EQ(cx.chamber_count(), 12);
  EXPECT_EQ(panel_thickness(cx, 0, 0), (Thickness{Thickness::Kind::Thick, 3}));
  EXPECT_EQ(panel_thickness(cx, 1, 0), (Thickness{Thickness::Kind::Thick, 4}));
  EXPECT_TRUE(validate_building(cx).valid);
}

TEST(Chamber, PanelTooSmall) {
  const auto a1 = build_system("A1");
  try {
    ChamberComplex(a1, 2, {{{0}, {1}}}, {Apartment{{0, 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PanelTooSmall);
  }
}

TEST(Chamber, WallThickness) {
  const auto c2 = build_system("C2");
  const auto cx = coxeter_complex(c2);
  for (int r : c2->reflections()) EXPECT_FALSE(wall_thickness(cx, 0, r).is_thick());

  const auto a1a1 = build_system("A1xA1");
  const auto s = suspend(rank_one_building(3), make_embedding(a1a1, std::vector<int>{a1a1->generator(0)}));
  for (int a = 0; a < static_cast<int>(s.apartments().size()); ++a) {
    EXPECT_EQ(wall_thickness(s, a, a1a1->generator(0)), (Thickness{Thickness::Kind::Thick, 3}));
    EXPECT_FALSE(wall_thickness(s, a, a1a1->generator(1)).is_thick());
  }
}

TEST(Chamber, MixedWallDetected) {
  // The 0-wall of the apartment {0,1,2,3} carries the 0-panels of 0 and 2.
  const auto a1a1 = build_system("A1xA1");
  const std::vector<std::vector<int>> one_panels = {{0, 2}, {1, 3}, {4, 5}};
  const ChamberComplex thick(a1a1, 6, {{{0, 1, 4}, {2, 3, 5}}, one_panels}, {Apartment{{0, 1, 2, 3}}});
  EXPECT_TRUE(wall_thickness(thick, 0, a1a1->generator(0)).is_thick());
  const ChamberComplex mixed(a1a1, 6, {{{0, 1, 4, 5}, {2, 3}}, one_panels}, {Apartment{{0, 1, 2, 3}}});
  try {
    wall_thickness(mixed, 0, a1a1->generator(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedWall);
  }
}

TEST(Chamber, Folding) {
  const auto a1 = build_system("A1");
  const auto cx = coxeter_complex(a1);
  const auto f = fold(cx, 0, a1->generator(0), 1);
  EXPECT_EQ(f[0], f[1]);

  const auto c2 = build_system("C2");
  const auto cc = coxeter_complex(c2);
  for (int side : {1, -1}) {
    const auto g = fold(cc, 0, c2->generator(0), side);
    EXPECT_EQ(std::set<int>(g.begin(), g.end()).size(), 4u);
    for (int c = 0; c < 8; ++c) EXPECT_EQ(g[g[c]], g[c]);
  }
  try {
    fold(cc, 0, c2->generator(0), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSide);
  }
}

TEST(Chamber, ValidationReportsMissingApartment) {
  EXPECT_TRUE(validate_building(coxeter_complex(build_system("H3"))).valid);
  const auto good = join(rank_one_building(3), rank_one_building(3));
  auto apartments = good.apartments();
  apartments.pop_back();
  std::vector<std::vector<std::vector<int>>> panels{good.panels(0), good.panels(1)};
  const ChamberComplex broken(good.type(), good.chamber_count(), panels, apartments);
  const auto report = validate_building(broken);
  EXPECT_FALSE(report.valid);
  ASSERT_FALSE(report.violations.empty());
}

TEST(Chamber, MinimalGalleries) {
  const auto c2 = build_system("C2");
  const auto cx = coxeter_complex(c2);
  const auto same = minimal_galleries(cx, 0, 0);
  ASSERT_EQ(same.size(), 1u);
  EXPECT_EQ(same[0].size(), 1u);
  const auto opposite = minimal_galleries(cx, 0, c2->longest());
  EXPECT_EQ(opposite.size(), 2u);
  for (const auto& g : opposite) EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(minimal_galleries(cx, 0, c2->generator(1))[0].size(), 2u);

  const ChamberComplex split(build_system("A1"), 4, {{{0, 1}, {2, 3}}}, {Apartment{{0, 1}}, Apartment{{2, 3}}});
  try {
    minimal_galleries(split, 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Disconnected);
  }
}
