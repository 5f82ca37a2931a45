#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "frameforge/catalog.hpp"
#include "frameforge/chamber.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/isomorphism.hpp"

using namespace frameforge;

namespace {

std::map<int, int> class_sizes(const ThinClasses& tc) {
  std::map<int, int> sizes;  // size -> number of classes
  for (const auto& c : tc.classes) ++sizes[static_cast<int>(c.size())];
  return sizes;
}

bool isomorphic(const ChamberComplex& a, const ChamberComplex& b) { return find_isomorphism(a, b).has_value(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Parse;
}

}  // namespace

TEST(ThinClasses, Examples) {
  EXPECT_EQ(class_sizes(thin_classes(join(rank_one_building(3), rank_one_building(4)))), (std::map<int, int>{{1, 12}}));
  EXPECT_EQ(class_sizes(thin_classes(coxeter_complex(build_system("C2")))), (std::map<int, int>{{8, 1}}));
  const auto c2 = build_system("C2");
  const auto s = suspend(rank_one_building(3), make_embedding(c2, std::vector<int>{c2->generator(0)}));
  EXPECT_EQ(class_sizes(thin_classes(s)), (std::map<int, int>{{4, 3}}));
}

TEST(ThickFrame, ThickInputIsFixed) {
  const auto digon = join(rank_one_building(3), rank_one_building(4));
  const FrameResult r = thick_frame(digon);
  EXPECT_EQ(r.subgroup.order(), digon.system().order());
  EXPECT_TRUE(isomorphic(r.frame, digon));
}

TEST(ThickFrame, CoxeterComplexIsTrivial) {
  for (const char* name : {"A1", "A2", "C2", "G2", "C3", "H3"}) {
    const FrameResult r = thick_frame(coxeter_complex(build_system(name)));
    EXPECT_EQ(r.frame.rank(), 0) << name;
    EXPECT_EQ(r.frame.chamber_count(), 1) << name;
    EXPECT_EQ(r.subgroup.order(), 1) << name;
  }
}

TEST(ThickFrame, DigonInC2) {
  const auto cat = roundtrip_catalog();
  const auto& inst = cat[2];
  const auto s = suspend(inst.building, inst.embedding);
  EXPECT_EQ(s.chamber_count(), 18);
  const FrameResult r = thick_frame(s);
  EXPECT_EQ(class_sizes(r.classes), (std::map<int, int>{{2, 9}}));
  EXPECT_EQ(r.subgroup.matrix, parse_coxeter_type("A1xA1"));
  EXPECT_TRUE(isomorphic(r.frame, inst.building));
  EXPECT_TRUE(embeddings_conjugate(r.subgroup, inst.embedding));
  std::set<int> images(r.apartment_map.begin(), r.apartment_map.end());
  EXPECT_EQ(images.size(), s.apartments().size());
  EXPECT_EQ(r.frame.apartments().size(), s.apartments().size());
}

TEST(Suspend, PointInA1xA1) {
  const auto a1a1 = build_system("A1xA1");
  const auto s = suspend(rank_one_building(3), make_embedding(a1a1, std::vector<int>{a1a1->generator(0)}));
  EXPECT_EQ(s.chamber_count(), 6);
  int thin = 0, thick3 = 0;
  for (int t = 0; t < 2; ++t)
    for (const auto& p : s.panels(t)) {
      thin += p.size() == 2;
      thick3 += p.size() == 3;
    }
  EXPECT_EQ(thin, 3);
  EXPECT_EQ(thick3, 2);
  EXPECT_TRUE(isomorphic(s, join(rank_one_building(3), rank_one_building(2))));
}

TEST(Suspend, Counts) {
  for (const auto& inst : roundtrip_catalog()) {
    const auto s = suspend(inst.building, inst.embedding);
    EXPECT_EQ(static_cast<long>(s.chamber_count()),
              static_cast<long>(inst.building.chamber_count()) * inst.embedding.ambient->order() / inst.embedding.order())
        << inst.name;
    EXPECT_EQ(s.chamber_count(), inst.expected_chambers) << inst.name;
    EXPECT_TRUE(validate_building(s).valid) << inst.name;
  }
}

TEST(Suspend, Errors) {
  const auto c2 = build_system("C2");
  const auto short_a1 = make_embedding(c2, std::vector<int>{c2->generator(0)});
  EXPECT_EQ(code_of([&] { suspend(join(rank_one_building(3), rank_one_building(3)), short_a1); }),
            ErrorCode::TypeMismatch);
  EXPECT_EQ(code_of([&] { suspend(coxeter_complex(build_system("A1")), short_a1); }), ErrorCode::NotThick);
}

TEST(Roundtrip, CatalogPasses) {
  for (const auto& inst : roundtrip_catalog()) {
    const RoundtripReport r = verify_roundtrip(inst.building, inst.embedding);
    EXPECT_TRUE(r.passed()) << inst.name;
    EXPECT_TRUE(r.suspension_valid && r.frame_isomorphic && r.subgroup_conjugate && r.apartments_bijective) << inst.name;
  }
}

TEST(Roundtrip, IdentityEmbedding) {
  const auto digon = join(rank_one_building(3), rank_one_building(3));
  const auto& sys = digon.type();
  const auto id = make_embedding(sys, std::vector<int>{sys->generator(0), sys->generator(1)});
  EXPECT_TRUE(isomorphic(suspend(digon, id), digon));
  EXPECT_TRUE(verify_roundtrip(digon, id).passed());
}

TEST(Roundtrip, ConjugateEmbeddingsGiveIsomorphicSuspensions) {
  const auto c2 = build_system("C2");
  const int diag = c2->generator(0);
  const int other = c2->conjugate(c2->generator(1), diag);
  const auto a = suspend(rank_one_building(3), make_embedding(c2, std::vector<int>{diag}));
  const auto b = suspend(rank_one_building(3), make_embedding(c2, std::vector<int>{other}));
  EXPECT_TRUE(isomorphic(a, b));
}

TEST(Roundtrip, LongAndShortPairsRecorded) {
  const auto c2 = build_system("C2");
  const int diag = c2->generator(0), axis = c2->generator(1);
  const auto digon = join(rank_one_building(3), rank_one_building(3));
  const auto lng = suspend(digon, make_embedding(c2, std::vector<int>{axis, c2->conjugate(diag, axis)}));
  const auto shrt = suspend(digon, make_embedding(c2, std::vector<int>{diag, c2->conjugate(axis, diag)}));
  EXPECT_TRUE(validate_building(lng).valid);
  EXPECT_TRUE(validate_building(shrt).valid);
  ::testing::Test::RecordProperty("long_short_suspensions_isomorphic", isomorphic(lng, shrt) ? "yes" : "no");
}

TEST(FrameProperties, IdempotentConvexAndContained) {
  for (const auto& inst : roundtrip_catalog()) {
    const auto s = suspend(inst.building, inst.embedding);
    const FrameResult r = thick_frame(s);
    EXPECT_TRUE(isomorphic(thick_frame(r.frame).frame, r.frame)) << inst.name;
    EXPECT_EQ(thin_class_convexity_violations(s, r.classes), 0) << inst.name;
    for (const auto& ap : s.apartments()) {
      const std::set<int> members(ap.chamber_of.begin(), ap.chamber_of.end());
      for (int c : ap.chamber_of)
        for (int d : r.classes.classes[r.classes.class_of[c]]) EXPECT_TRUE(members.count(d)) << inst.name;
    }
    // class_map fibres are the thin classes.
    for (int c = 0; c < s.chamber_count(); ++c)
      EXPECT_EQ(r.class_map[c], r.class_map[r.classes.classes[r.classes.class_of[c]].front()]);
    EXPECT_TRUE(is_thick(r.frame)) << inst.name;
  }
}
