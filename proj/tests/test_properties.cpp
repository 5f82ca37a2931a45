// Exhaustive checks of structural invariants over small instances.
#include <gtest/gtest.h>

#include <algorithm>
#include <queue>
#include <set>

#include "frameforge/affine.hpp"
#include "frameforge/catalog.hpp"
#include "frameforge/chamber.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/verify.hpp"

using namespace frameforge;

namespace {

const std::vector<std::string> kTypes = {"A1", "A2", "A1xA1", "C2", "G2", "A3", "C3", "H3", "A1xC2"};

// Every reflection subgroup of sys, as sorted reflection sets.
std::vector<ReflectionSubgroup> all_subgroups(const CoxeterSystemPtr& sys) {
  std::set<std::vector<int>> seen;
  std::vector<ReflectionSubgroup> out;
  const auto& refl = sys->reflections();
  const int n = static_cast<int>(refl.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> set;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) set.push_back(refl[i]);
    auto sub = reflection_subgroup(sys, set);
    if (seen.insert(sub.reflections).second) out.push_back(std::move(sub));
  }
  return out;
}

std::vector<ChamberComplex> generated_buildings() {
  std::vector<ChamberComplex> out;
  for (const auto& t : kTypes) out.push_back(coxeter_complex(build_system(t)));
  out.push_back(join(rank_one_building(3), rank_one_building(4)));
  for (const auto& inst : roundtrip_catalog()) out.push_back(suspend(inst.building, inst.embedding));
  out.push_back(boundary_building(tree_product_model(3, 2, "C2")).complex);
  out.push_back(boundary_building(tree_product_model(3, 2, "A1xA1")).complex);
  return out;
}

}  // namespace

TEST(CoxeterProperties, RootSystemStructure) {
  for (const auto& t : kTypes) {
    const auto sys = build_system(t);
    EXPECT_EQ(static_cast<int>(sys->reflections().size()), sys->positive_count()) << t;
    EXPECT_EQ(sys->root_count(), 2 * sys->positive_count()) << t;
    for (int s = 0; s < sys->rank(); ++s) {
      const int g = sys->generator(s);
      EXPECT_EQ(sys->multiply(g, g), CoxeterSystem::identity()) << t;
      std::set<int> image;
      for (int r = 0; r < sys->root_count(); ++r) image.insert(sys->apply(g, r));
      EXPECT_EQ(static_cast<int>(image.size()), sys->root_count()) << t;
    }
    for (int r = 0; r < sys->root_count(); ++r)
      EXPECT_LT((sys->roots().col(r) + sys->roots().col(sys->negate(r))).norm(), 1e-9) << t;
    for (int r = 0; r < sys->positive_count(); ++r) EXPECT_FALSE(sys->is_positive(sys->apply(sys->longest(), r)));
  }
}

TEST(CoxeterProperties, OrderIndependentOfGeneratorOrder) {
  for (const auto& t : kTypes) {
    const CoxeterMatrix m = parse_coxeter_type(t);
    const int n = m.rank();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    const int order = build_system(m)->order();
    do {
      Eigen::MatrixXi p(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = m(perm[i], perm[j]);
      EXPECT_EQ(build_system(CoxeterMatrix(p))->order(), order) << t;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(CoxeterProperties, OppositionIsInvolutive) {
  for (const auto& t : kTypes) {
    const auto op = opposition_involution(*build_system(t));
    for (int s = 0; s < static_cast<int>(op.size()); ++s) EXPECT_EQ(op[op[s]], s) << t;
  }
}

TEST(CoxeterProperties, CanonicalGeneratorsGenerateTheSubgroup) {
  for (const char* t : {"C2", "G2", "A3", "A1xC2"}) {
    const auto sys = build_system(t);
    for (const auto& sub : all_subgroups(sys)) {
      const auto regenerated = reflection_subgroup(sys, sub.canonical_generators);
      EXPECT_EQ(regenerated.reflections, sub.reflections) << t;
      // Closed under self-conjugation.
      for (int a : sub.reflections)
        for (int b : sub.reflections) EXPECT_TRUE(sub.contains_reflection(sys->conjugate(a, b))) << t;
      // Coxeter matrix matches pairwise product orders.
      for (int i = 0; i < sub.rank(); ++i)
        for (int j = 0; j < sub.rank(); ++j)
          EXPECT_EQ(sys->element_order(sys->multiply(sub.canonical_generators[i], sub.canonical_generators[j])),
                    i == j ? 1 : sub.matrix(i, j))
              << t;
    }
  }
}

TEST(CoxeterProperties, SplittingReconstructsHyperplanes) {
  for (const char* t : {"C2", "G2", "A3", "C3", "H3"}) {
    const auto sys = build_system(t);
    const Eigen::MatrixXd& b = sys->form();
    for (const auto& sub : all_subgroups(sys)) {
      if (sub.rank() > 3) continue;
      const Splitting sp = geometric_splitting(sub);
      EXPECT_EQ(sp.bar_basis.cols() + sp.u_basis.cols(), sys->rank()) << t;
      EXPECT_EQ(sp.u_basis.cols(), sys->rank() - sub.rank()) << t;
      EXPECT_LT((sp.bar_basis.transpose() * b * sp.u_basis).norm(), 1e-9) << t;
      for (int r : sub.reflections) {
        const Eigen::VectorXd alpha = sys->roots().col(sys->reflection_root(r));
        // U lies in every subgroup hyperplane; the root lies in V̄.
        EXPECT_LT((alpha.transpose() * b * sp.u_basis).norm(), 1e-9) << t;
        const Eigen::VectorXd coeff = sp.bar_basis.transpose() * b * alpha;
        EXPECT_LT((sp.bar_basis * coeff - alpha).norm(), 1e-9) << t;
      }
    }
  }
}

TEST(CoxeterProperties, ConjugacyIsAnEquivalence) {
  for (const char* t : {"C2", "G2"}) {
    const auto sys = build_system(t);
    const auto subs = all_subgroups(sys);
    const int n = static_cast<int>(subs.size());
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rel[i][j] = embeddings_conjugate(subs[i], subs[j]);
    for (int i = 0; i < n; ++i) {
      EXPECT_TRUE(rel[i][i]);
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(rel[i][j], rel[j][i]);
        for (int k = 0; k < n; ++k)
          if (rel[i][j] && rel[j][k]) {
            EXPECT_TRUE(rel[i][k]);
          }
      }
    }
  }
}

TEST(ChamberProperties, GeneratedBuildingsAreValid) {
  for (const auto& cx : generated_buildings()) {
    const auto report = validate_building(cx);
    EXPECT_TRUE(report.valid) << (report.violations.empty() ? "" : report.violations.front());
    const auto& sys = cx.system();
    for (const auto& ap : cx.apartments())
      for (int w = 0; w < sys.order(); ++w)
        for (int s = 0; s < sys.rank(); ++s)
          EXPECT_EQ(cx.panel_of(s, ap.chamber_of[w]), cx.panel_of(s, ap.chamber_of[sys.right_multiply(w, s)]));
  }
}

TEST(ChamberProperties, WallsAreConstantAndFoldingsPreserveThickness) {
  for (const auto& cx : generated_buildings()) {
    const LemmaCounts lc = lemma_counts(cx);
    EXPECT_EQ(lc.mixed_walls, 0);
    EXPECT_EQ(lc.fold_violations, 0);
  }
}

TEST(FrameProperties, ThinClassesAreThinGalleryComponents) {
  for (const auto& cx : generated_buildings()) {
    const ThinClasses tc = thin_classes(cx);
    // Components of the graph of thin adjacencies, by breadth-first search.
    std::vector<int> comp(cx.chamber_count(), -1);
    int count = 0;
    for (int start = 0; start < cx.chamber_count(); ++start) {
      if (comp[start] >= 0) continue;
      std::queue<int> q;
      q.push(start);
      comp[start] = count;
      while (!q.empty()) {
        const int c = q.front();
        q.pop();
        for (int s = 0; s < cx.rank(); ++s) {
          const auto& p = cx.panel(s, cx.panel_of(s, c));
          if (p.size() != 2) continue;
          for (int d : p)
            if (comp[d] < 0) {
              comp[d] = count;
              q.push(d);
            }
        }
      }
      ++count;
    }
    ASSERT_EQ(static_cast<int>(tc.classes.size()), count);
    for (int a = 0; a < cx.chamber_count(); ++a)
      for (int b = a + 1; b < cx.chamber_count(); b += 7)
        EXPECT_EQ(tc.class_of[a] == tc.class_of[b], comp[a] == comp[b]);
  }
}

TEST(FrameProperties, FrameIsThickOrTrivialAndFixedOnThickInput) {
  for (const auto& cx : generated_buildings()) {
    const FrameResult r = thick_frame(cx);
    EXPECT_TRUE(r.frame.rank() == 0 || is_thick(r.frame));
    std::set<int> hit(r.class_map.begin(), r.class_map.end());
    EXPECT_EQ(static_cast<int>(hit.size()), r.frame.chamber_count());
    std::set<int> aps(r.apartment_map.begin(), r.apartment_map.end());
    EXPECT_EQ(aps.size(), cx.apartments().size());
    if (is_thick(cx)) {
      EXPECT_EQ(r.frame.chamber_count(), cx.chamber_count());
    }
  }
}
