#include <gtest/gtest.h>

#include <string>

#include "frameforge/affine.hpp"
#include "frameforge/io.hpp"

using namespace frameforge;

namespace {

std::string failed_axioms(const AxiomReport& r) {
  std::string out;
  for (const auto& a : r.results)
    if (!a.passed) out += a.name;
  return out;
}

AffineModel fixture(const std::string& name) { return parse_model(read_file(std::string(FIXTURE_DIR) + "/" + name)); }

}  // namespace

TEST(Axioms, ReportNamesEveryAxiom) {
  const AxiomReport r = check_axioms(tree_product_model(3, 2, "C2"));
  std::string names;
  for (const auto& a : r.results) names += a.name;
  EXPECT_EQ(names, "(A1)(A2)(A3)(GG)(CO)(A4)");
  for (const auto& a : r.results) EXPECT_GT(a.checked, 0) << a.name;
  EXPECT_NO_THROW(r.at("(CO)"));
}

TEST(Axioms, ValidModelsPass) {
  EXPECT_EQ(failed_axioms(check_axioms(tree_product_model(3, 2, "C2"))), "");
  EXPECT_EQ(failed_axioms(check_axioms(tree_product_model(3, 3, "C2"))), "");
  EXPECT_EQ(failed_axioms(check_axioms(tree_product_model(4, 2, "A1xA1"))), "");
  EXPECT_EQ(failed_axioms(check_axioms(tree_model(3, 3))), "");
  EXPECT_EQ(failed_axioms(check_axioms(fixture("tree_product.json"))), "");
}

TEST(Axioms, ExtensionPasses) {
  const auto c2 = build_system("C2");
  const int first_axis = c2->conjugate(c2->generator(0), c2->generator(1));
  const AffineModel x = extend_affine(tree_model(3, 3), make_embedding(c2, std::vector<int>{first_axis}),
                                      TranslationGroup::integer_lattice(2));
  EXPECT_EQ(failed_axioms(check_axioms(x)), "");
}

TEST(Axioms, SabotageFixturesFailOnlyTheirTarget) {
  EXPECT_EQ(failed_axioms(check_axioms(fixture("sabotage_a1.json"))), "(A1)");
  EXPECT_EQ(failed_axioms(check_axioms(fixture("sabotage_a2.json"))), "(A2)");
  EXPECT_EQ(failed_axioms(check_axioms(fixture("sabotage_a3.json"))), "(A3)");
}

TEST(Axioms, LinesThroughOneVertexBreakA3) {
  AffineModel m = tree_product_model(3, 2, "C2");
  std::vector<Chart> kept;
  for (const auto& c : m.charts) {
    bool through_root = true;
    for (int i = 0; i < 2; ++i) through_root = through_root && m.factors[i].tree->on_line(c.lines[i], 0);
    if (through_root) kept.push_back(c);
  }
  ASSERT_LT(kept.size(), m.charts.size());
  m.charts = kept;
  const AxiomReport r = check_axioms(m);
  EXPECT_FALSE(r.at("(A3)").passed);
  EXPECT_FALSE(r.at("(A3)").examples.empty());
}

TEST(Axioms, FailuresCarryExamples) {
  const AxiomReport r = check_axioms(fixture("sabotage_a2.json"));
  const AxiomResult& a2 = r.at("(A2)");
  EXPECT_GT(a2.violations, 0);
  EXPECT_FALSE(a2.examples.empty());
}
