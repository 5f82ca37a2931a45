#include "frameforge/verify.hpp"

#include <algorithm>
#include <sstream>

#include "frameforge/catalog.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/frame.hpp"

namespace frameforge {

namespace {

std::string counts(long bad, long total) {
  std::ostringstream os;
  os << bad << " violations in " << total << " checks";
  return os.str();
}

void add(SuiteReport& report, std::string name, bool passed, std::string detail) {
  report.checks.push_back({std::move(name), passed, std::move(detail)});
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
  return {{"suite", suite}, {"status", passed() ? "pass" : "fail"}, {"checks", std::move(checks_json)}};
}

LemmaCounts lemma_counts(const ChamberComplex& cx) {
  const CoxeterSystem& sys = cx.system();
  LemmaCounts out;
  for (int a = 0; a < static_cast<int>(cx.apartments().size()); ++a) {
    const auto& chamber_of = cx.apartments()[a].chamber_of;
    for (int r : sys.reflections()) {
      ++out.walls;
      Thickness t;
      try {
        t = wall_thickness(cx, a, r);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MixedWall) throw;
        ++out.mixed_walls;
        continue;
      }
      if (!t.is_thick()) continue;
      for (int side : {1, -1}) {
        const std::vector<int> image = fold(cx, a, r, side);
        ++out.folds;
        for (int c : chamber_of) {
          for (int s = 0; s < cx.rank(); ++s) {
            const bool before = panel_thickness(cx, s, cx.panel_of(s, c)).is_thick();
            const bool after = panel_thickness(cx, s, cx.panel_of(s, image[c])).is_thick();
            if (before != after) ++out.fold_violations;
          }
        }
      }
    }
  }
  return out;
}

SuiteReport verify_scharlau() {
  SuiteReport report;
  report.suite = "scharlau";
  for (const CatalogInstance& inst : roundtrip_catalog()) {
    const RoundtripReport rt = verify_roundtrip(inst.building, inst.embedding);
    std::ostringstream detail;
    detail << rt.suspension_chambers << " chambers (expected " << inst.expected_chambers << "), frame "
           << rt.frame_chambers << " chambers";
    for (const auto& note : rt.notes) detail << "; " << note;
    add(report, "roundtrip " + inst.name, rt.passed() && rt.suspension_chambers == inst.expected_chambers,
        detail.str());

    const ChamberComplex suspension = suspend(inst.building, inst.embedding);
    const LemmaCounts lc = lemma_counts(suspension);
    add(report, "wall constancy " + inst.name, lc.mixed_walls == 0, counts(lc.mixed_walls, lc.walls));
    add(report, "folding " + inst.name, lc.fold_violations == 0 && lc.folds > 0,
        counts(lc.fold_violations, lc.folds) + " foldings");
    if (suspension.chamber_count() <= 500) {
      const long bad = thin_class_convexity_violations(suspension, thin_classes(suspension));
      add(report, "convexity " + inst.name, bad == 0, counts(bad, suspension.chamber_count()));
    }
  }
  return report;
}

SuiteReport verify_affine(const AffineModel& model) {
  SuiteReport report;
  report.suite = "affine";
  const BoundaryBuilding boundary = boundary_building(model);
  const ValidationReport valid = validate_building(boundary.complex);
  add(report, "boundary is a building", valid.valid,
      std::to_string(boundary.complex.chamber_count()) + " chambers" +
          (valid.valid ? std::string() : "; " + valid.violations.front()));

  const LemmaCounts lc = lemma_counts(boundary.complex);
  add(report, "boundary wall constancy", lc.mixed_walls == 0, counts(lc.mixed_walls, lc.walls));

  long checked = 0, disagreements = 0;
  const int limit = std::min<int>(static_cast<int>(boundary.witness.size()), 24);
  for (int i = 0; i < limit; ++i) {
    for (std::size_t j = 0; j < boundary.witness.size(); j += std::max<std::size_t>(1, boundary.witness.size() / 24)) {
      ++checked;
      if (parallel(model, boundary.witness[i], boundary.witness[j]) !=
          parallel_oracle(model, boundary.witness[i], boundary.witness[j]))
        ++disagreements;
    }
  }
  add(report, "parallelism agrees with oracle", disagreements == 0, counts(disagreements, checked));

  if (model.presented) {
    const AffineReduction red = reduce_affine(model);
    add(report, "frame matches factor boundary", red.factor_boundary_matches_frame,
        "k = " + std::to_string(red.k) + ", frame " + std::to_string(red.frame.frame.chamber_count()) + " chambers");
    if (red.reextension_matches)
      add(report, "re-extension boundary isomorphic", *red.reextension_matches, "reduced T is invariant");
  }
  return report;
}

SuiteReport verify_axioms(const AffineModel& model) {
  SuiteReport report;
  report.suite = "axioms";
  for (const AxiomResult& r : check_axioms(model).results) {
    std::string detail = counts(r.violations, r.checked);
    if (!r.examples.empty()) detail += "; e.g. " + r.examples.front();
    if (!r.note.empty()) detail += "; " + r.note;
    add(report, r.name, r.passed, detail);
  }
  return report;
}

SuiteReport verify_metric(int dimension, Norm norm, long samples, std::uint64_t seed) {
  SuiteReport report;
  report.suite = "metric";
  const MetricReport m = metric_checks(dimension, norm, samples, seed);
  std::ostringstream detail;
  detail << counts(m.violations, m.hyperplane_checks) << ", max error " << m.max_error << ", seed " << m.seed;
  add(report, "wall additivity " + to_string(norm) + " n=" + std::to_string(dimension), m.passed(), detail.str());
  if (norm == Norm::Maximum) {
    const MidpointCertificate c = max_norm_midpoints();
    add(report, "two midpoints", c.verified, "(0,0),(2,1) with midpoints (1,1),(1,0)");
  }
  return report;
}

}  // namespace frameforge
