#ifndef FRAMEFORGE_VERIFY_HPP
#define FRAMEFORGE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frameforge/affine.hpp"
#include "frameforge/chamber.hpp"
#include "frameforge/metric.hpp"

namespace frameforge {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

struct LemmaCounts {
  long walls = 0;
  long mixed_walls = 0;
  long folds = 0;
  long fold_violations = 0;
};

/// Wall constancy over every wall of every apartment, and thickness
/// preservation under every folding along a thick wall.
LemmaCounts lemma_counts(const ChamberComplex& cx);

/// Roundtrip, lemma and convexity checks over the bundled catalog.
SuiteReport verify_scharlau();
/// Boundary, frame, reduction and parallelism checks for one model.
SuiteReport verify_affine(const AffineModel& model);
SuiteReport verify_axioms(const AffineModel& model);
SuiteReport verify_metric(int dimension, Norm norm, long samples, std::uint64_t seed);

}  // namespace frameforge

#endif  // FRAMEFORGE_VERIFY_HPP
