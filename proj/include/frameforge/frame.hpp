#ifndef FRAMEFORGE_FRAME_HPP
#define FRAMEFORGE_FRAME_HPP

#include <string>
#include <vector>

#include "frameforge/chamber.hpp"
#include "frameforge/coxeter.hpp"
#include "frameforge/isomorphism.hpp"

namespace frameforge {

/// Chambers joined by galleries that cross only thin panels.
struct ThinClasses {
  std::vector<int> class_of;               // chamber -> class id
  std::vector<std::vector<int>> classes;   // ordered by smallest member
};

ThinClasses thin_classes(const ChamberComplex& cx);

/// The thick frame of a building together with the data relating it to the
/// input. Frame generator j corresponds to subgroup.canonical_generators[j].
struct FrameResult {
  ChamberComplex frame;
  std::vector<int> class_map;      // input chamber -> frame chamber
  ReflectionSubgroup subgroup;     // the reduced Weyl group inside W
  std::vector<int> apartment_map;  // input apartment -> frame apartment
  ThinClasses classes;
};

/// Scharlau reduction. Frame panel types are assigned in apartment 0 and
/// transported through overlapping apartments; any disagreement throws
/// InconsistentTyping. A building without thick walls reduces to the
/// rank-0 complex.
FrameResult thick_frame(const ChamberComplex& cx);

/// Subdivided suspension of a thick building of the subgroup's type by the
/// walls of the ambient group. `embedding.embedding[j]` is the image of the
/// generator j of `frame_building`'s type.
ChamberComplex suspend(const ChamberComplex& frame_building, const ReflectionSubgroup& embedding);

struct RoundtripReport {
  bool suspension_valid = false;
  bool frame_isomorphic = false;
  bool subgroup_conjugate = false;
  bool apartments_bijective = false;
  bool counts_match = false;
  int suspension_chambers = 0;
  int frame_chambers = 0;
  std::vector<std::string> notes;

  bool passed() const {
    return suspension_valid && frame_isomorphic && subgroup_conjugate && apartments_bijective && counts_match;
  }
};

RoundtripReport verify_roundtrip(const ChamberComplex& frame_building, const ReflectionSubgroup& embedding);

/// Every chamber lying on a minimal gallery between two members of a thin
/// class belongs to that class. Returns the number of violations.
long thin_class_convexity_violations(const ChamberComplex& cx, const ThinClasses& classes);

}  // namespace frameforge

#endif  // FRAMEFORGE_FRAME_HPP
