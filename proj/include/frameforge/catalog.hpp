#ifndef FRAMEFORGE_CATALOG_HPP
#define FRAMEFORGE_CATALOG_HPP

#include <string>
#include <vector>

#include "frameforge/chamber.hpp"
#include "frameforge/coxeter.hpp"

namespace frameforge {

/// A thick building of the subgroup's type together with an embedding of
/// that type into an ambient group.
struct CatalogInstance {
  std::string name;
  ChamberComplex building;
  ReflectionSubgroup embedding;
  int expected_chambers = 0;  // chambers of the suspension
};

/// 3-point A1 into A1xA1, 3-point A1 into C2 (short root), 3x3 digon into
/// C2 (axis roots), 3x3x3 join into H3.
std::vector<CatalogInstance> roundtrip_catalog();

/// First triple of pairwise commuting reflections, by element index.
std::vector<int> commuting_reflection_triple(const CoxeterSystem& sys);

}  // namespace frameforge

#endif  // FRAMEFORGE_CATALOG_HPP
