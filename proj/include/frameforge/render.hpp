#ifndef FRAMEFORGE_RENDER_HPP
#define FRAMEFORGE_RENDER_HPP

#include <string>
#include <vector>

#include "frameforge/coxeter.hpp"

namespace frameforge {

enum class Projection { Disk2d, Stereographic3d };

struct RenderSpec {
  CoxeterSystemPtr ambient;
  std::vector<int> subgroup_roots;  // generate the emphasized reflection subgroup
};

struct RenderSummary {
  std::string svg;
  Projection projection = Projection::Disk2d;
  int walls = 0;
  int thick_walls = 0;
};

/// Walls of the subgroup are drawn as `wall thick`, the others as
/// `wall thin`. Output depends only on the spec. Throws RankUnsupported
/// unless the rank is 2 or 3.
RenderSummary render_arrangement(const RenderSpec& spec);

}  // namespace frameforge

#endif  // FRAMEFORGE_RENDER_HPP
