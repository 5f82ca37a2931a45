#include "frameforge/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Dense>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

const char* kStyle =
    "  <style>\n"
    "    .wall { fill: none; vector-effect: non-scaling-stroke; }\n"
    "    .thick { stroke: #cc0000; stroke-width: 3; }\n"
    "    .thin { stroke: #3366cc; stroke-width: 1; }\n"
    "    .frame { fill: none; stroke: #999999; stroke-width: 1; vector-effect: non-scaling-stroke; }\n"
    "  </style>\n";

struct Circle {
  Eigen::Vector2d center;
  double radius;
};

Circle circumcircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double d = 2 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const Eigen::Vector2d center((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d,
                               (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d);
  return {center, (a - center).norm()};
}

}  // namespace

RenderSummary render_arrangement(const RenderSpec& spec) {
  const CoxeterSystem& sys = *spec.ambient;
  const int n = sys.rank();
  if (n != 2 && n != 3) throw Error(ErrorCode::RankUnsupported, "rendering supports rank 2 and 3 only");

  std::vector<int> gens;
  for (int r : spec.subgroup_roots) {
    if (r < 0 || r >= sys.root_count()) throw Error(ErrorCode::Parse, "root id " + std::to_string(r) + " out of range");
    gens.push_back(sys.reflection_of_root(r));
  }
  const ReflectionSubgroup sub = reflection_subgroup(spec.ambient, gens);

  // Coordinates in which the invariant form is the standard inner product.
  const Eigen::MatrixXd lt = Eigen::LLT<Eigen::MatrixXd>(sys.form()).matrixL().transpose();

  RenderSummary out;
  out.projection = n == 2 ? Projection::Disk2d : Projection::Stereographic3d;
  std::ostringstream thin, thick;
  Eigen::Vector3d pole, e1, e2;
  if (n == 3) {
    pole = (lt * sys.interior_point()).normalized();
    e1 = pole.unitOrthogonal();
    e2 = pole.cross(e1);
  }
  auto project = [&](const Eigen::Vector3d& v) -> Eigen::Vector2d {
    return Eigen::Vector2d(v.dot(e1), v.dot(e2)) / (1.0 - v.dot(pole));
  };

  for (int r = 0; r < sys.positive_count(); ++r) {
    const bool bold = sub.contains_reflection(sys.reflection_of_root(r));
    std::ostringstream& os = bold ? thick : thin;
    const char* cls = bold ? "wall thick" : "wall thin";
    const Eigen::VectorXd normal = lt * sys.roots().col(r);
    if (n == 2) {
      const Eigen::Vector2d d = Eigen::Vector2d(-normal[1], normal[0]).normalized();
      os << "  <line class=\"" << cls << "\" x1=\"" << num(-d.x()) << "\" y1=\"" << num(d.y()) << "\" x2=\""
         << num(d.x()) << "\" y2=\"" << num(-d.y()) << "\"/>\n";
    } else {
      const Eigen::Vector3d nv = Eigen::Vector3d(normal).normalized();
      const Eigen::Vector3d u1 = (pole - pole.dot(nv) * nv).normalized();
      const Eigen::Vector3d u2 = nv.cross(u1);
      const Circle c = circumcircle(project(u1), project(-u1), project(u2));
      os << "  <circle class=\"" << cls << "\" cx=\"" << num(c.center.x()) << "\" cy=\"" << num(-c.center.y())
         << "\" r=\"" << num(c.radius) << "\"/>\n";
    }
    ++out.walls;
    if (bold) ++out.thick_walls;
  }

  const double half = n == 2 ? 1.1 : 4.0;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" << num(-half) << " "
      << num(-half) << " " << num(2 * half) << " " << num(2 * half) << "\">\n"
      << kStyle << "  <circle class=\"frame\" cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\"/>\n"
      << thin.str() << thick.str() << "</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace frameforge
