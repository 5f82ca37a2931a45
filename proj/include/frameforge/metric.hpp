#ifndef FRAMEFORGE_METRIC_HPP
#define FRAMEFORGE_METRIC_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/rational.hpp"

namespace frameforge {

enum class Norm { Euclidean, Maximum };

Norm parse_norm(std::string_view name);
std::string to_string(Norm norm);

double distance(Norm norm, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Point where the segment [x, y] meets {z : alpha·z = offset}, if the
/// hyperplane separates x from y (or contains an endpoint).
std::optional<Eigen::VectorXd> segment_crossing(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                                const Eigen::VectorXd& alpha, double offset);

/// Root directions ±e_i, e_i ± e_j (positive representatives): every wall
/// of the signed permutation groups used by the affine models is parallel
/// to one of them.
std::vector<Eigen::VectorXd> hyperplane_normals(int n);

struct MetricReport {
  int dimension = 0;
  Norm norm = Norm::Euclidean;
  long samples = 0;
  long hyperplane_checks = 0;
  long violations = 0;
  double max_error = 0.0;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool passed() const { return violations == 0; }
};

/// Samples x, y uniformly in [-5, 5]^n and checks d(x, y) = d(x, z) + d(z, y)
/// for z the crossing point with every separating wall α·z = c, c ∈ Z.
MetricReport metric_checks(int n, Norm norm, long sample_count, std::uint64_t seed);

/// FRAME_FORGE_SEED if set, otherwise a fixed default.
std::uint64_t metric_seed_from_env();

/// Two distinct points m with |x - m|_∞ = |m - y|_∞ = |x - y|_∞ / 2,
/// verified in exact arithmetic.
struct MidpointCertificate {
  RVector x, y, first, second;
  bool verified = false;
};

MidpointCertificate max_norm_midpoints();

}  // namespace frameforge

#endif  // FRAMEFORGE_METRIC_HPP
