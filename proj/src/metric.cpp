#include "frameforge/metric.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

#include "frameforge/errors.hpp"

namespace frameforge {

Norm parse_norm(std::string_view name) {
  if (name == "euclidean") return Norm::Euclidean;
  if (name == "maximum" || name == "max") return Norm::Maximum;
  throw Error(ErrorCode::Parse, "unknown norm '" + std::string(name) + "'");
}

std::string to_string(Norm norm) { return norm == Norm::Euclidean ? "euclidean" : "maximum"; }

double distance(Norm norm, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return norm == Norm::Euclidean ? (x - y).norm() : (x - y).lpNorm<Eigen::Infinity>();
}

std::optional<Eigen::VectorXd> segment_crossing(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                                const Eigen::VectorXd& alpha, double offset) {
  const double ax = alpha.dot(x) - offset;
  const double ay = alpha.dot(y) - offset;
  if (ax * ay > 0) return std::nullopt;
  if (ax == ay) return ax == 0 ? std::optional<Eigen::VectorXd>(x) : std::nullopt;
  const double lambda = ax / (ax - ay);
  return Eigen::VectorXd(x + lambda * (y - x));
}

std::vector<Eigen::VectorXd> hyperplane_normals(int n) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n; ++i) out.push_back(Eigen::VectorXd::Unit(n, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back(Eigen::VectorXd::Unit(n, i) + Eigen::VectorXd::Unit(n, j));
      out.push_back(Eigen::VectorXd::Unit(n, i) - Eigen::VectorXd::Unit(n, j));
    }
  }
  return out;
}

MetricReport metric_checks(int n, Norm norm, long sample_count, std::uint64_t seed) {
  if (n < 1 || n > 3) throw Error(ErrorCode::RankUnsupported, "metric checks support dimensions 1 to 3");
  MetricReport report;
  report.dimension = n;
  report.norm = norm;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  const auto normals = hyperplane_normals(n);
  for (long s = 0; s < sample_count; ++s) {
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) x[i] = coord(rng);
    for (int i = 0; i < n; ++i) y[i] = coord(rng);
    ++report.samples;
    const double dxy = distance(norm, x, y);
    for (const auto& alpha : normals) {
      const double lo = std::min(alpha.dot(x), alpha.dot(y));
      const double hi = std::max(alpha.dot(x), alpha.dot(y));
      for (double c = std::ceil(lo); c <= hi; c += 1.0) {
        const auto z = segment_crossing(x, y, alpha, c);
        if (!z) continue;
        ++report.hyperplane_checks;
        const double err = std::abs(dxy - distance(norm, x, *z) - distance(norm, *z, y));
        report.max_error = std::max(report.max_error, err);
        if (err > report.tolerance) ++report.violations;
      }
    }
  }
  return report;
}

std::uint64_t metric_seed_from_env() {
  if (const char* s = std::getenv("FRAME_FORGE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return 20240611;
}

MidpointCertificate max_norm_midpoints() {
  auto vec = [](std::int64_t a, std::int64_t b) {
    RVector v(2);
    v << Rational(a), Rational(b);
    return v;
  };
  auto dist = [](const RVector& a, const RVector& b) {
    Rational d(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) d = std::max(d, boost::abs(Rational(a[i] - b[i])));
    return d;
  };
  MidpointCertificate c{vec(0, 0), vec(2, 1), vec(1, 1), vec(1, 0), false};
  const Rational half = dist(c.x, c.y) / 2;
  c.verified = c.first != c.second;
  for (const RVector* m : {&c.first, &c.second}) {
    c.verified = c.verified && dist(c.x, *m) == half && dist(*m, c.y) == half;
  }
  return c;
}

}  // namespace frameforge
