#ifndef FRAMEFORGE_RATIONAL_HPP
#define FRAMEFORGE_RATIONAL_HPP

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace frameforge {

using Rational = boost::rational<std::int64_t>;

}  // namespace frameforge

// Under C++20 rewritten comparisons, boost's templated equality between a
// rational and an integer recurses forever (seen with Boost 1.74). These
// exact matches take precedence over the templates.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace Eigen {

template <>
struct NumTraits<frameforge::Rational> : GenericNumTraits<frameforge::Rational> {
  using Real = frameforge::Rational;
  using NonInteger = frameforge::Rational;
  using Nested = frameforge::Rational;
  using Literal = frameforge::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace frameforge {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = Vector<Rational>;
using RMatrix = Matrix<Rational>;

/// Parses "3", "-1/2"; throws Error(Parse) on malformed input.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Same shape as the input: integer vectors become RVector, matrices RMatrix.
template <typename Derived>
Eigen::Matrix<Rational, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> to_rational(
    const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<std::int64_t>().unaryExpr([](std::int64_t x) { return Rational(x); });
}

inline bool is_zero(const RVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return false;
  }
  return true;
}

}  // namespace frameforge

#endif  // FRAMEFORGE_RATIONAL_HPP
