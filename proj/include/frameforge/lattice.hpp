#ifndef FRAMEFORGE_LATTICE_HPP
#define FRAMEFORGE_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "frameforge/rational.hpp"

namespace frameforge {

/// A translation subgroup T of Q^n: either the whole space or the group
/// generated by finitely many rational vectors. Membership is decided on an
/// integer echelon basis of the scaled generators.
class TranslationGroup {
 public:
  static TranslationGroup full_space(int dim);
  static TranslationGroup generated_by(int dim, std::vector<RVector> generators);
  /// The integer lattice Z^n.
  static TranslationGroup integer_lattice(int dim);

  int dimension() const { return dim_; }
  bool is_full_space() const { return full_; }
  /// Rank of the lattice; the dimension for the full space.
  int rank() const { return full_ ? dim_ : static_cast<int>(echelon_.size()); }
  /// Generators as supplied (standard basis for the full space).
  const std::vector<RVector>& generators() const { return generators_; }
  /// Echelon basis of the lattice.
  std::vector<RVector> basis() const;

  bool contains(const RVector& v) const;
  bool contains(const TranslationGroup& other) const;
  /// Whether other ⊕ {0} (padded with trailing zeros) lies in this group.
  bool contains_padded(const TranslationGroup& other) const;
  /// Checks M t ∈ T for every generator t and every matrix M.
  bool invariant_under(const std::vector<Eigen::MatrixXi>& matrices) const;
  /// T ∩ (Q^m ⊕ {0}), returned as a subgroup of Q^m.
  TranslationGroup leading_intersection(int m) const;

 private:
  TranslationGroup() = default;

  int dim_ = 0;
  bool full_ = false;
  std::int64_t denominator_ = 1;
  std::vector<RVector> generators_;
  std::vector<std::vector<std::int64_t>> echelon_;  // rows, pivots strictly increasing
  std::vector<int> pivots_;
};

/// Integer row echelon form (Hermite style) with columns visited in
/// `column_order`. Zero rows are dropped.
std::vector<std::vector<std::int64_t>> integer_echelon(std::vector<std::vector<std::int64_t>> rows,
                                                       const std::vector<int>& column_order);

}  // namespace frameforge

#endif  // FRAMEFORGE_LATTICE_HPP
