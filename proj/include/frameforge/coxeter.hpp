#ifndef FRAMEFORGE_COXETER_HPP
#define FRAMEFORGE_COXETER_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/errors.hpp"

namespace frameforge {

/// Symmetric integer matrix with unit diagonal and off-diagonal entries >= 2;
/// an entry of 0 encodes infinity.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(Eigen::MatrixXi entries);

  int rank() const { return static_cast<int>(entries_.rows()); }
  int operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXi& entries() const { return entries_; }
  bool has_infinite_entry() const;

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXi entries_;
};

/// Block-diagonal sum; generators of `b` are numbered after those of `a`.
CoxeterMatrix direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b);

/// Parses "A1xA1", "C2", "H3", "G2", "I2(8)", ... (factors joined by 'x').
CoxeterMatrix parse_coxeter_type(std::string_view name);

/// B(e_i, e_j) = -cos(pi / m_ij); -1 for infinite entries.
Eigen::MatrixXd bilinear_form(const CoxeterMatrix& matrix);

inline constexpr std::int64_t kDefaultElementCap = 1'000'000;
inline constexpr std::int64_t kDefaultRootCap = 10'000;

/// A finite Coxeter group realized as a reflection group on V with basis
/// e_1..e_n. Roots are computed numerically once; afterwards every group
/// operation is exact via permutations of root indices.
class CoxeterSystem {
 public:
  const CoxeterMatrix& matrix() const { return matrix_; }
  const Eigen::MatrixXd& form() const { return form_; }
  int rank() const { return matrix_.rank(); }

  /// Roots as columns, coordinates in the simple-root basis. The first
  /// `rank()` columns are the simple roots; positives precede negatives and
  /// root `i + positive_count()` is the negative of root `i`.
  const Eigen::MatrixXd& roots() const { return roots_; }
  int root_count() const { return static_cast<int>(roots_.cols()); }
  int positive_count() const { return positive_count_; }
  bool is_positive(int root) const { return root < positive_count_; }
  int negate(int root) const {
    return root < positive_count_ ? root + positive_count_ : root - positive_count_;
  }

  int order() const { return static_cast<int>(lengths_.size()); }
  static constexpr int identity() { return 0; }
  int generator(int s) const { return generator_elements_[s]; }
  int length(int w) const { return lengths_[w]; }
  const std::vector<int>& word(int w) const { return words_[w]; }
  int longest() const { return longest_; }

  /// Image of root `r` under element `w`.
  int apply(int w, int r) const { return perms_[static_cast<std::size_t>(w) * root_count() + r]; }
  std::span<const int> permutation(int w) const {
    return {perms_.data() + static_cast<std::size_t>(w) * root_count(),
            static_cast<std::size_t>(root_count())};
  }

  int right_multiply(int w, int s) const { return right_mul_[static_cast<std::size_t>(w) * rank() + s]; }
  int multiply(int a, int b) const;
  int inverse(int w) const { return inverses_[w]; }
  /// w x w^{-1}
  int conjugate(int w, int x) const { return multiply(multiply(w, x), inverse(w)); }
  /// w s w^{-1} for a simple generator s, tabulated.
  int generator_conjugate(int w, int s) const {
    return gen_conj_[static_cast<std::size_t>(w) * rank() + s];
  }
  int element_of_word(std::span<const int> word) const;
  int element_order(int w) const;

  bool is_reflection(int w) const { return w >= 0 && w < order() && reflection_root_[w] >= 0; }
  /// Positive root whose hyperplane is fixed by the reflection `w`.
  int reflection_root(int w) const;
  /// Reflection along root `r` (either sign).
  int reflection_of_root(int r) const { return root_reflection_[is_positive(r) ? r : negate(r)]; }
  /// All reflections, ordered by positive root index.
  const std::vector<int>& reflections() const { return reflections_; }

  /// Matrix of w acting on V in the simple-root basis.
  Eigen::MatrixXd action_matrix(int w) const;
  /// Interior point of the fundamental chamber: B(e_i, x0) = 1 for all i.
  const Eigen::VectorXd& interior_point() const { return x0_; }

  friend std::shared_ptr<const CoxeterSystem> build_system(const CoxeterMatrix&, std::int64_t, std::int64_t);

 private:
  CoxeterSystem() = default;
  int lookup(std::span<const int> simple_images) const;

  CoxeterMatrix matrix_;
  Eigen::MatrixXd form_;
  Eigen::MatrixXd roots_;
  int positive_count_ = 0;
  std::vector<int> perms_;
  std::vector<int> lengths_;
  std::vector<std::vector<int>> words_;
  std::vector<int> right_mul_;
  std::vector<int> inverses_;
  std::vector<int> gen_conj_;
  std::vector<int> generator_elements_;
  std::vector<int> reflection_root_;
  std::vector<int> root_reflection_;
  std::vector<int> reflections_;
  std::map<std::vector<int>, int> index_;
  Eigen::VectorXd x0_;
  int longest_ = 0;
};

using CoxeterSystemPtr = std::shared_ptr<const CoxeterSystem>;

/// Enumerates roots and elements by breadth-first closure. Throws
/// InvalidMatrix for infinite entries and CapExceeded when the group is not
/// finite within the caps.
CoxeterSystemPtr build_system(const CoxeterMatrix& matrix,
                              std::int64_t element_cap = kDefaultElementCap,
                              std::int64_t root_cap = kDefaultRootCap);

inline CoxeterSystemPtr build_system(std::string_view type_name) {
  return build_system(parse_coxeter_type(type_name));
}

/// A reflection subgroup of a finite Coxeter group, normalized to the simple
/// system bounding the subgroup chamber that contains the ambient
/// fundamental chamber.
struct ReflectionSubgroup {
  CoxeterSystemPtr ambient;
  std::vector<int> reflections;            // sorted ambient element indices
  std::vector<int> canonical_generators;   // sorted by root index
  CoxeterMatrix matrix;                    // in canonical generator order
  std::vector<int> embedding;              // image of abstract generator j
  std::vector<int> elements;               // sorted ambient element indices

  int rank() const { return static_cast<int>(canonical_generators.size()); }
  int order() const { return static_cast<int>(elements.size()); }
  bool contains_reflection(int r) const;
  bool contains(int w) const;
};

/// Closes `reflection_set` under self-conjugation and computes canonical
/// generators. The embedding defaults to the canonical generators.
ReflectionSubgroup reflection_subgroup(const CoxeterSystemPtr& sys, std::span<const int> reflection_set);

/// Subgroup generated by `generator_images`, keeping them as the embedding
/// of an abstract Coxeter system (generator j maps to generator_images[j]).
ReflectionSubgroup make_embedding(const CoxeterSystemPtr& sys, std::span<const int> generator_images);

/// Coxeter matrix of the abstract generators recorded in `sub.embedding`.
CoxeterMatrix embedding_matrix(const ReflectionSubgroup& sub);

struct Splitting {
  Eigen::MatrixXd bar_basis;  // columns: B-orthonormal basis of the subgroup span
  Eigen::MatrixXd u_basis;    // columns: B-orthonormal basis of the common fixed space
  int k = 0;                  // subgroup rank
};

Splitting geometric_splitting(const ReflectionSubgroup& sub);

/// True iff some ambient element conjugates one reflection set onto the other.
bool embeddings_conjugate(const ReflectionSubgroup& a, const ReflectionSubgroup& b);

/// Permutation of generator indices induced by -w0.
std::vector<int> opposition_involution(const CoxeterSystem& sys);

}  // namespace frameforge

#endif  // FRAMEFORGE_COXETER_HPP
