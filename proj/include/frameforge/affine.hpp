#ifndef FRAMEFORGE_AFFINE_HPP
#define FRAMEFORGE_AFFINE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/chamber.hpp"
#include "frameforge/coxeter.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/lattice.hpp"
#include "frameforge/rational.hpp"

namespace frameforge {

/// Faithful action of a finite Coxeter group on Q^n by signed permutation
/// matrices, with a fixed regular direction x0 spanning the fundamental
/// chamber. The longest element must act as -id.
class LinearRealization {
 public:
  /// Each A1 component negates its own coordinate. A C2 component acts on
  /// two coordinates: its lower generator swaps them (diagonal wall), the
  /// other negates the second one (axis wall); x0 = (2, 1). Other
  /// components throw UnsupportedModel.
  static LinearRealization standard(const CoxeterSystemPtr& sys);
  static LinearRealization from_generators(const CoxeterSystemPtr& sys, int dimension,
                                           std::vector<Eigen::MatrixXi> generators, Eigen::VectorXi x0);

  const CoxeterSystemPtr& system() const { return sys_; }
  int dimension() const { return dim_; }
  const Eigen::MatrixXi& matrix(int w) const { return matrices_[w]; }
  /// Element with the given matrix, or -1.
  int element_of(const Eigen::MatrixXi& m) const;
  const Eigen::VectorXi& interior_direction() const { return x0_; }
  std::vector<Eigen::MatrixXi> generator_matrices() const;

 private:
  CoxeterSystemPtr sys_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXi> matrices_;
  std::map<std::vector<int>, int> index_;
  Eigen::VectorXi x0_;
};

/// x -> M_w x + t
struct AffineElement {
  int linear = 0;
  RVector translation;

  friend bool operator==(const AffineElement& a, const AffineElement& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
};

/// W0 ⋉ T with T a W0-invariant translation group.
class AffineWeylGroup {
 public:
  AffineWeylGroup(LinearRealization linear, TranslationGroup translations);

  const LinearRealization& linear() const { return linear_; }
  const TranslationGroup& translations() const { return translations_; }
  int dimension() const { return linear_.dimension(); }

  AffineElement identity() const;
  AffineElement compose(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  RVector apply(const AffineElement& g, const RVector& x) const;
  /// Generators: simple reflections of W0 and translations by the generators of T.
  std::vector<AffineElement> generators() const;
  bool contains(const Eigen::MatrixXi& linear, const RVector& translation) const;

 private:
  LinearRealization linear_;
  TranslationGroup translations_;
};

/// Certifies W0-invariance of T; throws NotInvariant.
AffineWeylGroup affine_group(LinearRealization linear, TranslationGroup translations);

/// Truncated regular tree. Vertex 0 is the root with `valency` children,
/// every other internal vertex has valency - 1 children, and the leaves (at
/// distance `depth` from the root) stand in for the ends. Vertices are
/// numbered breadth-first.
class Tree {
 public:
  Tree(int valency, int depth);

  int valency() const { return valency_; }
  int depth() const { return depth_; }
  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int level(int v) const { return level_[v]; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& neighbours(int v) const { return adjacency_[v]; }
  const std::vector<int>& leaves() const { return leaves_; }
  bool is_leaf(int v) const { return level_[v] == depth_; }
  std::vector<int> path(int a, int b) const;
  int distance(int a, int b) const;

 private:
  int valency_;
  int depth_;
  std::vector<int> parent_;
  std::vector<int> level_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> leaves_;
};

/// Geodesic between two leaves a < b, parametrized by signed distance from
/// its apex (the vertex nearest the root), increasing toward b.
struct TreeLine {
  int from = 0;
  int to = 0;
  std::vector<int> path;
  int apex = 0;  // index into path
};

/// A tree with all its lines and the parameter of every vertex on every line.
class TreeGeometry {
 public:
  TreeGeometry(int valency, int depth);

  const Tree& tree() const { return tree_; }
  int line_count() const { return static_cast<int>(lines_.size()); }
  const TreeLine& line(int i) const { return lines_[i]; }
  int line_index(int a, int b) const;
  bool on_line(int line, int v) const { return param(line, v) != kOff; }
  /// Parameter of v on the line, kOff if v is not on it.
  int param(int line, int v) const { return params_[static_cast<std::size_t>(line) * tree_.vertex_count() + v]; }
  /// Vertex at an integer parameter, -1 outside the truncation.
  int vertex_at(int line, int t) const;
  /// Leaf reached from the line moving in direction sign.
  int end(int line, int sign) const { return sign > 0 ? lines_[line].to : lines_[line].from; }

  static constexpr int kOff = -1'000'000;

 private:
  Tree tree_;
  std::vector<TreeLine> lines_;
  std::vector<int> params_;
};

/// A factor of a product model: a truncated tree or a flat line.
struct Factor {
  std::shared_ptr<const TreeGeometry> tree;
  bool is_flat() const { return !tree; }
};

/// Chart (L_1 × ... × L_n) ∘ g. `lines[i]` is a line index for tree factors
/// and 0 for flat factors.
struct Chart {
  std::vector<int> lines;
  AffineElement element;
};

/// Point of the truncation: a vertex id per tree factor, an integer per flat.
using Point = std::vector<int>;

/// A desk-scale generalized affine building given by a product of factors,
/// an affine Weyl group and an atlas. With `closed_under_group` the atlas
/// is the W_T-orbit of the listed charts. `presented` marks atlases whose
/// product structure may be used by reduce_affine.
struct AffineModel {
  std::vector<Factor> factors;
  AffineWeylGroup group;
  std::vector<Chart> charts;
  bool closed_under_group = true;
  bool presented = true;

  int dimension() const { return static_cast<int>(factors.size()); }
  bool has_trees() const;
};

/// Every product of lines of the tree factors, with the identity element.
/// Lines through a leaf in `avoid[i]` of factor i are skipped.
std::vector<Chart> line_product_charts(const std::vector<Factor>& factors, const AffineWeylGroup& group,
                                       const std::vector<std::vector<int>>& avoid = {});

/// Product of two trees with the A1xA1 or C2 atlas; T defaults to Z^2.
AffineModel tree_product_model(int valency, int depth, std::string_view atlas_type,
                               std::optional<TranslationGroup> translations = std::nullopt);
/// A single tree with W0 = A1 and T = Z.
AffineModel tree_model(int valency, int depth);
/// The model apartment R^n alone, standard realization of `type`.
AffineModel flat_model(const CoxeterSystemPtr& type, TranslationGroup translations);

/// Vertices of tree factors times integers in [-radius, radius] for flats.
std::vector<Point> truncation_points(const AffineModel& model, int flat_radius);

/// Weyl simplex based at `base` in chart `chart`: the face of type J (a
/// set of generators) of the Weyl chamber `element` of the chart.
struct WeylSimplex {
  Point base;
  int chart = 0;
  int element = 0;
  std::vector<int> face_type;
};

/// Whether chart maps a point of T to `x`, so that Weyl simplices of the
/// chart may be based there.
bool chart_based_at(const AffineModel& model, int chart, const Point& x);

/// Combinatorial direction of a Weyl simplex: per tree coordinate the end
/// (or, with `local`, the first edge) it points to, -1 if the coordinate is
/// constant; per flat coordinate the sign; then the comparison pattern of
/// absolute coordinates.
std::vector<int> direction_key(const AffineModel& model, const WeylSimplex& p, bool local);

struct BoundaryBuilding {
  ChamberComplex complex;
  std::vector<std::vector<int>> chamber_keys;
  std::vector<WeylSimplex> witness;
  std::vector<int> apartment_chart;  // chart producing each apartment
  bool degenerate = false;           // no tree factors
};

/// ∂X built directly from end data. Throws UnsupportedModel for models
/// without charts.
BoundaryBuilding boundary_building(const AffineModel& model);

/// Parallelism by direction data. Throws TypeMismatch for faces of
/// different types.
bool parallel(const AffineModel& model, const WeylSimplex& p, const WeylSimplex& q);
/// Independent check: constructs a common sub-Weyl chamber explicitly.
bool parallel_oracle(const AffineModel& model, const WeylSimplex& p, const WeylSimplex& q);

struct Germ {
  Point base;
  std::vector<int> key;
};

/// Throws BaseMismatch unless the chamber is based at x.
Germ germ_at(const AffineModel& model, const Point& x, const WeylSimplex& chamber);
/// Throws BaseMismatch for germs at different points.
bool opposite_germs(const AffineModel& model, const Germ& a, const Germ& b);

struct AxiomResult {
  std::string name;
  bool passed = true;
  long checked = 0;
  long violations = 0;
  std::vector<std::string> examples;
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool passed() const;
  const AxiomResult& at(std::string_view name) const;
};

/// (A1), (A2), (A3), (GG), (CO), (A4) over the truncation.
AxiomReport check_axioms(const AffineModel& model);

/// X = base × R^k. `embedding` is a reflection subgroup of the ambient
/// W0 whose j-th embedded generator must act as M̄_j ⊕ id.
AffineModel extend_affine(const AffineModel& base, const ReflectionSubgroup& embedding, TranslationGroup translations);

struct AffineReduction {
  AffineModel factor;
  int k = 0;
  BoundaryBuilding boundary;
  FrameResult frame;
  TranslationGroup reduced_translations;
  bool reduced_invariant = false;
  bool factor_boundary_matches_frame = false;
  std::optional<bool> reextension_matches;
};

/// Splits a presented model as X̄ × R^k. Throws UnpresentedModel.
AffineReduction reduce_affine(const AffineModel& model);

}  // namespace frameforge

#endif  // FRAMEFORGE_AFFINE_HPP
