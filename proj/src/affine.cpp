#include "frameforge/affine.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "frameforge/isomorphism.hpp"
#include "frameforge/union_find.hpp"

namespace frameforge {

namespace {

std::vector<int> flatten(const Eigen::MatrixXi& m) {
  return std::vector<int>(m.data(), m.data() + m.size());
}

bool is_signed_permutation(const Eigen::MatrixXi& m) {
  for (int i = 0; i < m.rows(); ++i) {
    int row_nonzero = 0;
    int col_nonzero = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        if (std::abs(m(i, j)) != 1) return false;
        ++row_nonzero;
      }
      if (m(j, i) != 0) ++col_nonzero;
    }
    if (row_nonzero != 1 || col_nonzero != 1) return false;
  }
  return true;
}

[[noreturn]] void unsupported(const std::string& what) { throw Error(ErrorCode::UnsupportedModel, what); }

int sign(int x) { return (x > 0) - (x < 0); }

}  // namespace

// ---------------------------------------------------------------------------
// Linear realizations and affine Weyl groups

LinearRealization LinearRealization::standard(const CoxeterSystemPtr& sys) {
  const int n = sys->rank();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sys->matrix()(i, j) != 2) uf.unite(i, j);
    }
  }
  const std::vector<int> component = uf.labels();
  std::vector<std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    if (component[i] >= static_cast<int>(members.size())) members.resize(component[i] + 1);
    members[component[i]].push_back(i);
  }
  std::vector<Eigen::MatrixXi> gens(n, Eigen::MatrixXi::Identity(n, n));
  Eigen::VectorXi x0(n);
  int coord = 0;
  for (const auto& m : members) {
    if (m.size() == 1) {
      gens[m[0]](coord, coord) = -1;
      x0[coord] = 1;
      coord += 1;
    } else if (m.size() == 2 && sys->matrix()(m[0], m[1]) == 4) {
      Eigen::MatrixXi& swap = gens[m[0]];
      swap(coord, coord) = 0;
      swap(coord + 1, coord + 1) = 0;
      swap(coord, coord + 1) = 1;
      swap(coord + 1, coord) = 1;
      gens[m[1]](coord + 1, coord + 1) = -1;
      x0[coord] = 2;
      x0[coord + 1] = 1;
      coord += 2;
    } else {
      unsupported("only A1 and C2 components have a standard signed permutation realization");
    }
  }
  return from_generators(sys, n, std::move(gens), std::move(x0));
}

LinearRealization LinearRealization::from_generators(const CoxeterSystemPtr& sys, int dimension,
                                                     std::vector<Eigen::MatrixXi> generators, Eigen::VectorXi x0) {
  if (static_cast<int>(generators.size()) != sys->rank()) unsupported("one matrix per generator is required");
  if (x0.size() != dimension) unsupported("interior direction has the wrong dimension");
  for (const auto& g : generators) {
    if (g.rows() != dimension || g.cols() != dimension || !is_signed_permutation(g))
      unsupported("generator matrices must be signed permutation matrices");
  }
  LinearRealization r;
  r.sys_ = sys;
  r.dim_ = dimension;
  r.x0_ = std::move(x0);
  r.matrices_.assign(sys->order(), Eigen::MatrixXi::Identity(dimension, dimension));
  for (int e = 1; e < sys->order(); ++e) {
    const auto& word = sys->word(e);
    const int prefix = sys->element_of_word(std::span<const int>(word.data(), word.size() - 1));
    r.matrices_[e] = r.matrices_[prefix] * generators[word.back()];
  }
  for (int e = 0; e < sys->order(); ++e) {
    for (int s = 0; s < sys->rank(); ++s) {
      if (r.matrices_[sys->right_multiply(e, s)] != r.matrices_[e] * generators[s])
        unsupported("generator matrices do not satisfy the Coxeter relations");
    }
    if (!r.index_.emplace(flatten(r.matrices_[e]), e).second) unsupported("realization is not faithful");
  }
  std::set<std::vector<int>> images;
  for (const auto& m : r.matrices_) {
    const Eigen::VectorXi y = m * r.x0_;
    images.insert(std::vector<int>(y.data(), y.data() + y.size()));
  }
  if (static_cast<int>(images.size()) != sys->order()) unsupported("interior direction is not regular");
  if (r.matrices_[sys->longest()] != -Eigen::MatrixXi::Identity(dimension, dimension))
    unsupported("the longest element must act as -id");
  return r;
}

int LinearRealization::element_of(const Eigen::MatrixXi& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) return -1;
  auto it = index_.find(flatten(m));
  return it == index_.end() ? -1 : it->second;
}

std::vector<Eigen::MatrixXi> LinearRealization::generator_matrices() const {
  std::vector<Eigen::MatrixXi> out;
  for (int s = 0; s < sys_->rank(); ++s) out.push_back(matrices_[sys_->generator(s)]);
  return out;
}

AffineWeylGroup::AffineWeylGroup(LinearRealization linear, TranslationGroup translations)
    : linear_(std::move(linear)), translations_(std::move(translations)) {}

AffineElement AffineWeylGroup::identity() const {
  return {CoxeterSystem::identity(), RVector::Constant(dimension(), Rational(0))};
}

AffineElement AffineWeylGroup::compose(const AffineElement& a, const AffineElement& b) const {
  return {linear_.system()->multiply(a.linear, b.linear),
          RVector(a.translation + to_rational(linear_.matrix(a.linear)) * b.translation)};
}

AffineElement AffineWeylGroup::inverse(const AffineElement& a) const {
  const int inv = linear_.system()->inverse(a.linear);
  return {inv, RVector(-(to_rational(linear_.matrix(inv)) * a.translation))};
}

RVector AffineWeylGroup::apply(const AffineElement& g, const RVector& x) const {
  return to_rational(linear_.matrix(g.linear)) * x + g.translation;
}

std::vector<AffineElement> AffineWeylGroup::generators() const {
  std::vector<AffineElement> out;
  const RVector zero = RVector::Constant(dimension(), Rational(0));
  for (int s = 0; s < linear_.system()->rank(); ++s) out.push_back({linear_.system()->generator(s), zero});
  for (const auto& t : translations_.generators()) out.push_back({CoxeterSystem::identity(), t});
  return out;
}

bool AffineWeylGroup::contains(const Eigen::MatrixXi& linear, const RVector& translation) const {
  return linear_.element_of(linear) >= 0 && translations_.contains(translation);
}

AffineWeylGroup affine_group(LinearRealization linear, TranslationGroup translations) {
  if (translations.dimension() != linear.dimension())
    throw Error(ErrorCode::NotInvariant, "translation group and W0 act on spaces of different dimension");
  if (!translations.invariant_under(linear.generator_matrices()))
    throw Error(ErrorCode::NotInvariant, "translation group is not W0-invariant");
  return AffineWeylGroup(std::move(linear), std::move(translations));
}

// ---------------------------------------------------------------------------
// Trees

Tree::Tree(int valency, int depth) : valency_(valency), depth_(depth) {
  if (valency < 2 || depth < 1) unsupported("trees need valency >= 2 and depth >= 1");
  parent_.push_back(-1);
  level_.push_back(0);
  adjacency_.emplace_back();
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (level_[v] == depth) {
      leaves_.push_back(static_cast<int>(v));
      continue;
    }
    const int children = v == 0 ? valency : valency - 1;
    for (int c = 0; c < children; ++c) {
      const int id = static_cast<int>(parent_.size());
      parent_.push_back(static_cast<int>(v));
      level_.push_back(level_[v] + 1);
      adjacency_.emplace_back();
      adjacency_[v].push_back(id);
      adjacency_[id].push_back(static_cast<int>(v));
    }
  }
}

std::vector<int> Tree::path(int a, int b) const {
  std::vector<int> up_a{a};
  std::vector<int> up_b{b};
  while (a != b) {
    if (level_[a] >= level_[b]) {
      a = parent_[a];
      up_a.push_back(a);
    } else {
      b = parent_[b];
      up_b.push_back(b);
    }
  }
  up_b.pop_back();
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

int Tree::distance(int a, int b) const { return static_cast<int>(path(a, b).size()) - 1; }

TreeGeometry::TreeGeometry(int valency, int depth) : tree_(valency, depth) {
  const auto& leaves = tree_.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      TreeLine line;
      line.from = leaves[i];
      line.to = leaves[j];
      line.path = tree_.path(line.from, line.to);
      line.apex = static_cast<int>(std::min_element(line.path.begin(), line.path.end(),
                                                    [&](int a, int b) { return tree_.level(a) < tree_.level(b); }) -
                                   line.path.begin());
      lines_.push_back(std::move(line));
    }
  }
  params_.assign(lines_.size() * tree_.vertex_count(), kOff);
  for (std::size_t l = 0; l < lines_.size(); ++l) {
    const auto& line = lines_[l];
    for (int i = 0; i < static_cast<int>(line.path.size()); ++i) {
      params_[l * tree_.vertex_count() + line.path[i]] = i - line.apex;
    }
  }
}

int TreeGeometry::line_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (int l = 0; l < line_count(); ++l) {
    if (lines_[l].from == a && lines_[l].to == b) return l;
  }
  return -1;
}

int TreeGeometry::vertex_at(int line, int t) const {
  const auto& l = lines_[line];
  const int idx = t + l.apex;
  return idx >= 0 && idx < static_cast<int>(l.path.size()) ? l.path[idx] : -1;
}

// ---------------------------------------------------------------------------
// Models

bool AffineModel::has_trees() const {
  return std::any_of(factors.begin(), factors.end(), [](const Factor& f) { return !f.is_flat(); });
}

std::vector<Chart> line_product_charts(const std::vector<Factor>& factors, const AffineWeylGroup& group,
                                       const std::vector<std::vector<int>>& avoid) {
  const int n = static_cast<int>(factors.size());
  std::vector<std::vector<int>> choices(n);
  for (int i = 0; i < n; ++i) {
    if (factors[i].is_flat()) {
      choices[i] = {0};
      continue;
    }
    const TreeGeometry& geo = *factors[i].tree;
    for (int l = 0; l < geo.line_count(); ++l) {
      if (i < static_cast<int>(avoid.size())) {
        const auto& bad = avoid[i];
        if (std::find(bad.begin(), bad.end(), geo.line(l).from) != bad.end() ||
            std::find(bad.begin(), bad.end(), geo.line(l).to) != bad.end())
          continue;
      }
      choices[i].push_back(l);
    }
  }
  std::vector<Chart> charts;
  std::vector<int> current(n, 0);
  std::vector<std::size_t> pos(n, 0);
  for (int i = 0; i < n; ++i) {
    if (choices[i].empty()) return charts;
  }
  while (true) {
    Chart c;
    for (int i = 0; i < n; ++i) c.lines.push_back(choices[i][pos[i]]);
    c.element = group.identity();
    charts.push_back(std::move(c));
    int i = n - 1;
    while (i >= 0 && ++pos[i] == choices[i].size()) {
      pos[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return charts;
}

AffineModel tree_product_model(int valency, int depth, std::string_view atlas_type,
                               std::optional<TranslationGroup> translations) {
  if (atlas_type != "A1xA1" && atlas_type != "C2") unsupported("tree products carry the A1xA1 or the C2 atlas");
  auto geo = std::make_shared<const TreeGeometry>(valency, depth);
  std::vector<Factor> factors{{geo}, {geo}};
  AffineWeylGroup group = affine_group(LinearRealization::standard(build_system(atlas_type)),
                                       translations ? *translations : TranslationGroup::integer_lattice(2));
  std::vector<Chart> charts = line_product_charts(factors, group);
  return AffineModel{std::move(factors), std::move(group), std::move(charts), true, true};
}

AffineModel tree_model(int valency, int depth) {
  std::vector<Factor> factors{{std::make_shared<const TreeGeometry>(valency, depth)}};
  AffineWeylGroup group = affine_group(LinearRealization::standard(build_system("A1")), TranslationGroup::integer_lattice(1));
  std::vector<Chart> charts = line_product_charts(factors, group);
  return AffineModel{std::move(factors), std::move(group), std::move(charts), true, true};
}

AffineModel flat_model(const CoxeterSystemPtr& type, TranslationGroup translations) {
  LinearRealization linear = LinearRealization::standard(type);
  std::vector<Factor> factors(linear.dimension());
  AffineWeylGroup group = affine_group(std::move(linear), std::move(translations));
  std::vector<Chart> charts = line_product_charts(factors, group);
  return AffineModel{std::move(factors), std::move(group), std::move(charts), true, true};
}

std::vector<Point> truncation_points(const AffineModel& model, int flat_radius) {
  std::vector<Point> points{Point{}};
  for (const auto& f : model.factors) {
    std::vector<Point> next;
    for (const auto& p : points) {
      if (f.is_flat()) {
        for (int z = -flat_radius; z <= flat_radius; ++z) {
          next.push_back(p);
          next.back().push_back(z);
        }
      } else {
        for (int v = 0; v < f.tree->tree().vertex_count(); ++v) {
          next.push_back(p);
          next.back().push_back(v);
        }
      }
    }
    points = std::move(next);
  }
  return points;
}

// ---------------------------------------------------------------------------
// Directions

namespace {

/// Line coordinates of x in chart lines, or nullopt if x is off the chart.
std::optional<RVector> line_coordinates(const AffineModel& model, const std::vector<int>& lines, const Point& x) {
  RVector q(model.dimension());
  for (int i = 0; i < model.dimension(); ++i) {
    if (model.factors[i].is_flat()) {
      q[i] = x[i];
    } else {
      const int t = model.factors[i].tree->param(lines[i], x[i]);
      if (t == TreeGeometry::kOff) return std::nullopt;
      q[i] = t;
    }
  }
  return q;
}

std::vector<int> parabolic_elements(const CoxeterSystem& sys, const std::vector<int>& J) {
  std::vector<int> out{CoxeterSystem::identity()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int s : J) {
      const int v = sys.right_multiply(out[head], s);
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

/// Direction of the simplex in line coordinates: M_g M_w Σ_{v ∈ W_J} M_v x0.
Eigen::VectorXi line_direction(const AffineModel& model, const WeylSimplex& p) {
  const LinearRealization& lin = model.group.linear();
  Eigen::VectorXi face = Eigen::VectorXi::Zero(lin.dimension());
  for (int v : parabolic_elements(*lin.system(), p.face_type)) face += lin.matrix(v) * lin.interior_direction();
  return lin.matrix(model.charts[p.chart].element.linear) * lin.matrix(p.element) * face;
}

std::vector<int> key_of_direction(const AffineModel& model, const std::vector<int>& lines, const Point& base,
                                  const Eigen::VectorXi& u, bool local) {
  const int n = model.dimension();
  std::vector<int> key;
  for (int i = 0; i < n; ++i) {
    const int sg = sign(u[i]);
    if (model.factors[i].is_flat()) {
      key.push_back(sg);
    } else if (sg == 0) {
      key.push_back(-1);
    } else {
      const TreeGeometry& geo = *model.factors[i].tree;
      if (local) {
        const int v = geo.vertex_at(lines[i], geo.param(lines[i], base[i]) + sg);
        key.push_back(v < 0 ? -2 : v);
      } else {
        key.push_back(geo.end(lines[i], sg));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int a = std::abs(u[i]);
      const int b = std::abs(u[j]);
      key.push_back(a > b ? 0 : (a < b ? 1 : 2));
    }
  }
  return key;
}

Point apex_point(const AffineModel& model, const Chart& chart) {
  Point p;
  for (int i = 0; i < model.dimension(); ++i) {
    if (model.factors[i].is_flat()) {
      p.push_back(0);
    } else {
      const TreeLine& line = model.factors[i].tree->line(chart.lines[i]);
      p.push_back(line.path[line.apex]);
    }
  }
  return p;
}

}  // namespace

bool chart_based_at(const AffineModel& model, int chart, const Point& x) {
  const Chart& c = model.charts[chart];
  const auto q = line_coordinates(model, c.lines, x);
  if (!q) return false;
  return model.group.translations().contains(RVector(*q - c.element.translation));
}

std::vector<int> direction_key(const AffineModel& model, const WeylSimplex& p, bool local) {
  return key_of_direction(model, model.charts[p.chart].lines, p.base, line_direction(model, p), local);
}

// ---------------------------------------------------------------------------
// Boundary

BoundaryBuilding boundary_building(const AffineModel& model) {
  if (model.charts.empty()) unsupported("model has no charts");
  const CoxeterSystemPtr& sys = model.group.linear().system();
  const int n = sys->rank();
  const int nc = static_cast<int>(model.charts.size());

  // Charts with the same image give the same chambers; keep one per image.
  std::map<std::vector<int>, int> image_chart;
  std::vector<int> representatives;
  for (int c = 0; c < nc; ++c) {
    if (image_chart.emplace(model.charts[c].lines, c).second) representatives.push_back(c);
  }

  std::map<std::vector<int>, WeylSimplex> chambers;
  for (int c : representatives) {
    for (int w = 0; w < sys->order(); ++w) {
      WeylSimplex s{apex_point(model, model.charts[c]), c, w, {}};
      chambers.emplace(direction_key(model, s, false), s);
    }
  }
  BoundaryBuilding out{trivial_complex(), {}, {}, {}, !model.has_trees()};
  std::map<std::vector<int>, int> index;
  for (const auto& [key, witness] : chambers) {
    index.emplace(key, static_cast<int>(out.chamber_keys.size()));
    out.chamber_keys.push_back(key);
    out.witness.push_back(witness);
  }
  const int count = static_cast<int>(out.chamber_keys.size());

  std::vector<std::vector<std::vector<int>>> panels(n);
  for (int s = 0; s < n; ++s) {
    std::map<std::vector<int>, std::set<int>> faces;
    std::vector<bool> done(count, false);
    for (int c : representatives) {
      for (int w = 0; w < sys->order(); ++w) {
        WeylSimplex chamber{apex_point(model, model.charts[c]), c, w, {}};
        const int id = index.at(direction_key(model, chamber, false));
        if (done[id]) continue;
        done[id] = true;
        WeylSimplex face = chamber;
        face.face_type = {s};
        faces[direction_key(model, face, false)].insert(id);
      }
    }
    for (auto& [key, members] : faces) panels[s].emplace_back(members.begin(), members.end());
  }

  std::vector<Apartment> apartments;
  for (int c : representatives) {
    Apartment ap;
    for (int w = 0; w < sys->order(); ++w) {
      WeylSimplex chamber{apex_point(model, model.charts[c]), c, w, {}};
      ap.chamber_of.push_back(index.at(direction_key(model, chamber, false)));
    }
    apartments.push_back(std::move(ap));
    out.apartment_chart.push_back(c);
  }
  out.complex = ChamberComplex(sys, count, std::move(panels), std::move(apartments));
  return out;
}

// ---------------------------------------------------------------------------
// Parallelism and germs

namespace {

void require_same_type(const WeylSimplex& p, const WeylSimplex& q) {
  std::vector<int> a = p.face_type;
  std::vector<int> b = q.face_type;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorCode::TypeMismatch, "Weyl simplices of different types");
}

/// Whether y lies in the closed fundamental cone of the realization.
bool in_fundamental_cone(const LinearRealization& lin, const Eigen::VectorXi& y) {
  const Eigen::VectorXi& x0 = lin.interior_direction();
  const int n = lin.dimension();
  for (const auto& m : lin.generator_matrices()) {
    const Eigen::MatrixXi diff = Eigen::MatrixXi::Identity(n, n) - m;
    int col = 0;
    while (col < n && diff.col(col).isZero()) ++col;
    const Eigen::VectorXi root = diff.col(col);
    if (sign(root.dot(y)) * sign(root.dot(x0)) < 0) return false;
  }
  return true;
}

bool chamber_oracle(const AffineModel& model, const WeylSimplex& s1, const WeylSimplex& s2) {
  const int n = model.dimension();
  const LinearRealization& lin = model.group.linear();
  const Eigen::MatrixXi frame1 = lin.matrix(model.charts[s1.chart].element.linear) * lin.matrix(s1.element);
  const Eigen::MatrixXi frame2 = lin.matrix(model.charts[s2.chart].element.linear) * lin.matrix(s2.element);
  const Eigen::VectorXi u1 = frame1 * lin.interior_direction();
  const Eigen::VectorXi u2 = frame2 * lin.interior_direction();

  // Distances from each base to the point where the two rays merge.
  std::vector<int> h1(n), h2(n);
  Eigen::VectorXi sg1(n), sg2(n);
  for (int i = 0; i < n; ++i) {
    sg1[i] = sign(u1[i]);
    sg2[i] = sign(u2[i]);
    if (model.factors[i].is_flat()) {
      if (sg1[i] != sg2[i]) return false;
      h1[i] = std::max(0, sg1[i] * (s2.base[i] - s1.base[i]));
      h2[i] = std::max(0, sg1[i] * (s1.base[i] - s2.base[i]));
      continue;
    }
    const TreeGeometry& geo = *model.factors[i].tree;
    const int end1 = geo.end(model.charts[s1.chart].lines[i], sg1[i]);
    const int end2 = geo.end(model.charts[s2.chart].lines[i], sg2[i]);
    if (end1 != end2) return false;
    const std::vector<int> ray1 = geo.tree().path(s1.base[i], end1);
    const std::vector<int> ray2 = geo.tree().path(s2.base[i], end2);
    int merge = -1;
    for (std::size_t a = 0; a < ray1.size() && merge < 0; ++a) {
      if (std::find(ray2.begin(), ray2.end(), ray1[a]) != ray2.end()) merge = static_cast<int>(a);
    }
    h1[i] = merge;
    h2[i] = static_cast<int>(std::find(ray2.begin(), ray2.end(), ray1[merge]) - ray2.begin());
  }

  // Search for a common base z beyond the merge points lying in both chambers.
  int bound = 1;
  for (int i = 0; i < n; ++i) bound += h1[i] + h2[i];
  std::vector<int> extra(n, 0);
  bool found = false;
  while (!found) {
    Eigen::VectorXi d1(n), d2(n);
    for (int i = 0; i < n; ++i) {
      d1[i] = sg1[i] * (h1[i] + extra[i]);
      d2[i] = sg2[i] * (h2[i] + extra[i]);
    }
    found = in_fundamental_cone(lin, frame1.transpose() * d1) && in_fundamental_cone(lin, frame2.transpose() * d2);
    int i = n - 1;
    while (i >= 0 && ++extra[i] > bound) {
      extra[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  if (!found) return false;
  // The sub-chambers must also point the same way once both charts are
  // oriented toward the common ends.
  return sg1.asDiagonal() * frame1 == sg2.asDiagonal() * frame2;
}

}  // namespace

bool parallel(const AffineModel& model, const WeylSimplex& p, const WeylSimplex& q) {
  require_same_type(p, q);
  return direction_key(model, p, false) == direction_key(model, q, false);
}

bool parallel_oracle(const AffineModel& model, const WeylSimplex& p, const WeylSimplex& q) {
  require_same_type(p, q);
  const CoxeterSystem& sys = *model.group.linear().system();
  const std::vector<int> local = parabolic_elements(sys, p.face_type);
  for (int a : local) {
    for (int b : local) {
      WeylSimplex s1{p.base, p.chart, sys.multiply(p.element, a), {}};
      WeylSimplex s2{q.base, q.chart, sys.multiply(q.element, b), {}};
      if (chamber_oracle(model, s1, s2)) return true;
    }
  }
  return false;
}

Germ germ_at(const AffineModel& model, const Point& x, const WeylSimplex& chamber) {
  if (chamber.base != x) throw Error(ErrorCode::BaseMismatch, "chamber is not based at the given point");
  return Germ{x, direction_key(model, chamber, true)};
}

bool opposite_germs(const AffineModel& model, const Germ& a, const Germ& b) {
  if (a.base != b.base) throw Error(ErrorCode::BaseMismatch, "germs are based at different points");
  if (a.key.size() != b.key.size()) return false;
  const int n = model.dimension();
  for (int i = 0; i < n; ++i) {
    if (model.factors[i].is_flat()) {
      if (a.key[i] == 0 || a.key[i] != -b.key[i]) return false;
    } else if (a.key[i] < 0 || b.key[i] < 0 || a.key[i] == b.key[i]) {
      return false;
    }
  }
  // -w0 = id for every supported realization, so opposite germs share the
  // comparison pattern.
  return std::equal(a.key.begin() + n, a.key.end(), b.key.begin() + n);
}

// ---------------------------------------------------------------------------
// Extension and reduction

AffineModel extend_affine(const AffineModel& base, const ReflectionSubgroup& embedding, TranslationGroup translations) {
  const CoxeterSystemPtr& ambient = embedding.ambient;
  const LinearRealization& bar = base.group.linear();
  LinearRealization linear = LinearRealization::standard(ambient);
  const int nbar = base.dimension();
  const int k = linear.dimension() - nbar;
  if (k < 0) throw Error(ErrorCode::BadEmbedding, "ambient rank is smaller than the base rank");
  if (static_cast<int>(embedding.embedding.size()) != bar.system()->rank() ||
      !(embedding_matrix(embedding) == bar.system()->matrix()))
    throw Error(ErrorCode::BadEmbedding, "embedded generators do not match the base Weyl group");
  for (int j = 0; j < bar.system()->rank(); ++j) {
    const int r = embedding.embedding[j];
    Eigen::MatrixXi expected = Eigen::MatrixXi::Identity(nbar + k, nbar + k);
    expected.topLeftCorner(nbar, nbar) = bar.matrix(bar.system()->generator(j));
    if (!ambient->is_reflection(r) || linear.matrix(r) != expected)
      throw Error(ErrorCode::BadEmbedding, "embedded generator " + std::to_string(j) + " does not act as M ⊕ id");
  }
  if (!is_thick(boundary_building(base).complex))
    throw Error(ErrorCode::NotThickBoundary, "the boundary of the base is not thick");
  AffineWeylGroup group = affine_group(std::move(linear), std::move(translations));
  if (!group.translations().contains_padded(base.group.translations()))
    throw Error(ErrorCode::NotInvariant, "base translations are not contained in T");

  std::vector<int> ambient_of(bar.system()->order(), CoxeterSystem::identity());
  for (int e = 1; e < bar.system()->order(); ++e) {
    const auto& word = bar.system()->word(e);
    const int prefix = bar.system()->element_of_word(std::span<const int>(word.data(), word.size() - 1));
    ambient_of[e] = ambient->multiply(ambient_of[prefix], embedding.embedding[word.back()]);
  }
  std::vector<Factor> factors = base.factors;
  factors.resize(nbar + k);
  std::vector<Chart> charts;
  for (const auto& c : base.charts) {
    Chart e;
    e.lines = c.lines;
    e.lines.resize(nbar + k, 0);
    e.element.linear = ambient_of[c.element.linear];
    e.element.translation = RVector::Constant(nbar + k, Rational(0));
    e.element.translation.head(nbar) = c.element.translation;
    charts.push_back(std::move(e));
  }
  return AffineModel{std::move(factors), std::move(group), std::move(charts), true, true};
}

AffineReduction reduce_affine(const AffineModel& model) {
  if (!model.presented) throw Error(ErrorCode::UnpresentedModel, "reduction needs a presented product atlas");
  BoundaryBuilding boundary = boundary_building(model);
  FrameResult frame = thick_frame(boundary.complex);
  const int k = boundary.complex.rank() - frame.frame.rank();
  const LinearRealization& lin = model.group.linear();
  const int n = model.dimension();
  const int nbar = n - k;

  std::vector<Eigen::MatrixXi> gens;
  for (int r : frame.subgroup.canonical_generators) gens.push_back(lin.matrix(r));
  std::vector<int> fixed;
  for (int i = 0; i < n; ++i) {
    bool fixes = true;
    for (const auto& g : gens) {
      for (int j = 0; j < n && fixes; ++j) fixes = g(i, j) == (i == j) && g(j, i) == (i == j);
    }
    if (fixes) fixed.push_back(i);
  }
  if (static_cast<int>(fixed.size()) != k) unsupported("fixed space of the reduced group is not a coordinate subspace");
  for (int i : fixed) {
    if (i < nbar || !model.factors[i].is_flat()) unsupported("the flat factor must consist of trailing flat coordinates");
  }

  std::vector<Eigen::MatrixXi> blocks;
  for (const auto& g : gens) blocks.push_back(g.topLeftCorner(nbar, nbar));
  LinearRealization bar_linear =
      LinearRealization::from_generators(frame.frame.type(), nbar, blocks, lin.interior_direction().head(nbar));
  TranslationGroup bar_t = model.group.translations().leading_intersection(nbar);
  const bool invariant = bar_t.invariant_under(blocks);

  std::vector<Factor> bar_factors(model.factors.begin(), model.factors.begin() + nbar);
  AffineWeylGroup bar_group(std::move(bar_linear), bar_t);
  std::vector<Chart> bar_charts;
  std::set<std::vector<int>> seen;
  for (const auto& c : model.charts) {
    std::vector<int> lines(c.lines.begin(), c.lines.begin() + nbar);
    if (seen.insert(lines).second) bar_charts.push_back(Chart{std::move(lines), bar_group.identity()});
  }
  AffineModel factor{std::move(bar_factors), std::move(bar_group), std::move(bar_charts), true, true};

  const bool matches = find_isomorphism(boundary_building(factor).complex, frame.frame).has_value();
  std::optional<bool> reextension;
  if (invariant) {
    const AffineModel again = extend_affine(factor, frame.subgroup, model.group.translations());
    reextension = find_isomorphism(boundary_building(again).complex, boundary.complex).has_value();
  }
  return AffineReduction{std::move(factor), k, std::move(boundary), std::move(frame), std::move(bar_t),
                         invariant, matches, reextension};
}

}  // namespace frameforge
