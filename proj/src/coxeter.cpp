#include "frameforge/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>

namespace frameforge {

namespace {

constexpr double kRootTolerance = 1e-9;

Eigen::MatrixXi path_diagram(int n) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 3;
  return m;
}

void set_bond(Eigen::MatrixXi& m, int i, int j, int value) { m(i, j) = m(j, i) = value; }

Eigen::MatrixXi irreducible(char family, int n, int param) {
  auto bad = [&] {
    return Error(ErrorCode::InvalidMatrix,
                 std::string("unknown Coxeter type ") + family + std::to_string(n));
  };
  if (n < 1) throw bad();
  switch (family) {
    case 'A':
      return path_diagram(n);
    case 'B':
    case 'C': {
      Eigen::MatrixXi m = path_diagram(n);
      if (n >= 2) set_bond(m, n - 2, n - 1, 4);
      return m;
    }
    case 'D': {
      if (n < 4) throw bad();
      Eigen::MatrixXi m = path_diagram(n);
      set_bond(m, n - 2, n - 1, 2);
      set_bond(m, n - 3, n - 1, 3);
      return m;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      // Bourbaki labelling: 1-3-4-5-...-n with 2 attached to 4.
      Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
      for (int i = 0; i < n; ++i) m(i, i) = 1;
      set_bond(m, 0, 2, 3);
      set_bond(m, 1, 3, 3);
      for (int i = 2; i + 1 < n; ++i) set_bond(m, i, i + 1, 3);
      return m;
    }
    case 'F': {
      if (n != 4) throw bad();
      Eigen::MatrixXi m = path_diagram(4);
      set_bond(m, 1, 2, 4);
      return m;
    }
    case 'G': {
      if (n != 2) throw bad();
      Eigen::MatrixXi m = path_diagram(2);
      set_bond(m, 0, 1, 6);
      return m;
    }
    case 'H': {
      if (n < 2 || n > 4) throw bad();
      Eigen::MatrixXi m = path_diagram(n);
      set_bond(m, 0, 1, 5);
      return m;
    }
    case 'I': {
      if (n != 2 || param < 2) throw bad();
      Eigen::MatrixXi m = path_diagram(2);
      set_bond(m, 0, 1, param);
      return m;
    }
    default:
      throw bad();
  }
}

int find_root(const std::vector<Eigen::VectorXd>& roots, const Eigen::VectorXd& v) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if ((roots[i] - v).cwiseAbs().maxCoeff() < kRootTolerance) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(Eigen::MatrixXi entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw Error(ErrorCode::InvalidMatrix, "Coxeter matrix must be square");
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (entries_(i, i) != 1) throw Error(ErrorCode::InvalidMatrix, "diagonal entries must be 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries_(i, j) != entries_(j, i))
        throw Error(ErrorCode::InvalidMatrix, "Coxeter matrix must be symmetric");
      if (entries_(i, j) != 0 && entries_(i, j) < 2)
        throw Error(ErrorCode::InvalidMatrix, "off-diagonal entries must be >= 2 or 0 (infinity)");
    }
  }
}

bool CoxeterMatrix::has_infinite_entry() const { return (entries_.array() == 0).any(); }

CoxeterMatrix direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  const int n = a.rank() + b.rank();
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  if (a.rank() > 0) m.topLeftCorner(a.rank(), a.rank()) = a.entries();
  if (b.rank() > 0) m.bottomRightCorner(b.rank(), b.rank()) = b.entries();
  return CoxeterMatrix(m);
}

CoxeterMatrix parse_coxeter_type(std::string_view name) {
  std::vector<std::string_view> factors;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i == name.size() || name[i] == 'x' || name[i] == '*') {
      factors.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  }
  CoxeterMatrix result{Eigen::MatrixXi(0, 0)};
  for (std::string_view f : factors) {
    if (f.size() < 2 || !std::isupper(static_cast<unsigned char>(f[0])))
      throw Error(ErrorCode::InvalidMatrix, "cannot parse Coxeter type '" + std::string(name) + "'");
    const char family = f[0];
    std::size_t pos = 1;
    int n = 0;
    while (pos < f.size() && std::isdigit(static_cast<unsigned char>(f[pos]))) {
      n = n * 10 + (f[pos] - '0');
      ++pos;
    }
    int param = 0;
    if (pos < f.size()) {
      if (f[pos] != '(' || f.back() != ')')
        throw Error(ErrorCode::InvalidMatrix, "cannot parse Coxeter type '" + std::string(name) + "'");
      for (std::size_t i = pos + 1; i + 1 < f.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(f[i])))
          throw Error(ErrorCode::InvalidMatrix, "bad dihedral parameter in '" + std::string(name) + "'");
        param = param * 10 + (f[i] - '0');
      }
    }
    result = direct_sum(result, CoxeterMatrix(irreducible(family, n, param)));
  }
  return result;
}

Eigen::MatrixXd bilinear_form(const CoxeterMatrix& matrix) {
  const int n = matrix.rank();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int m = matrix(i, j);
      if (m == 0) {
        b(i, j) = -1.0;
      } else if (m == 2) {
        b(i, j) = 0.0;  // exact, not cos(pi/2) rounding noise
      } else {
        b(i, j) = -std::cos(std::numbers::pi / m);
      }
    }
  }
  return b;
}

CoxeterSystemPtr build_system(const CoxeterMatrix& matrix, std::int64_t element_cap, std::int64_t root_cap) {
  if (matrix.has_infinite_entry())
    throw Error(ErrorCode::InvalidMatrix, "infinite Coxeter matrix entries are not supported");

  std::shared_ptr<CoxeterSystem> sys(new CoxeterSystem());
  sys->matrix_ = matrix;
  sys->form_ = bilinear_form(matrix);
  const int n = matrix.rank();
  const Eigen::MatrixXd& b = sys->form_;

  if (n > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success || (b.diagonal().array() <= 0).any()) {
      throw Error(ErrorCode::CapExceeded, "bilinear form is not positive definite; the group is infinite");
    }
    // LLT accepts some semi-definite inputs; check the smallest eigenvalue.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
    if (eig.eigenvalues().minCoeff() <= 1e-12)
      throw Error(ErrorCode::CapExceeded, "bilinear form is not positive definite; the group is infinite");
  }

  auto reflect = [&](int i, const Eigen::VectorXd& v) {
    Eigen::VectorXd out = v;
    out(i) -= 2.0 * b.row(i).dot(v);
    return out;
  };

  // Root orbit of the simple roots.
  std::vector<Eigen::VectorXd> found;
  for (int i = 0; i < n; ++i) found.push_back(Eigen::VectorXd::Unit(n, i));
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = reflect(i, found[head]);
      if (find_root(found, v) < 0) {
        found.push_back(v);
        if (static_cast<std::int64_t>(found.size()) > root_cap)
          throw Error(ErrorCode::CapExceeded, "root cap exceeded");
      }
    }
  }

  std::vector<Eigen::VectorXd> positives;
  for (const auto& v : found) {
    if ((v.array() > -kRootTolerance).all()) positives.push_back(v);
  }
  const int p = static_cast<int>(positives.size());
  if (2 * p != static_cast<int>(found.size()))
    throw Error(ErrorCode::CapExceeded, "root system is not finite");
  sys->positive_count_ = p;
  sys->roots_.resize(n, 2 * p);
  for (int i = 0; i < p; ++i) {
    sys->roots_.col(i) = positives[i];
    sys->roots_.col(i + p) = -positives[i];
  }
  std::vector<Eigen::VectorXd> ordered;
  for (int i = 0; i < 2 * p; ++i) ordered.push_back(sys->roots_.col(i));
  const int r = 2 * p;

  std::vector<std::vector<int>> gen_perm(n, std::vector<int>(r));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < r; ++k) {
      const int idx = find_root(ordered, reflect(i, ordered[k]));
      if (idx < 0) throw Error(ErrorCode::CapExceeded, "root set not closed under reflections");
      gen_perm[i][k] = idx;
    }
  }

  // Breadth-first closure over elements, keyed by images of simple roots.
  std::vector<int> identity(r);
  std::iota(identity.begin(), identity.end(), 0);
  sys->perms_ = identity;
  sys->lengths_.push_back(0);
  sys->words_.push_back({});
  sys->index_[std::vector<int>(identity.begin(), identity.begin() + n)] = 0;
  std::vector<int> right_mul;
  for (int head = 0; head < static_cast<int>(sys->lengths_.size()); ++head) {
    for (int s = 0; s < n; ++s) {
      std::vector<int> perm(r);
      const int* w = sys->perms_.data() + static_cast<std::size_t>(head) * r;
      for (int k = 0; k < r; ++k) perm[k] = w[gen_perm[s][k]];
      std::vector<int> key(perm.begin(), perm.begin() + n);
      auto it = sys->index_.find(key);
      int idx;
      if (it == sys->index_.end()) {
        idx = static_cast<int>(sys->lengths_.size());
        if (idx >= element_cap) throw Error(ErrorCode::CapExceeded, "element cap exceeded");
        sys->index_.emplace(std::move(key), idx);
        sys->perms_.insert(sys->perms_.end(), perm.begin(), perm.end());
        sys->lengths_.push_back(sys->lengths_[head] + 1);
        auto word = sys->words_[head];
        word.push_back(s);
        sys->words_.push_back(std::move(word));
      } else {
        idx = it->second;
      }
      right_mul.push_back(idx);
    }
  }
  sys->right_mul_ = std::move(right_mul);
  const int order = static_cast<int>(sys->lengths_.size());

  for (int s = 0; s < n; ++s) sys->generator_elements_.push_back(sys->right_mul_[s]);

  sys->inverses_.resize(order);
  for (int w = 0; w < order; ++w) {
    std::vector<int> inv(r);
    auto perm = sys->permutation(w);
    for (int k = 0; k < r; ++k) inv[perm[k]] = k;
    sys->inverses_[w] = sys->lookup(std::span<const int>(inv.data(), n));
  }

  sys->gen_conj_.resize(static_cast<std::size_t>(order) * n);
  for (int w = 0; w < order; ++w) {
    for (int s = 0; s < n; ++s) {
      sys->gen_conj_[static_cast<std::size_t>(w) * n + s] =
          sys->multiply(sys->right_multiply(w, s), sys->inverses_[w]);
    }
  }

  sys->reflection_root_.assign(order, -1);
  sys->root_reflection_.assign(p, -1);
  for (int beta = 0; beta < p; ++beta) {
    std::vector<int> images(n);
    const Eigen::VectorXd bvec = ordered[beta];
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i) - 2.0 * b.row(i).dot(bvec) * bvec;
      images[i] = find_root(ordered, v);
    }
    const int elem = sys->lookup(images);
    sys->reflection_root_[elem] = beta;
    sys->root_reflection_[beta] = elem;
    sys->reflections_.push_back(elem);
  }

  sys->longest_ = static_cast<int>(
      std::max_element(sys->lengths_.begin(), sys->lengths_.end()) - sys->lengths_.begin());
  sys->x0_ = n > 0 ? Eigen::VectorXd(b.ldlt().solve(Eigen::VectorXd::Ones(n))) : Eigen::VectorXd(0);
  return sys;
}

int CoxeterSystem::lookup(std::span<const int> simple_images) const {
  auto it = index_.find(std::vector<int>(simple_images.begin(), simple_images.end()));
  if (it == index_.end()) throw Error(ErrorCode::CapExceeded, "element not found in enumeration");
  return it->second;
}

int CoxeterSystem::multiply(int a, int b) const {
  const int n = rank();
  std::vector<int> key(n);
  for (int i = 0; i < n; ++i) key[i] = apply(a, apply(b, i));
  return lookup(key);
}

int CoxeterSystem::element_of_word(std::span<const int> word) const {
  int w = identity();
  for (int s : word) {
    if (s < 0 || s >= rank()) throw Error(ErrorCode::InvalidMatrix, "generator index out of range");
    w = right_multiply(w, s);
  }
  return w;
}

int CoxeterSystem::element_order(int w) const {
  int k = 1;
  for (int x = w; x != identity(); x = multiply(x, w)) ++k;
  return k;
}

int CoxeterSystem::reflection_root(int w) const {
  if (!is_reflection(w)) throw Error(ErrorCode::NotAReflection, "element " + std::to_string(w));
  return reflection_root_[w];
}

Eigen::MatrixXd CoxeterSystem::action_matrix(int w) const {
  const int n = rank();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = roots_.col(apply(w, i));
  return m;
}

bool ReflectionSubgroup::contains_reflection(int r) const {
  return std::binary_search(reflections.begin(), reflections.end(), r);
}

bool ReflectionSubgroup::contains(int w) const {
  return std::binary_search(elements.begin(), elements.end(), w);
}

namespace {

std::vector<int> generated_elements(const CoxeterSystem& sys, std::span<const int> gens) {
  std::set<int> seen{CoxeterSystem::identity()};
  std::deque<int> queue{CoxeterSystem::identity()};
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    for (int g : gens) {
      const int x = sys.multiply(w, g);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

ReflectionSubgroup reflection_subgroup(const CoxeterSystemPtr& sys, std::span<const int> reflection_set) {
  for (int r : reflection_set) {
    if (!sys->is_reflection(r))
      throw Error(ErrorCode::NotAReflection, "element " + std::to_string(r) + " is not a reflection");
  }
  std::set<int> closed(reflection_set.begin(), reflection_set.end());
  std::vector<int> work(closed.begin(), closed.end());
  while (!work.empty()) {
    const int r = work.back();
    work.pop_back();
    const std::vector<int> current(closed.begin(), closed.end());
    for (int s : current) {
      for (int x : {sys->conjugate(r, s), sys->conjugate(s, r)}) {
        if (closed.insert(x).second) work.push_back(x);
      }
    }
  }

  ReflectionSubgroup sub;
  sub.ambient = sys;
  sub.reflections.assign(closed.begin(), closed.end());

  // A reflection is canonical iff the segment from x0 to its mirror image
  // crosses no other hyperplane of the subgroup.
  const Eigen::MatrixXd& b = sys->form();
  const Eigen::VectorXd& x0 = sys->interior_point();
  std::vector<std::pair<int, int>> canonical;  // (root, reflection)
  for (int r : sub.reflections) {
    const int beta = sys->reflection_root(r);
    const Eigen::VectorXd bv = sys->roots().col(beta);
    const Eigen::VectorXd x1 = x0 - 2.0 * bv.dot(b * x0) * bv;
    bool crosses_other = false;
    for (int t : sub.reflections) {
      if (t == r) continue;
      const Eigen::VectorXd gv = sys->roots().col(sys->reflection_root(t));
      const double a0 = gv.dot(b * x0);
      const double a1 = gv.dot(b * x1);
      if (a0 * a1 < 0) {
        crosses_other = true;
        break;
      }
    }
    if (!crosses_other) canonical.emplace_back(beta, r);
  }
  std::sort(canonical.begin(), canonical.end());
  for (const auto& [root, r] : canonical) sub.canonical_generators.push_back(r);

  const int k = sub.rank();
  Eigen::MatrixXi m = Eigen::MatrixXi::Ones(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      m(i, j) = m(j, i) =
          sys->element_order(sys->multiply(sub.canonical_generators[i], sub.canonical_generators[j]));
    }
  }
  sub.matrix = CoxeterMatrix(m);
  sub.embedding = sub.canonical_generators;
  sub.elements = generated_elements(*sys, sub.canonical_generators);
  return sub;
}

ReflectionSubgroup make_embedding(const CoxeterSystemPtr& sys, std::span<const int> generator_images) {
  ReflectionSubgroup sub = reflection_subgroup(sys, generator_images);
  sub.embedding.assign(generator_images.begin(), generator_images.end());
  return sub;
}

CoxeterMatrix embedding_matrix(const ReflectionSubgroup& sub) {
  const int k = static_cast<int>(sub.embedding.size());
  Eigen::MatrixXi m = Eigen::MatrixXi::Ones(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      m(i, j) = m(j, i) = sub.ambient->element_order(sub.ambient->multiply(sub.embedding[i], sub.embedding[j]));
    }
  }
  return CoxeterMatrix(m);
}

namespace {

// Gram-Schmidt with respect to B; drops vectors dependent at 1e-9.
Eigen::MatrixXd b_orthonormalize(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& b) {
  std::vector<Eigen::VectorXd> basis;
  for (int c = 0; c < vectors.cols(); ++c) {
    Eigen::VectorXd v = vectors.col(c);
    for (const auto& q : basis) v -= q.dot(b * v) * q;
    const double norm2 = v.dot(b * v);
    if (norm2 > 1e-18) basis.push_back(v / std::sqrt(norm2));
  }
  Eigen::MatrixXd out(vectors.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = basis[i];
  return out;
}

}  // namespace

Splitting geometric_splitting(const ReflectionSubgroup& sub) {
  const CoxeterSystem& sys = *sub.ambient;
  const int n = sys.rank();
  const Eigen::MatrixXd& b = sys.form();
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
    if (eig.eigenvalues().minCoeff() <= 1e-12)
      throw Error(ErrorCode::DegenerateForm, "ambient form is not positive definite");
  }
  const int k = sub.rank();
  Splitting out;
  out.k = k;
  Eigen::MatrixXd roots(n, k);
  for (int j = 0; j < k; ++j) roots.col(j) = sys.roots().col(sys.reflection_root(sub.canonical_generators[j]));
  out.bar_basis = b_orthonormalize(roots, b);

  if (k == 0) {
    out.u_basis = b_orthonormalize(Eigen::MatrixXd::Identity(n, n), b);
    return out;
  }
  // U = common kernel of x -> B(beta_j, x).
  Eigen::MatrixXd constraints = roots.transpose() * b;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(constraints);
  lu.setThreshold(1e-9);
  Eigen::MatrixXd kernel = lu.kernel();
  if (lu.rank() == n) kernel.resize(n, 0);
  out.u_basis = b_orthonormalize(kernel, b);
  return out;
}

bool embeddings_conjugate(const ReflectionSubgroup& a, const ReflectionSubgroup& b) {
  if (a.ambient != b.ambient && !(a.ambient->matrix() == b.ambient->matrix()))
    throw Error(ErrorCode::DifferentAmbient, "subgroups live in different ambient groups");
  if (a.reflections.size() != b.reflections.size()) return false;
  const CoxeterSystem& sys = *a.ambient;
  std::vector<int> image(a.reflections.size());
  for (int w = 0; w < sys.order(); ++w) {
    for (std::size_t i = 0; i < a.reflections.size(); ++i) image[i] = sys.conjugate(w, a.reflections[i]);
    std::sort(image.begin(), image.end());
    if (image == b.reflections) return true;
  }
  return false;
}

std::vector<int> opposition_involution(const CoxeterSystem& sys) {
  const int n = sys.rank();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    const int image = sys.negate(sys.apply(sys.longest(), i));
    if (image >= n) throw Error(ErrorCode::InvalidMatrix, "-w0 does not permute simple roots");
    perm[i] = image;
  }
  return perm;
}

}  // namespace frameforge
