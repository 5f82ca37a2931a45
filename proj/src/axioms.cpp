#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "frameforge/affine.hpp"

namespace frameforge {

bool AxiomReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& AxiomReport::at(std::string_view name) const {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no axiom named " + std::string(name));
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(int n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

Bits intersect(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool intersects(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t word = b[w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      f(static_cast<int>(w * 64 + bit));
      word &= word - 1;
    }
  }
}

std::string describe(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

void record(AxiomResult& r, const std::string& example) {
  ++r.violations;
  r.passed = false;
  if (r.examples.size() < 5) r.examples.push_back(example);
}

/// How two lines of one tree overlap and how the second parametrization
/// reads on the first: t' = eps * t + c. A single shared vertex leaves eps
/// free.
struct LineOverlap {
  int kind = 0;  // 0 empty, 1 single vertex, 2 segment
  int eps = 1;
  int c_plus = 0;
  int c_minus = 0;
  bool convex = true;
  bool isometric = true;
};

std::vector<LineOverlap> overlap_table(const TreeGeometry& geo) {
  const int nl = geo.line_count();
  std::vector<LineOverlap> table(static_cast<std::size_t>(nl) * nl);
  for (int a = 0; a < nl; ++a) {
    for (int b = 0; b < nl; ++b) {
      LineOverlap& o = table[static_cast<std::size_t>(a) * nl + b];
      std::vector<std::pair<int, int>> shared;  // (param on a, param on b)
      for (int v : geo.line(a).path) {
        if (geo.on_line(b, v)) shared.emplace_back(geo.param(a, v), geo.param(b, v));
      }
      if (shared.empty()) continue;
      std::sort(shared.begin(), shared.end());
      o.convex = shared.back().first - shared.front().first + 1 == static_cast<int>(shared.size());
      if (shared.size() == 1) {
        o.kind = 1;
        o.c_plus = shared[0].second - shared[0].first;
        o.c_minus = shared[0].second + shared[0].first;
        continue;
      }
      o.kind = 2;
      o.eps = shared[1].second - shared[0].second > 0 ? 1 : -1;
      o.c_plus = o.c_minus = shared[0].second - o.eps * shared[0].first;
      for (const auto& [p, q] : shared) {
        if (q != o.eps * p + o.c_plus) o.isometric = false;
      }
    }
  }
  return table;
}

class AxiomChecker {
 public:
  explicit AxiomChecker(const AffineModel& model)
      : m_(model), lin_(model.group.linear()), sys_(*lin_.system()), n_(model.dimension()),
        nc_(static_cast<int>(model.charts.size())) {
    int radius = 2;
    for (const auto& f : m_.factors) {
      if (!f.is_flat()) radius = std::max(radius, f.tree->tree().depth());
    }
    points_ = truncation_points(m_, radius);
    for (int i = 0; i < n_; ++i) {
      tree_contains_.emplace_back();
      if (m_.factors[i].is_flat()) continue;
      const TreeGeometry& geo = *m_.factors[i].tree;
      for (int v = 0; v < geo.tree().vertex_count(); ++v) {
        Bits b = make_bits(nc_);
        for (int c = 0; c < nc_; ++c) {
          if (geo.on_line(m_.charts[c].lines[i], v)) set_bit(b, c);
        }
        tree_contains_[i].push_back(std::move(b));
      }
    }
    for (int c = 0; c < nc_; ++c) {
      image_.push_back(image_ids_.emplace(m_.charts[c].lines, static_cast<int>(image_ids_.size())).first->second);
    }
    directions_.resize(sys_.order());
    for (int g = 0; g < sys_.order(); ++g) {
      for (int w = 0; w < sys_.order(); ++w) directions_[g].push_back(lin_.matrix(g) * lin_.matrix(w) * lin_.interior_direction());
    }
  }

  AxiomReport run() {
    AxiomReport report;
    report.results.push_back(a1());
    report.results.push_back(a2());
    report.results.push_back(a3());
    report.results.push_back(gg());
    report.results.push_back(co());
    report.results.push_back(a4());
    return report;
  }

 private:
  Bits contains(const Point& x) const {
    Bits b(make_bits(nc_).size(), ~std::uint64_t{0});
    for (int i = 0; i < n_; ++i) {
      if (!m_.factors[i].is_flat()) b = intersect(b, tree_contains_[i][x[i]]);
    }
    const int tail = nc_ % 64;
    if (tail && !b.empty()) b.back() &= (std::uint64_t{1} << tail) - 1;
    if (nc_ == 0) b.clear();
    return b;
  }

  bool interior(const Point& x) const {
    for (int i = 0; i < n_; ++i) {
      if (!m_.factors[i].is_flat() && m_.factors[i].tree->tree().is_leaf(x[i])) return false;
    }
    return true;
  }

  std::vector<int> key(int chart, int w, const Point& x, bool local) const {
    const Eigen::VectorXi& u = directions_[m_.charts[chart].element.linear][w];
    const auto& lines = m_.charts[chart].lines;
    std::vector<int> k;
    for (int i = 0; i < n_; ++i) {
      const int sg = (u[i] > 0) - (u[i] < 0);
      if (m_.factors[i].is_flat()) {
        k.push_back(sg);
      } else {
        const TreeGeometry& geo = *m_.factors[i].tree;
        k.push_back(local ? geo.vertex_at(lines[i], geo.param(lines[i], x[i]) + sg) : geo.end(lines[i], sg));
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const int a = std::abs(u[i]);
        const int b = std::abs(u[j]);
        k.push_back(a > b ? 0 : (a < b ? 1 : 2));
      }
    }
    return k;
  }

  bool opposite(const std::vector<int>& a, const std::vector<int>& b) const {
    for (int i = 0; i < n_; ++i) {
      if (m_.factors[i].is_flat() ? a[i] != -b[i] : a[i] == b[i]) return false;
    }
    return std::equal(a.begin() + n_, a.end(), b.begin() + n_);
  }

  AxiomResult a1() const {
    AxiomResult r;
    r.name = "(A1)";
    if (m_.closed_under_group) {
      r.checked = static_cast<long>(nc_) * static_cast<long>(m_.group.generators().size());
      r.note = "atlas is the W_T-orbit of its charts";
      return r;
    }
    auto chart_id = [](const Chart& c) {
      std::ostringstream os;
      for (int l : c.lines) os << l << ",";
      os << "|" << c.element.linear << "|";
      for (Eigen::Index i = 0; i < c.element.translation.size(); ++i) os << to_string(c.element.translation[i]) << ",";
      return os.str();
    };
    std::set<std::string> atlas;
    for (const auto& c : m_.charts) atlas.insert(chart_id(c));
    const auto gens = m_.group.generators();
    for (int c = 0; c < nc_; ++c) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        ++r.checked;
        Chart moved{m_.charts[c].lines, m_.group.compose(m_.charts[c].element, gens[g])};
        if (!atlas.count(chart_id(moved)))
          record(r, "chart " + std::to_string(c) + " composed with generator " + std::to_string(g) + " is missing");
      }
    }
    return r;
  }

  AxiomResult a2() {
    AxiomResult r;
    r.name = "(A2)";
    r.note = "overlaps checked as products of tree segments; transitions recovered as W_T elements";
    std::vector<std::vector<LineOverlap>> tables(n_);
    for (int i = 0; i < n_; ++i) {
      if (!m_.factors[i].is_flat()) tables[i] = overlap_table(*m_.factors[i].tree);
    }
    // Distinct chart elements, so transitions can be memoized.
    std::vector<int> element_id(nc_);
    std::vector<AffineElement> elements;
    for (int c = 0; c < nc_; ++c) {
      auto it = std::find(elements.begin(), elements.end(), m_.charts[c].element);
      element_id[c] = static_cast<int>(it - elements.begin());
      if (it == elements.end()) elements.push_back(m_.charts[c].element);
    }
    std::unordered_map<std::uint64_t, bool> memo;
    auto transition_ok = [&](int f, int g, const std::vector<int>& eps, const std::vector<int>& c) {
      std::uint64_t k = static_cast<std::uint64_t>(element_id[f]) * elements.size() + element_id[g];
      for (int i = 0; i < n_; ++i) k = k * 2 + (eps[i] > 0);
      for (int i = 0; i < n_; ++i) k = k * 1024 + static_cast<std::uint64_t>(c[i] + 512);
      auto it = memo.find(k);
      if (it != memo.end()) return it->second;
      Eigen::MatrixXi e = Eigen::MatrixXi::Zero(n_, n_);
      RVector shift(n_);
      for (int i = 0; i < n_; ++i) {
        e(i, i) = eps[i];
        shift[i] = c[i];
      }
      const AffineElement& ef = elements[element_id[f]];
      const AffineElement& eg = elements[element_id[g]];
      const Eigen::MatrixXi mg_inv = lin_.matrix(eg.linear).transpose();
      const Eigen::MatrixXi linear = mg_inv * e * lin_.matrix(ef.linear);
      const RVector translation = to_rational(mg_inv) * RVector(to_rational(e) * ef.translation + shift - eg.translation);
      const bool ok = m_.group.contains(linear, translation);
      memo.emplace(k, ok);
      return ok;
    };

    std::vector<int> eps(n_), c(n_);
    for (int f = 0; f < nc_; ++f) {
      for (int g = f + 1; g < nc_; ++g) {
        std::vector<const LineOverlap*> parts(n_, nullptr);
        bool empty = false;
        for (int i = 0; i < n_ && !empty; ++i) {
          if (m_.factors[i].is_flat()) continue;
          const int nl = m_.factors[i].tree->line_count();
          parts[i] = &tables[i][static_cast<std::size_t>(m_.charts[f].lines[i]) * nl + m_.charts[g].lines[i]];
          empty = parts[i]->kind == 0;
        }
        if (empty) continue;
        ++r.checked;
        bool convex = true;
        for (int i = 0; i < n_; ++i) {
          if (parts[i] && (!parts[i]->convex || !parts[i]->isometric)) convex = false;
        }
        if (!convex) {
          record(r, "charts " + std::to_string(f) + " and " + std::to_string(g) + " overlap in a non-convex set");
          continue;
        }
        // Enumerate the free orientations of single-vertex overlaps.
        std::vector<int> free;
        for (int i = 0; i < n_; ++i) {
          if (parts[i] && parts[i]->kind == 1) free.push_back(i);
        }
        bool ok = false;
        for (int mask = 0; mask < (1 << free.size()) && !ok; ++mask) {
          for (int i = 0; i < n_; ++i) {
            if (!parts[i]) {
              eps[i] = 1;
              c[i] = 0;
            } else if (parts[i]->kind == 2) {
              eps[i] = parts[i]->eps;
              c[i] = parts[i]->c_plus;
            }
          }
          for (std::size_t b = 0; b < free.size(); ++b) {
            const int i = free[b];
            eps[i] = (mask >> b) & 1 ? -1 : 1;
            c[i] = eps[i] > 0 ? parts[i]->c_plus : parts[i]->c_minus;
          }
          ok = transition_ok(f, g, eps, c);
        }
        if (!ok) record(r, "transition between charts " + std::to_string(f) + " and " + std::to_string(g) + " is not in W_T");
      }
    }
    return r;
  }

  AxiomResult a3() const {
    AxiomResult r;
    r.name = "(A3)";
    r.note = "all pairs of truncation vertices";
    std::vector<Bits> cover;
    for (const auto& p : points_) cover.push_back(contains(p));
    for (std::size_t a = 0; a < points_.size(); ++a) {
      for (std::size_t b = a; b < points_.size(); ++b) {
        ++r.checked;
        if (!intersects(cover[a], cover[b]))
          record(r, "no chart contains " + describe(points_[a]) + " and " + describe(points_[b]));
      }
    }
    return r;
  }

  /// Germs (local) or Weyl chambers (ends) based at x, each with the charts
  /// realizing it.
  std::map<std::vector<int>, std::pair<std::vector<int>, Bits>> based_at(const Point& x) const {
    std::map<std::vector<int>, std::pair<std::vector<int>, Bits>> out;
    const Bits candidates = contains(x);
    for_each_bit(candidates, [&](int chart) {
      if (!chart_based_at(m_, chart, x)) return;
      for (int w = 0; w < sys_.order(); ++w) {
        auto [it, fresh] = out.try_emplace(key(chart, w, x, false));
        if (fresh) {
          it->second.first = key(chart, w, x, true);
          it->second.second = make_bits(nc_);
        }
        set_bit(it->second.second, chart);
      }
    });
    return out;
  }

  AxiomResult gg() const {
    AxiomResult r;
    r.name = "(GG)";
    r.note = "germ pairs at interior truncation vertices";
    for (const auto& x : points_) {
      if (!interior(x)) continue;
      std::map<std::vector<int>, Bits> germs;
      for (const auto& [chamber, data] : based_at(x)) {
        auto [it, fresh] = germs.try_emplace(data.first, make_bits(nc_));
        for (std::size_t i = 0; i < it->second.size(); ++i) it->second[i] |= data.second[i];
      }
      for (auto a = germs.begin(); a != germs.end(); ++a) {
        for (auto b = a; b != germs.end(); ++b) {
          ++r.checked;
          if (!intersects(a->second, b->second)) record(r, "two germs at " + describe(x) + " share no apartment");
        }
      }
    }
    return r;
  }

  AxiomResult co() const {
    AxiomResult r;
    r.name = "(CO)";
    r.note = "opposite Weyl chamber pairs at interior truncation vertices; apartments counted by image";
    for (const auto& x : points_) {
      if (!interior(x)) continue;
      const auto chambers = based_at(x);
      for (auto a = chambers.begin(); a != chambers.end(); ++a) {
        for (auto b = std::next(a); b != chambers.end(); ++b) {
          if (!opposite(a->second.first, b->second.first)) continue;
          ++r.checked;
          std::set<int> images;
          for_each_bit(intersect(a->second.second, b->second.second), [&](int c) { images.insert(image_[c]); });
          if (images.size() != 1)
            record(r, "opposite chambers at " + describe(x) + " lie in " + std::to_string(images.size()) + " apartments");
        }
      }
    }
    return r;
  }

  AxiomResult a4() const {
    AxiomResult r;
    r.name = "(A4)";
    r.note = "pairs of Weyl chamber directions; sub-Weyl chambers exist in any chart carrying both";
    std::map<std::vector<int>, Bits> classes;
    for (int c = 0; c < nc_; ++c) {
      for (int w = 0; w < sys_.order(); ++w) {
        auto [it, fresh] = classes.try_emplace(key(c, w, Point(n_, 0), false), make_bits(nc_));
        set_bit(it->second, c);
      }
    }
    for (auto a = classes.begin(); a != classes.end(); ++a) {
      for (auto b = a; b != classes.end(); ++b) {
        ++r.checked;
        if (!intersects(a->second, b->second)) record(r, "two Weyl chamber directions share no apartment");
      }
    }
    return r;
  }

  const AffineModel& m_;
  const LinearRealization& lin_;
  const CoxeterSystem& sys_;
  int n_;
  int nc_;
  std::vector<Point> points_;
  std::vector<std::vector<Bits>> tree_contains_;
  std::map<std::vector<int>, int> image_ids_;
  std::vector<int> image_;
  std::vector<std::vector<Eigen::VectorXi>> directions_;
};

}  // namespace

AxiomReport check_axioms(const AffineModel& model) { return AxiomChecker(model).run(); }

}  // namespace frameforge
