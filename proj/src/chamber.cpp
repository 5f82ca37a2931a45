#include "frameforge/chamber.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace frameforge {

ChamberComplex::ChamberComplex(CoxeterSystemPtr type, int chamber_count,
                               std::vector<std::vector<std::vector<int>>> panels,
                               std::vector<Apartment> apartments)
    : type_(std::move(type)), chamber_count_(chamber_count), panels_(std::move(panels)),
      apartments_(std::move(apartments)) {
  const int n = type_->rank();
  if (static_cast<int>(panels_.size()) != n)
    throw Error(ErrorCode::TypeMismatch, "panel lists do not match the rank of the type");
  panel_of_.assign(n, std::vector<int>(chamber_count_, -1));
  for (int s = 0; s < n; ++s) {
    for (auto& p : panels_[s]) {
      if (p.size() < 2)
        throw Error(ErrorCode::PanelTooSmall, "a panel of type " + std::to_string(s) + " has fewer than 2 chambers");
      std::sort(p.begin(), p.end());
    }
    std::sort(panels_[s].begin(), panels_[s].end());
    for (int pid = 0; pid < static_cast<int>(panels_[s].size()); ++pid) {
      for (int c : panels_[s][pid]) {
        if (c < 0 || c >= chamber_count_)
          throw Error(ErrorCode::Parse, "panel refers to unknown chamber " + std::to_string(c));
        if (panel_of_[s][c] != -1)
          throw Error(ErrorCode::Parse, "chamber " + std::to_string(c) + " lies in two panels of type " + std::to_string(s));
        panel_of_[s][c] = pid;
      }
    }
    for (int c = 0; c < chamber_count_; ++c) {
      if (panel_of_[s][c] == -1)
        throw Error(ErrorCode::PanelTooSmall, "chamber " + std::to_string(c) + " has no panel of type " + std::to_string(s));
    }
  }
  for (const auto& a : apartments_) {
    if (static_cast<int>(a.chamber_of.size()) != type_->order())
      throw Error(ErrorCode::TypeMismatch, "apartment size differs from the order of the type");
    for (int c : a.chamber_of) {
      if (c < 0 || c >= chamber_count_) throw Error(ErrorCode::Parse, "apartment refers to unknown chamber");
    }
  }
}

std::vector<int> ChamberComplex::neighbours(int chamber) const {
  std::vector<int> out;
  for (int s = 0; s < rank(); ++s) {
    for (int c : panels_[s][panel_of_[s][chamber]]) {
      if (c != chamber) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Thickness Thickness::of(int chamber_count) {
  if (chamber_count < 2) throw Error(ErrorCode::PanelTooSmall, "panel with fewer than 2 chambers");
  return chamber_count == 2 ? Thickness{Kind::Thin, 2} : Thickness{Kind::Thick, chamber_count};
}

ChamberComplex trivial_complex() {
  static const CoxeterSystemPtr trivial = build_system(CoxeterMatrix(Eigen::MatrixXi(0, 0)));
  return ChamberComplex(trivial, 1, {}, {Apartment{{0}}});
}

ChamberComplex coxeter_complex(const CoxeterSystemPtr& sys) {
  const int n = sys->rank();
  std::vector<std::vector<std::vector<int>>> panels(n);
  for (int s = 0; s < n; ++s) {
    for (int w = 0; w < sys->order(); ++w) {
      const int ws = sys->right_multiply(w, s);
      if (w < ws) panels[s].push_back({w, ws});
    }
  }
  Apartment identity;
  identity.chamber_of.resize(sys->order());
  for (int w = 0; w < sys->order(); ++w) identity.chamber_of[w] = w;
  return ChamberComplex(sys, sys->order(), std::move(panels), {std::move(identity)});
}

ChamberComplex rank_one_building(int points) {
  static const CoxeterSystemPtr a1 = build_system("A1");
  if (points < 2) throw Error(ErrorCode::PanelTooSmall, "a rank-1 building needs at least 2 chambers");
  std::vector<int> all(points);
  for (int i = 0; i < points; ++i) all[i] = i;
  std::vector<Apartment> apartments;
  const int s = a1->generator(0);
  for (int a = 0; a < points; ++a) {
    for (int b = a + 1; b < points; ++b) {
      Apartment ap;
      ap.chamber_of.assign(2, 0);
      ap.chamber_of[CoxeterSystem::identity()] = a;
      ap.chamber_of[s] = b;
      apartments.push_back(std::move(ap));
    }
  }
  return ChamberComplex(a1, points, {{all}}, std::move(apartments));
}

ChamberComplex join(const ChamberComplex& a, const ChamberComplex& b) {
  const int na = a.rank();
  const int nb = b.rank();
  CoxeterSystemPtr sys = build_system(direct_sum(a.system().matrix(), b.system().matrix()));
  const int cb = b.chamber_count();
  auto id = [cb](int x, int y) { return x * cb + y; };

  std::vector<std::vector<std::vector<int>>> panels(na + nb);
  for (int s = 0; s < na; ++s) {
    for (const auto& p : a.panels(s)) {
      for (int y = 0; y < cb; ++y) {
        std::vector<int> q;
        for (int x : p) q.push_back(id(x, y));
        panels[s].push_back(std::move(q));
      }
    }
  }
  for (int s = 0; s < nb; ++s) {
    for (const auto& p : b.panels(s)) {
      for (int x = 0; x < a.chamber_count(); ++x) {
        std::vector<int> q;
        for (int y : p) q.push_back(id(x, y));
        panels[na + s].push_back(std::move(q));
      }
    }
  }

  // Split each product element into its two factor elements.
  std::vector<std::pair<int, int>> factors(sys->order());
  for (int w = 0; w < sys->order(); ++w) {
    std::vector<int> wa, wb;
    for (int s : sys->word(w)) {
      if (s < na) wa.push_back(s);
      else wb.push_back(s - na);
    }
    factors[w] = {a.system().element_of_word(wa), b.system().element_of_word(wb)};
  }
  std::vector<Apartment> apartments;
  for (const auto& apa : a.apartments()) {
    for (const auto& apb : b.apartments()) {
      Apartment ap;
      ap.chamber_of.resize(sys->order());
      for (int w = 0; w < sys->order(); ++w)
        ap.chamber_of[w] = id(apa.chamber_of[factors[w].first], apb.chamber_of[factors[w].second]);
      apartments.push_back(std::move(ap));
    }
  }
  return ChamberComplex(sys, a.chamber_count() * cb, std::move(panels), std::move(apartments));
}

Thickness panel_thickness(const ChamberComplex& cx, int s, int panel_id) {
  if (s < 0 || s >= cx.rank() || panel_id < 0 || panel_id >= cx.panel_count(s))
    throw Error(ErrorCode::TypeMismatch, "panel id out of range");
  return Thickness::of(static_cast<int>(cx.panel(s, panel_id).size()));
}

Wall wall(const ChamberComplex& cx, int apartment, int reflection) {
  const CoxeterSystem& sys = cx.system();
  if (!sys.is_reflection(reflection))
    throw Error(ErrorCode::NotAReflection, "element " + std::to_string(reflection));
  const auto& ap = cx.apartments().at(apartment);
  std::set<std::pair<int, int>> panels;
  for (int w = 0; w < sys.order(); ++w) {
    for (int s = 0; s < sys.rank(); ++s) {
      if (sys.generator_conjugate(w, s) == reflection) panels.emplace(s, cx.panel_of(s, ap.chamber_of[w]));
    }
  }
  return Wall{apartment, reflection, {panels.begin(), panels.end()}};
}

Thickness wall_thickness(const ChamberComplex& cx, int apartment, int reflection) {
  const Wall m = wall(cx, apartment, reflection);
  const Thickness first = panel_thickness(cx, m.panels.front().first, m.panels.front().second);
  for (const auto& [s, pid] : m.panels) {
    if (panel_thickness(cx, s, pid).is_thick() != first.is_thick())
      throw Error(ErrorCode::MixedWall, "wall of reflection " + std::to_string(reflection) + " in apartment " +
                                            std::to_string(apartment) + " carries thick and thin panels");
  }
  return first;
}

std::vector<int> fold(const ChamberComplex& cx, int apartment, int reflection, int side) {
  if (side != 1 && side != -1) throw Error(ErrorCode::InvalidSide, "side must be +1 or -1");
  const CoxeterSystem& sys = cx.system();
  const int beta = sys.reflection_root(reflection);
  const auto& ap = cx.apartments().at(apartment);
  std::vector<int> image(cx.chamber_count(), -1);
  for (int w = 0; w < sys.order(); ++w) {
    // wC lies on the side of A(1) iff w^{-1}(beta) is positive.
    const bool with_identity = sys.is_positive(sys.apply(sys.inverse(w), beta));
    const bool keep = (side == 1) == with_identity;
    image[ap.chamber_of[w]] = keep ? ap.chamber_of[w] : ap.chamber_of[sys.multiply(reflection, w)];
  }
  return image;
}

void ValidationReport::add(std::string message) {
  valid = false;
  ++violation_count;
  if (violations.size() < 20) violations.push_back(std::move(message));
}

ValidationReport validate_building(const ChamberComplex& cx) {
  ValidationReport report;
  const CoxeterSystem& sys = cx.system();
  const int nc = cx.chamber_count();
  const int na = static_cast<int>(cx.apartments().size());
  if (na == 0) {
    report.add("no apartments supplied");
    return report;
  }

  // Inverse apartment maps: element of W labelling chamber c, or -1.
  std::vector<std::vector<int>> label(na, std::vector<int>(nc, -1));
  for (int a = 0; a < na; ++a) {
    const auto& ap = cx.apartments()[a];
    for (int w = 0; w < sys.order(); ++w) {
      int& slot = label[a][ap.chamber_of[w]];
      if (slot != -1) {
        report.add("apartment " + std::to_string(a) + " is not injective at chamber " +
                   std::to_string(ap.chamber_of[w]));
      }
      slot = w;
      for (int s = 0; s < sys.rank(); ++s) {
        const int c = ap.chamber_of[w];
        const int d = ap.chamber_of[sys.right_multiply(w, s)];
        if (c == d || cx.panel_of(s, c) != cx.panel_of(s, d)) {
          report.add("apartment " + std::to_string(a) + " does not map the " + std::to_string(s) +
                     "-adjacent pair at element " + std::to_string(w) + " to adjacent chambers");
        }
      }
    }
  }

  // Every pair of chambers lies in a common apartment.
  std::vector<std::vector<bool>> covered(nc, std::vector<bool>(nc, false));
  for (const auto& ap : cx.apartments()) {
    for (int x : ap.chamber_of)
      for (int y : ap.chamber_of) covered[x][y] = true;
  }
  for (int x = 0; x < nc; ++x) {
    for (int y = x + 1; y < nc; ++y) {
      if (!covered[x][y])
        report.add("chambers " + std::to_string(x) + " and " + std::to_string(y) + " share no apartment");
    }
  }

  // Two apartments sharing chambers a, b admit a type-preserving isomorphism
  // fixing both. Type-preserving isomorphisms are left multiplications, and
  // the one fixing a is unique, so the left factor must be constant on the
  // intersection.
  for (int a = 0; a < na; ++a) {
    const auto& apa = cx.apartments()[a];
    for (int b = a + 1; b < na; ++b) {
      int u = -1;
      int first = -1;
      for (int w = 0; w < sys.order(); ++w) {
        const int c = apa.chamber_of[w];
        const int v = label[b][c];
        if (v < 0) continue;
        const int shift = sys.multiply(v, sys.inverse(w));
        if (u < 0) {
          u = shift;
          first = c;
        } else if (shift != u) {
          report.add("apartments " + std::to_string(a) + " and " + std::to_string(b) +
                     " admit no isomorphism fixing chambers " + std::to_string(first) + " and " +
                     std::to_string(c));
          break;
        }
      }
    }
  }
  return report;
}

std::vector<int> gallery_distances(const ChamberComplex& cx, int from) {
  std::vector<int> dist(cx.chamber_count(), -1);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int s = 0; s < cx.rank(); ++s) {
      for (int d : cx.panel(s, cx.panel_of(s, c))) {
        if (dist[d] == -1) {
          dist[d] = dist[c] + 1;
          queue.push_back(d);
        }
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> minimal_galleries(const ChamberComplex& cx, int from, int to) {
  if (from < 0 || from >= cx.chamber_count() || to < 0 || to >= cx.chamber_count())
    throw Error(ErrorCode::Disconnected, "chamber id out of range");
  const std::vector<int> dist = gallery_distances(cx, from);
  if (dist[to] < 0) throw Error(ErrorCode::Disconnected, "no gallery between the chambers");

  // Walk back from `to` along strictly decreasing distance.
  std::vector<std::vector<int>> out;
  std::vector<int> path{to};
  auto extend = [&](auto&& self) -> void {
    const int c = path.back();
    if (c == from) {
      out.emplace_back(path.rbegin(), path.rend());
      return;
    }
    for (int d : cx.neighbours(c)) {
      if (dist[d] == dist[c] - 1) {
        path.push_back(d);
        self(self);
        path.pop_back();
      }
    }
  };
  extend(extend);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_thick(const ChamberComplex& cx) {
  for (int s = 0; s < cx.rank(); ++s) {
    for (const auto& p : cx.panels(s)) {
      if (p.size() < 3) return false;
    }
  }
  return true;
}

}  // namespace frameforge
