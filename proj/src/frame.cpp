#include "frameforge/frame.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "frameforge/union_find.hpp"

namespace frameforge {

ThinClasses thin_classes(const ChamberComplex& cx) {
  UnionFind uf(cx.chamber_count());
  for (int s = 0; s < cx.rank(); ++s) {
    for (const auto& p : cx.panels(s)) {
      if (p.size() == 2) uf.unite(p[0], p[1]);
    }
  }
  ThinClasses out;
  out.class_of = uf.labels();
  for (int c = 0; c < cx.chamber_count(); ++c) {
    const int k = out.class_of[c];
    if (k >= static_cast<int>(out.classes.size())) out.classes.resize(k + 1);
    out.classes[k].push_back(c);
  }
  return out;
}

namespace {

[[noreturn]] void inconsistent(const std::string& what) { throw Error(ErrorCode::InconsistentTyping, what); }

/// Minimal coset representatives of the subgroup generated by the
/// reflections in `walls`: elements reached from 1 without crossing them.
std::vector<int> chamber_region(const CoxeterSystem& sys, const std::vector<int>& walls) {
  std::vector<int> region{CoxeterSystem::identity()};
  std::set<int> seen{CoxeterSystem::identity()};
  for (std::size_t head = 0; head < region.size(); ++head) {
    const int d = region[head];
    for (int s = 0; s < sys.rank(); ++s) {
      if (std::binary_search(walls.begin(), walls.end(), sys.generator_conjugate(d, s))) continue;
      const int ds = sys.right_multiply(d, s);
      if (seen.insert(ds).second) region.push_back(ds);
    }
  }
  return region;
}

/// Typing of one apartment labelling by its own thick reflections.
struct LocalTyping {
  ReflectionSubgroup sub;
  std::vector<int> label;  // (w, s) -> canonical generator index, -1 if thin
};

LocalTyping local_typing(const CoxeterSystemPtr& sys, const std::vector<int>& thick) {
  LocalTyping lt;
  lt.sub = reflection_subgroup(sys, thick);
  if (lt.sub.reflections != thick) inconsistent("reflections along thick walls are not closed under conjugation");
  const std::vector<int> region = chamber_region(*sys, thick);
  if (region.size() * lt.sub.elements.size() != static_cast<std::size_t>(sys->order()))
    inconsistent("thick walls do not cut the apartment into equal regions");
  const int n = sys->rank();
  std::vector<int> d_part(sys->order(), -1);
  for (int u : lt.sub.elements) {
    for (int d : region) {
      const int w = sys->multiply(u, d);
      if (d_part[w] != -1) inconsistent("coset factorization is not unique");
      d_part[w] = d;
    }
  }
  lt.label.assign(static_cast<std::size_t>(sys->order()) * n, -1);
  for (int w = 0; w < sys->order(); ++w) {
    for (int s = 0; s < n; ++s) {
      if (!lt.sub.contains_reflection(sys->generator_conjugate(w, s))) continue;
      const int t = sys->generator_conjugate(d_part[w], s);
      auto it = std::find(lt.sub.canonical_generators.begin(), lt.sub.canonical_generators.end(), t);
      if (it == lt.sub.canonical_generators.end()) inconsistent("thick panel does not bound its thin-class region");
      lt.label[static_cast<std::size_t>(w) * n + s] = static_cast<int>(it - lt.sub.canonical_generators.begin());
    }
  }
  return lt;
}

}  // namespace

FrameResult thick_frame(const ChamberComplex& cx) {
  const CoxeterSystemPtr& sys = cx.type();
  const int n = sys->rank();
  const int na = static_cast<int>(cx.apartments().size());
  if (na == 0) inconsistent("building has no apartments");
  ThinClasses classes = thin_classes(cx);

  std::vector<std::vector<int>> thick(na);
  for (int a = 0; a < na; ++a) {
    for (int r : sys->reflections()) {
      if (wall_thickness(cx, a, r).is_thick()) thick[a].push_back(r);
    }
    std::sort(thick[a].begin(), thick[a].end());
  }

  if (thick[0].empty()) {
    for (const auto& t : thick) {
      if (!t.empty()) inconsistent("apartments disagree on the existence of thick walls");
    }
    if (classes.classes.size() != 1) inconsistent("thin building is not gallery connected");
    FrameResult out{trivial_complex(), std::vector<int>(cx.chamber_count(), 0),
                    reflection_subgroup(sys, std::vector<int>{}), std::vector<int>(na, 0), std::move(classes)};
    return out;
  }

  std::map<std::vector<int>, LocalTyping> typings;
  for (const auto& t : thick) {
    if (!typings.count(t)) typings.emplace(t, local_typing(sys, t));
  }
  auto typing = [&](int a) -> const LocalTyping& { return typings.at(thick[a]); };
  const ReflectionSubgroup& base = typing(0).sub;
  const int k = base.rank();

  // Inverse apartment labels and chamber -> apartments incidence.
  std::vector<std::vector<int>> label(na, std::vector<int>(cx.chamber_count(), -1));
  std::vector<std::vector<int>> containing(cx.chamber_count());
  for (int a = 0; a < na; ++a) {
    const auto& ap = cx.apartments()[a];
    for (int w = 0; w < sys->order(); ++w) {
      label[a][ap.chamber_of[w]] = w;
      containing[ap.chamber_of[w]].push_back(a);
    }
  }

  // Transport the base labelling of frame types through overlapping apartments.
  std::vector<std::vector<int>> sigma(na);
  sigma[0].resize(k);
  for (int j = 0; j < k; ++j) sigma[0][j] = j;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    const LocalTyping& la = typing(a);
    for (int wa = 0; wa < sys->order(); ++wa) {
      for (int b : containing[cx.apartments()[a].chamber_of[wa]]) {
        if (!sigma[b].empty()) continue;
        const LocalTyping& lb = typing(b);
        if (lb.sub.rank() != k) inconsistent("apartments carry subgroups of different rank");
        std::vector<int> sb(k, -1);
        for (int w = 0; w < sys->order(); ++w) {
          const int c = cx.apartments()[a].chamber_of[w];
          const int wb = label[b][c];
          if (wb < 0) continue;
          for (int s = 0; s < n; ++s) {
            const int ja = la.label[static_cast<std::size_t>(w) * n + s];
            const int jb = lb.label[static_cast<std::size_t>(wb) * n + s];
            if ((ja < 0) != (jb < 0)) inconsistent("a panel is thick in one apartment and thin in another");
            if (ja < 0) continue;
            if (sb[jb] != -1 && sb[jb] != sigma[a][ja]) inconsistent("frame types cannot be transported consistently");
            sb[jb] = sigma[a][ja];
          }
        }
        std::vector<int> check = sb;
        std::sort(check.begin(), check.end());
        for (int j = 0; j < k; ++j) {
          if (check[j] != j) inconsistent("overlap of apartments does not determine all frame types");
        }
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            if (lb.sub.matrix(i, j) != base.matrix(sb[i], sb[j]))
              inconsistent("transported frame types do not preserve the Coxeter matrix");
          }
        }
        sigma[b] = std::move(sb);
        queue.push_back(b);
      }
    }
  }
  for (int a = 0; a < na; ++a) {
    if (sigma[a].empty()) inconsistent("apartment system is not connected");
  }

  // Global sweep: every building panel gets exactly one frame type.
  std::vector<std::vector<int>> panel_type(n);
  for (int s = 0; s < n; ++s) panel_type[s].assign(cx.panel_count(s), -2);
  for (int a = 0; a < na; ++a) {
    const LocalTyping& la = typing(a);
    for (int w = 0; w < sys->order(); ++w) {
      for (int s = 0; s < n; ++s) {
        const int j = la.label[static_cast<std::size_t>(w) * n + s];
        const int global = j < 0 ? -1 : sigma[a][j];
        int& slot = panel_type[s][cx.panel_of(s, cx.apartments()[a].chamber_of[w])];
        if (slot == -2) slot = global;
        else if (slot != global) inconsistent("a panel receives two different frame types");
      }
    }
  }

  const int nclasses = static_cast<int>(classes.classes.size());
  std::vector<std::vector<std::vector<int>>> frame_panels(k);
  for (int j = 0; j < k; ++j) {
    UnionFind uf(nclasses);
    for (int s = 0; s < n; ++s) {
      for (int pid = 0; pid < cx.panel_count(s); ++pid) {
        if (panel_type[s][pid] != j) continue;
        const auto& p = cx.panel(s, pid);
        for (int c : p) uf.unite(classes.class_of[p[0]], classes.class_of[c]);
      }
    }
    const std::vector<int> lab = uf.labels();
    for (int x = 0; x < nclasses; ++x) {
      if (lab[x] >= static_cast<int>(frame_panels[j].size())) frame_panels[j].resize(lab[x] + 1);
      frame_panels[j][lab[x]].push_back(x);
    }
  }

  CoxeterSystemPtr frame_sys = build_system(base.matrix);
  std::vector<Apartment> frame_apartments;
  for (int a = 0; a < na; ++a) {
    const LocalTyping& la = typing(a);
    std::vector<int> inv(k);
    for (int j = 0; j < k; ++j) inv[sigma[a][j]] = j;
    // Elements are enumerated breadth-first, so a word's prefix comes first.
    std::vector<int> ambient(frame_sys->order(), CoxeterSystem::identity());
    Apartment ap;
    ap.chamber_of.resize(frame_sys->order());
    for (int e = 0; e < frame_sys->order(); ++e) {
      const auto& word = frame_sys->word(e);
      if (!word.empty()) {
        const int prefix = frame_sys->element_of_word(std::span<const int>(word.data(), word.size() - 1));
        ambient[e] = sys->multiply(ambient[prefix], la.sub.canonical_generators[inv[word.back()]]);
      }
      ap.chamber_of[e] = classes.class_of[cx.apartments()[a].chamber_of[ambient[e]]];
    }
    frame_apartments.push_back(std::move(ap));
  }

  std::vector<int> apartment_map(na);
  for (int a = 0; a < na; ++a) apartment_map[a] = a;
  try {
    ChamberComplex frame(frame_sys, nclasses, std::move(frame_panels), std::move(frame_apartments));
    return FrameResult{std::move(frame), classes.class_of, base, std::move(apartment_map), std::move(classes)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PanelTooSmall) inconsistent(std::string("frame panel too small: ") + e.what());
    throw;
  }
}

ChamberComplex suspend(const ChamberComplex& frame_building, const ReflectionSubgroup& embedding) {
  const CoxeterSystemPtr& sys = embedding.ambient;
  const CoxeterSystem& bar = frame_building.system();
  const int k = bar.rank();
  if (static_cast<int>(embedding.embedding.size()) != k || embedding.rank() != k)
    throw Error(ErrorCode::TypeMismatch, "embedding rank differs from the rank of the building");
  if (!(embedding_matrix(embedding) == bar.matrix()))
    throw Error(ErrorCode::TypeMismatch, "embedded generators do not satisfy the building's Coxeter matrix");
  if (sys->rank() < k) throw Error(ErrorCode::TypeMismatch, "ambient rank is smaller than the subgroup rank");
  if (!is_thick(frame_building)) throw Error(ErrorCode::NotThick, "the building to suspend must be thick");

  // Conjugate within the subgroup so the given simple images become the
  // canonical generators.
  const auto& canon = embedding.canonical_generators;
  std::vector<int> pi;
  for (int u : embedding.elements) {
    std::vector<int> candidate;
    for (int g : embedding.embedding) {
      const int t = sys->conjugate(sys->inverse(u), g);
      auto it = std::find(canon.begin(), canon.end(), t);
      if (it == canon.end()) break;
      candidate.push_back(static_cast<int>(it - canon.begin()));
    }
    if (static_cast<int>(candidate.size()) != k) continue;
    std::vector<int> sorted = candidate;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    pi = std::move(candidate);
    break;
  }
  if (static_cast<int>(pi.size()) != k)
    throw Error(ErrorCode::EmbeddingNotNormalizable, "embedded generators are not a simple system of the subgroup");
  std::vector<int> abstract_of_canonical(k);
  for (int j = 0; j < k; ++j) abstract_of_canonical[pi[j]] = j;

  const std::vector<int> region = chamber_region(*sys, embedding.reflections);
  if (region.size() * embedding.elements.size() != static_cast<std::size_t>(sys->order()))
    throw Error(ErrorCode::EmbeddingNotNormalizable, "subgroup walls do not tile the ambient complex");
  std::map<int, int> region_index;
  for (int i = 0; i < static_cast<int>(region.size()); ++i) region_index[region[i]] = i;
  const int nd = static_cast<int>(region.size());
  auto id = [nd](int cbar, int di) { return cbar * nd + di; };

  const int n = sys->rank();
  std::vector<std::vector<std::vector<int>>> panels(n);
  for (int s = 0; s < n; ++s) {
    for (int di = 0; di < nd; ++di) {
      const int d = region[di];
      auto it = region_index.find(sys->right_multiply(d, s));
      if (it != region_index.end()) {
        if (di < it->second) {
          for (int c = 0; c < frame_building.chamber_count(); ++c) panels[s].push_back({id(c, di), id(c, it->second)});
        }
        continue;
      }
      const int t = sys->generator_conjugate(d, s);
      auto ct = std::find(canon.begin(), canon.end(), t);
      if (ct == canon.end())
        throw Error(ErrorCode::EmbeddingNotNormalizable, "crossed wall is not a canonical generator");
      const int j = abstract_of_canonical[ct - canon.begin()];
      for (const auto& p : frame_building.panels(j)) {
        std::vector<int> q;
        for (int c : p) q.push_back(id(c, di));
        panels[s].push_back(std::move(q));
      }
    }
  }

  // Ambient subgroup elements -> elements of the building's type.
  std::map<int, int> abstract_of;
  abstract_of[CoxeterSystem::identity()] = CoxeterSystem::identity();
  std::deque<int> queue{CoxeterSystem::identity()};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int j = 0; j < k; ++j) {
      const int v = sys->multiply(u, canon[pi[j]]);
      if (!abstract_of.count(v)) {
        abstract_of[v] = bar.right_multiply(abstract_of[u], j);
        queue.push_back(v);
      }
    }
  }

  std::vector<std::pair<int, int>> factor(sys->order(), {-1, -1});  // w -> (abstract u, region index)
  for (int u : embedding.elements) {
    for (int di = 0; di < nd; ++di) factor[sys->multiply(u, region[di])] = {abstract_of.at(u), di};
  }
  std::vector<Apartment> apartments;
  for (const auto& bar_ap : frame_building.apartments()) {
    Apartment ap;
    ap.chamber_of.resize(sys->order());
    for (int w = 0; w < sys->order(); ++w) ap.chamber_of[w] = id(bar_ap.chamber_of[factor[w].first], factor[w].second);
    apartments.push_back(std::move(ap));
  }
  return ChamberComplex(sys, frame_building.chamber_count() * nd, std::move(panels), std::move(apartments));
}

namespace {

std::set<std::vector<int>> apartment_sets(const ChamberComplex& cx, const std::vector<int>* relabel) {
  std::set<std::vector<int>> out;
  for (const auto& ap : cx.apartments()) {
    std::vector<int> members;
    for (int c : ap.chamber_of) members.push_back(relabel ? (*relabel)[c] : c);
    std::sort(members.begin(), members.end());
    out.insert(std::move(members));
  }
  return out;
}

}  // namespace

RoundtripReport verify_roundtrip(const ChamberComplex& frame_building, const ReflectionSubgroup& embedding) {
  RoundtripReport report;
  const ChamberComplex suspension = suspend(frame_building, embedding);
  report.suspension_chambers = suspension.chamber_count();
  const long expected = static_cast<long>(frame_building.chamber_count()) * embedding.ambient->order() / embedding.order();
  report.counts_match = suspension.chamber_count() == expected;

  const ValidationReport validation = validate_building(suspension);
  report.suspension_valid = validation.valid;
  for (const auto& v : validation.violations) report.notes.push_back("validation: " + v);

  const FrameResult fr = thick_frame(suspension);
  report.frame_chambers = fr.frame.chamber_count();
  const auto iso = find_isomorphism(fr.frame, frame_building);
  report.frame_isomorphic = iso.has_value();
  report.subgroup_conjugate = embeddings_conjugate(fr.subgroup, embedding);

  if (iso) {
    const auto frame_sets = apartment_sets(fr.frame, &iso->chamber_map);
    const auto input_sets = apartment_sets(frame_building, nullptr);
    report.apartments_bijective = fr.frame.apartments().size() == frame_building.apartments().size() &&
                                  frame_sets.size() == fr.frame.apartments().size() && frame_sets == input_sets;
  } else {
    report.notes.push_back("no isomorphism between the recovered frame and the input");
  }
  return report;
}

long thin_class_convexity_violations(const ChamberComplex& cx, const ThinClasses& classes) {
  const int nc = cx.chamber_count();
  std::vector<std::vector<int>> dist(nc);
  for (int c = 0; c < nc; ++c) dist[c] = gallery_distances(cx, c);
  long violations = 0;
  for (const auto& cls : classes.classes) {
    for (int a : cls) {
      for (int b : cls) {
        if (a >= b) continue;
        for (int x = 0; x < nc; ++x) {
          if (dist[a][x] + dist[x][b] == dist[a][b] && classes.class_of[x] != classes.class_of[a]) ++violations;
        }
      }
    }
  }
  return violations;
}

}  // namespace frameforge
