// One line per acceptance criterion; exit status is nonzero if any fails.
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "frameforge/affine.hpp"
#include "frameforge/catalog.hpp"
#include "frameforge/chamber.hpp"
#include "frameforge/coxeter.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/io.hpp"
#include "frameforge/isomorphism.hpp"
#include "frameforge/metric.hpp"
#include "frameforge/render.hpp"
#include "frameforge/verify.hpp"

using namespace frameforge;

namespace {

// Closure of the generator matrices of the geometric representation, with
// matrices compared after rounding.
long matrix_group_order(const CoxeterMatrix& m) {
  const int n = m.rank();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = m(i, j) == 2 ? 0.0 : -std::cos(std::numbers::pi / m(i, j));
  std::vector<Eigen::MatrixXd> gens;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; ++j) s(i, j) -= 2 * b(i, j);
    gens.push_back(s);
  }
  auto key = [](const Eigen::MatrixXd& g) {
    std::vector<long> k;
    for (Eigen::Index i = 0; i < g.size(); ++i) k.push_back(std::lround(g.data()[i] * 1e6));
    return k;
  };
  std::set<std::vector<long>> seen{key(Eigen::MatrixXd::Identity(n, n))};
  std::vector<Eigen::MatrixXd> frontier{Eigen::MatrixXd::Identity(n, n)};
  while (!frontier.empty()) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Eigen::MatrixXd h = g * s;
        if (seen.insert(key(h)).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return static_cast<long>(seen.size());
}

bool isomorphic(const ChamberComplex& a, const ChamberComplex& b) { return find_isomorphism(a, b).has_value(); }

int failures = 0;

void report(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!ok) ++failures;
  std::cout << "criterion " << id << " " << (ok ? "PASS" : "FAIL") << " " << title << " (" << detail << ", "
            << static_cast<int>(secs * 1000) << " ms)" << std::endl;
}

std::string fixture(const std::string& name) { return read_file(std::string(FIXTURE_DIR) + "/" + name); }

}  // namespace

int main() {
  const std::vector<std::pair<std::string, long>> groups = {
      {"A1xA1", 4}, {"C2", 8}, {"G2", 12}, {"C3", 48}, {"H3", 120}};

  report(1, "group enumeration", [&](std::string& d) {
    bool ok = true;
    for (const auto& [name, expected] : groups) {
      const auto sys = build_system(name);
      const long oracle = matrix_group_order(sys->matrix());
      d += name + "=" + std::to_string(sys->order()) + " ";
      ok = ok && sys->order() == expected && oracle == expected;
    }
    return ok;
  });

  report(2, "degenerate reduction", [&](std::string& d) {
    bool ok = true;
    for (const auto& [name, expected] : groups) {
      const FrameResult r = thick_frame(coxeter_complex(build_system(name)));
      ok = ok && r.frame.rank() == 0 && r.frame.chamber_count() == 1 && r.classes.classes.size() == 1;
    }
    d = "all five types reduce to rank 0";
    return ok;
  });

  const auto catalog = roundtrip_catalog();
  report(3, "roundtrip suite", [&](std::string& d) {
    bool ok = true;
    for (const auto& inst : catalog) {
      const RoundtripReport rt = verify_roundtrip(inst.building, inst.embedding);
      const long expected = static_cast<long>(inst.building.chamber_count()) * inst.embedding.ambient->order() /
                            inst.embedding.order();
      d += std::to_string(rt.suspension_chambers) + " ";
      ok = ok && rt.passed() && rt.suspension_chambers == expected && expected == inst.expected_chambers;
    }
    return ok;
  });

  report(4, "lemma suite", [&](std::string& d) {
    long walls = 0, mixed = 0, folds = 0, bad = 0;
    for (const auto& inst : catalog) {
      const LemmaCounts lc = lemma_counts(suspend(inst.building, inst.embedding));
      walls += lc.walls;
      mixed += lc.mixed_walls;
      folds += lc.folds;
      bad += lc.fold_violations;
    }
    d = std::to_string(walls) + " walls, " + std::to_string(mixed) + " mixed, " + std::to_string(folds) +
        " foldings, " + std::to_string(bad) + " violations";
    return mixed == 0 && bad == 0 && folds > 0;
  });

  const AffineModel product = tree_product_model(3, 3, "C2");
  report(5, "tree-product boundary", [&](std::string& d) {
    const BoundaryBuilding b = boundary_building(product);
    const ChamberComplex& cx = b.complex;
    auto sized = [&](int s, int size) {
      int count = 0;
      for (const auto& p : cx.panels(s)) count += static_cast<int>(p.size()) == size;
      return count;
    };
    const FrameResult fr = thick_frame(cx);
    const ChamberComplex ends = join(rank_one_building(12), rank_one_building(12));
    d = std::to_string(cx.chamber_count()) + " chambers, " + std::to_string(sized(0, 2)) + " thin diagonal, " +
        std::to_string(sized(1, 12)) + " thick axis, frame " + std::to_string(fr.frame.chamber_count());
    return cx.chamber_count() == 288 && cx.panel_count(0) == 144 && sized(0, 2) == 144 && cx.panel_count(1) == 24 &&
           sized(1, 12) == 24 && fr.frame.chamber_count() == 144 && isomorphic(fr.frame, ends);
  });

  const auto c2 = build_system("C2");
  const int diag = c2->generator(0), axis = c2->generator(1);
  const int first_axis = c2->conjugate(diag, axis);  // negates the first coordinate
  const AffineModel extension = extend_affine(tree_model(3, 3), make_embedding(c2, std::vector<int>{first_axis}),
                                              TranslationGroup::integer_lattice(2));

  report(6, "axiom suite", [&](std::string& d) {
    bool ok = check_axioms(product).passed() && check_axioms(extension).passed();
    d = std::string("valid models ") + (ok ? "pass" : "fail");
    const std::vector<std::pair<std::string, std::string>> sabotage = {
        {"sabotage_a1.json", "(A1)"}, {"sabotage_a2.json", "(A2)"}, {"sabotage_a3.json", "(A3)"}};
    for (const auto& [file, target] : sabotage) {
      const AxiomReport r = check_axioms(parse_model(fixture(file)));
      std::string failed;
      for (const auto& a : r.results)
        if (!a.passed) failed += a.name;
      d += "; " + file + " fails " + (failed.empty() ? "nothing" : failed);
      ok = ok && failed == target;
    }
    return ok;
  });

  report(7, "reduction suite", [&](std::string& d) {
    const AffineReduction r0 = reduce_affine(product);
    const AffineReduction r1 = reduce_affine(extension);
    const bool factor_ok = r0.factor.group.linear().system()->matrix() == parse_coxeter_type("A1xA1") &&
                           r0.factor.dimension() == 2;
    d = "k=" + std::to_string(r0.k) + " and k=" + std::to_string(r1.k);
    bool ok = r0.k == 0 && factor_ok && r0.factor_boundary_matches_frame && r1.k == 1 &&
              r1.factor_boundary_matches_frame;
    for (const auto* r : {&r0, &r1}) {
      if (r->reduced_invariant) ok = ok && r->reextension_matches.value_or(false);
    }
    d += std::string(", re-extension ") + (r1.reextension_matches.value_or(false) ? "isomorphic" : "not checked");
    return ok && r1.reextension_matches.has_value();
  });

  report(8, "conjugacy", [&](std::string& d) {
    const int second_diag = c2->conjugate(axis, diag);
    const auto long_pair = make_embedding(c2, std::vector<int>{axis, first_axis});
    const auto short_pair = make_embedding(c2, std::vector<int>{diag, second_diag});
    const bool pairs = embeddings_conjugate(long_pair, short_pair);
    const bool singles = embeddings_conjugate(make_embedding(c2, std::vector<int>{diag}),
                                              make_embedding(c2, std::vector<int>{second_diag}));
    d = std::string("long/short A1xA1 ") + (pairs ? "conjugate" : "not conjugate") + ", short A1s " +
        (singles ? "conjugate" : "not conjugate");
    return !pairs && singles;
  });

  report(9, "metric checks", [&](std::string& d) {
    const std::uint64_t seed = metric_seed_from_env();
    bool ok = true;
    long checks = 0;
    for (Norm norm : {Norm::Euclidean, Norm::Maximum})
      for (int n = 1; n <= 3; ++n) {
        const MetricReport m = metric_checks(n, norm, 1000, seed);
        ok = ok && m.passed() && m.samples == 1000 && m.tolerance == 1e-9;
        checks += m.hyperplane_checks;
      }
    const MidpointCertificate c = max_norm_midpoints();
    d = std::to_string(checks) + " wall crossings, certificate " + (c.verified ? "verified" : "rejected");
    return ok && c.verified;
  });

  report(10, "format round-trip and SVG stability", [&](std::string& d) {
    bool ok = true;
    int instances = 0;
    std::vector<ChamberComplex> generated;
    for (const auto& inst : catalog) generated.push_back(suspend(inst.building, inst.embedding));
    generated.push_back(boundary_building(product).complex);
    generated.push_back(coxeter_complex(build_system("H3")));
    generated.push_back(trivial_complex());
    for (const auto& cx : generated) {
      const std::string text = emit_building(cx);
      const BuildingFile back = parse_building(text);
      ok = ok && isomorphic(cx, back.complex) && emit_building(back.complex) == text;
      ++instances;
    }
    const std::vector<std::tuple<std::string, std::vector<int>, int, int>> renders = {
        {"C2", {0}, 4, 2}, {"H3", {}, 15, 3}, {"C3", {}, 9, 5}};
    for (auto [type, roots, walls, thick] : renders) {
      const auto sys = build_system(type);
      if (type == "C2") {
        roots = {sys->reflection_root(diag), sys->reflection_root(c2->conjugate(axis, diag))};
      } else if (type == "H3") {
        roots.clear();
        for (int r : commuting_reflection_triple(*sys)) roots.push_back(sys->reflection_root(r));
      } else {
        // C2 on the last two generators plus a reflection commuting with it.
        roots = {sys->reflection_root(sys->generator(1)), sys->reflection_root(sys->generator(2))};
        const auto c2sub = make_embedding(sys, std::vector<int>{sys->generator(1), sys->generator(2)});
        for (int r : sys->reflections()) {
          bool commutes = !c2sub.contains(r);
          for (int g : {sys->generator(1), sys->generator(2)})
            commutes = commutes && sys->multiply(r, g) == sys->multiply(g, r);
          if (commutes) {
            roots.push_back(sys->reflection_root(r));
            break;
          }
        }
      }
      const RenderSummary a = render_arrangement({sys, roots});
      const RenderSummary b = render_arrangement({sys, roots});
      ok = ok && a.svg == b.svg && a.walls == walls && a.thick_walls == thick;
      d += type + " " + std::to_string(a.walls) + "/" + std::to_string(a.thick_walls) + " ";
    }
    d += std::to_string(instances) + " round-trips";
    return ok;
  });

  return failures == 0 ? 0 : 1;
}
