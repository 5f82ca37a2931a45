#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "frameforge/affine.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/frame.hpp"
#include "frameforge/io.hpp"
#include "frameforge/metric.hpp"
#include "frameforge/render.hpp"
#include "frameforge/verify.hpp"

using namespace frameforge;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

int cmd_cox(const std::string& type) {
  const CoxeterSystemPtr sys = build_system(parse_type_argument(type));
  std::cout << "rank " << sys->rank() << "\n"
            << "order " << sys->order() << "\n"
            << "roots " << sys->root_count() << "\n"
            << "reflections " << sys->reflections().size() << "\n"
            << "longest element length " << sys->length(sys->longest()) << "\n";
  for (int r = 0; r < sys->positive_count(); ++r) {
    const int refl = sys->reflection_of_root(r);
    std::cout << "root " << r << " reflection '" << word_string(*sys, refl) << "'\n";
  }
  return kOk;
}

int cmd_reduce(const std::string& input, const std::string& out) {
  const BuildingFile file = parse_building(read_file(input));
  const FrameResult result = thick_frame(file.complex);
  std::cerr << "rank " << result.frame.rank() << ", " << result.frame.chamber_count() << " chambers, "
            << result.classes.classes.size() << " thin classes\n";
  output(out, emit_building(result.frame, &result.subgroup));
  return kOk;
}

int cmd_extend(const std::string& input, const std::string& target, const std::vector<int>& roots,
               const std::string& out) {
  const BuildingFile file = parse_building(read_file(input));
  const CoxeterSystemPtr ambient = build_system(parse_type_argument(target));
  std::vector<int> images;
  for (int r : roots) {
    if (r < 0 || r >= ambient->root_count()) throw Error(ErrorCode::Parse, "--embedding: root id out of range");
    images.push_back(ambient->reflection_of_root(r));
  }
  const ReflectionSubgroup embedding = make_embedding(ambient, images);
  if (!(embedding_matrix(embedding) == file.complex.system().matrix()))
    throw Error(ErrorCode::TypeMismatch, "embedded generators do not match the building type");
  const ChamberComplex suspension = suspend(file.complex, embedding);
  std::cerr << suspension.chamber_count() << " chambers\n";
  output(out, emit_building(suspension));
  return kOk;
}

AffineModel load_model(const std::string& path) {
  if (path.empty()) return tree_product_model(3, 3, "C2");
  return parse_model(read_file(path));
}

int cmd_verify(const std::string& suite, const std::string& model_path, int dimension, const std::string& norm,
               long samples, const std::string& report_path) {
  SuiteReport report;
  if (suite == "scharlau") report = verify_scharlau();
  else if (suite == "affine") report = verify_affine(load_model(model_path));
  else if (suite == "axioms") report = verify_axioms(load_model(model_path));
  else report = verify_metric(dimension, parse_norm(norm), samples, metric_seed_from_env());
  for (const auto& c : report.checks)
    std::cerr << (c.passed ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
  output(report_path, report.to_json().dump(2) + "\n");
  return report.passed() ? kOk : kFailure;
}

int cmd_render(const std::string& type, const std::vector<int>& roots, const std::string& out) {
  RenderSpec spec{build_system(parse_type_argument(type)), roots};
  const RenderSummary summary = render_arrangement(spec);
  std::cerr << summary.walls << " walls, " << summary.thick_walls << " thick\n";
  output(out, summary.svg);
  return kOk;
}

int cmd_boundary(const std::string& model_path, const std::string& out) {
  const AffineModel model = load_model(model_path);
  const BoundaryBuilding b = boundary_building(model);
  std::cerr << b.complex.chamber_count() << " chambers" << (b.degenerate ? " (degenerate)" : "") << "\n";
  output(out, emit_building(b.complex));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thick frames of spherical buildings and desk-scale affine models"};
  app.require_subcommand(1);

  std::string type, input, out = "-", target, model_path, norm = "euclidean", suite, report_path = "-";
  std::vector<int> roots;
  int dimension = 2;
  long samples = 1000;

  auto* cox = app.add_subcommand("cox", "Summarize a finite Coxeter group");
  cox->add_option("type", type, "Type name (C2, A1xA1, H3) or JSON Coxeter matrix")->required();

  auto* reduce = app.add_subcommand("reduce", "Thick frame of a building file");
  reduce->add_option("input", input, "Building file")->required();
  reduce->add_option("--out", out, "Output path, - for stdout");

  auto* extend = app.add_subcommand("extend", "Subdivided suspension into a larger Coxeter group");
  extend->add_option("input", input, "Building file")->required();
  extend->add_option("--target", target, "Ambient type")->required();
  extend->add_option("--embedding", roots, "Ambient root id of each generator image")->required()->delimiter(',');
  extend->add_option("--out", out, "Output path, - for stdout");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "scharlau, affine, axioms or metric")
      ->required()
      ->check(CLI::IsMember({"scharlau", "affine", "axioms", "metric"}));
  verify->add_option("--model", model_path, "Model file (default: C2 tree product, valency 3, depth 3)");
  verify->add_option("--dimension", dimension, "Metric suite dimension")->check(CLI::Range(1, 3));
  verify->add_option("--norm", norm, "euclidean or maximum");
  verify->add_option("--samples", samples, "Metric suite sample count")->check(CLI::PositiveNumber);
  verify->add_option("--report", report_path, "JSON report path, - for stdout");

  auto* render = app.add_subcommand("render", "SVG of a reflection arrangement");
  render->add_option("type", type, "Ambient type")->required();
  render->add_option("--roots", roots, "Root ids generating the emphasized subgroup")->delimiter(',');
  render->add_option("--out", out, "Output path, - for stdout");

  auto* boundary = app.add_subcommand("boundary", "Building at infinity of a model");
  boundary->add_option("--model", model_path, "Model file (default: C2 tree product, valency 3, depth 3)");
  boundary->add_option("--out", out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cox) return cmd_cox(type);
    if (*reduce) return cmd_reduce(input, out);
    if (*extend) return cmd_extend(input, target, roots, out);
    if (*verify) return cmd_verify(suite, model_path, dimension, norm, samples, report_path);
    if (*render) return cmd_render(type, roots, out);
    if (*boundary) return cmd_boundary(model_path, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool bad_input = e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidMatrix;
    return bad_input ? kUsage : kFailure;
  }
  return kUsage;
}
