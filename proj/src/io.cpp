#include "frameforge/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace frameforge {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::Parse, (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& member(const json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) fail(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(pointer + "/" + key, "missing");
  return *it;
}

int integer(const json& j, const std::string& pointer, int lo = 0) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > 1'000'000'000) fail(pointer, "integer out of range");
  return static_cast<int>(v);
}

/// Re-raises library errors as located parse errors. CapExceeded keeps its
/// code: the input is well formed but too large.
template <typename F>
auto located(const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code() == ErrorCode::CapExceeded ? e.code() : ErrorCode::Parse, pointer + ": " + e.what());
  }
}

}  // namespace

std::string word_string(const CoxeterSystem& sys, int element) {
  std::string out;
  for (int s : sys.word(element)) out += std::to_string(s);
  return out;
}

int element_of_word_string(const CoxeterSystem& sys, std::string_view word) {
  std::vector<int> letters;
  for (char ch : word) {
    if (ch < '0' || ch > '9' || ch - '0' >= sys.rank()) throw Error(ErrorCode::Parse, "bad letter in word '" + std::string(word) + "'");
    letters.push_back(ch - '0');
  }
  return sys.element_of_word(letters);
}

json matrix_to_json(const CoxeterMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.rank(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

CoxeterMatrix matrix_from_json(const json& j, const std::string& pointer) {
  if (j.is_string()) return located(pointer, [&] { return parse_coxeter_type(j.get<std::string>()); });
  if (!j.is_array()) fail(pointer, "expected a Coxeter matrix or a type name");
  const int n = static_cast<int>(j.size());
  Eigen::MatrixXi m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row = pointer + "/" + std::to_string(i);
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n) fail(row, "expected a row of length " + std::to_string(n));
    for (int k = 0; k < n; ++k) m(i, k) = integer(j[i][k], row + "/" + std::to_string(k));
  }
  return located(pointer, [&] { return CoxeterMatrix(m); });
}

CoxeterMatrix parse_type_argument(std::string_view text) {
  if (!text.empty() && text.front() == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::Parse, std::string("matrix literal: ") + e.what());
    }
    return matrix_from_json(j);
  }
  return parse_coxeter_type(text);
}

json building_to_json(const ChamberComplex& cx, const ReflectionSubgroup* embedding) {
  const CoxeterSystem& sys = cx.system();
  json j;
  j["format_version"] = kFormatVersion;
  j["type"] = {{"rank", cx.rank()}, {"coxeter_matrix", matrix_to_json(sys.matrix())}};
  j["chambers"] = cx.chamber_count();
  json panels = json::object();
  for (int s = 0; s < cx.rank(); ++s) panels[std::to_string(s)] = cx.panels(s);
  j["panels"] = std::move(panels);
  json apartments = json::array();
  for (const auto& ap : cx.apartments()) {
    json map = json::object();
    for (int w = 0; w < sys.order(); ++w) map[word_string(sys, w)] = ap.chamber_of[w];
    apartments.push_back({{"map", std::move(map)}});
  }
  j["apartments"] = std::move(apartments);
  if (embedding && embedding->order() != embedding->ambient->order()) {
    json roots = json::array();
    for (int r : embedding->embedding) roots.push_back(embedding->ambient->reflection_root(r));
    j["embedding"] = {{"ambient", matrix_to_json(embedding->ambient->matrix())}, {"generator_roots", std::move(roots)}};
  }
  return j;
}

std::string emit_building(const ChamberComplex& cx, const ReflectionSubgroup* embedding) {
  return building_to_json(cx, embedding).dump(2) + "\n";
}

BuildingFile parse_building(std::string_view text, bool validate) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "/: malformed JSON at byte " + std::to_string(e.byte));
  }
  if (!j.is_object()) fail("", "expected an object");
  if (integer(member(j, "", "format_version"), "/format_version") != kFormatVersion)
    fail("/format_version", "unsupported version");

  const json& type = member(j, "", "type");
  const CoxeterMatrix matrix = matrix_from_json(member(type, "/type", "coxeter_matrix"), "/type/coxeter_matrix");
  if (integer(member(type, "/type", "rank"), "/type/rank") != matrix.rank()) fail("/type/rank", "does not match the matrix");
  const CoxeterSystemPtr sys = located("/type", [&] { return build_system(matrix); });
  const int n = sys->rank();

  const int chambers = integer(member(j, "", "chambers"), "/chambers");
  const json& pj = member(j, "", "panels");
  if (!pj.is_object()) fail("/panels", "expected an object keyed by generator");
  std::vector<std::vector<std::vector<int>>> panels(n);
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    const std::string ptr = "/panels/" + it.key();
    int s = -1;
    try {
      std::size_t used = 0;
      s = std::stoi(it.key(), &used);
      if (used != it.key().size()) s = -1;
    } catch (const std::exception&) {
      s = -1;
    }
    if (s < 0 || s >= n) fail(ptr, "not a generator index");
    if (!it.value().is_array()) fail(ptr, "expected a list of panels");
    for (std::size_t p = 0; p < it.value().size(); ++p) {
      const std::string pp = ptr + "/" + std::to_string(p);
      const json& members = it.value()[p];
      if (!members.is_array()) fail(pp, "expected a list of chambers");
      std::vector<int> panel;
      for (std::size_t c = 0; c < members.size(); ++c) {
        const int id = integer(members[c], pp + "/" + std::to_string(c));
        if (id >= chambers) fail(pp + "/" + std::to_string(c), "chamber id out of range");
        panel.push_back(id);
      }
      panels[s].push_back(std::move(panel));
    }
  }

  const json& aj = member(j, "", "apartments");
  if (!aj.is_array()) fail("/apartments", "expected a list");
  std::vector<Apartment> apartments;
  for (std::size_t a = 0; a < aj.size(); ++a) {
    const std::string ptr = "/apartments/" + std::to_string(a) + "/map";
    const json& map = member(aj[a], "/apartments/" + std::to_string(a), "map");
    if (!map.is_object()) fail(ptr, "expected an object keyed by words");
    Apartment ap;
    ap.chamber_of.assign(sys->order(), -1);
    for (auto it = map.begin(); it != map.end(); ++it) {
      const int w = located(ptr + "/" + it.key(), [&] { return element_of_word_string(*sys, it.key()); });
      const int id = integer(it.value(), ptr + "/" + it.key());
      if (id >= chambers) fail(ptr + "/" + it.key(), "chamber id out of range");
      if (ap.chamber_of[w] != -1) fail(ptr + "/" + it.key(), "element listed twice");
      ap.chamber_of[w] = id;
    }
    for (int w = 0; w < sys->order(); ++w) {
      if (ap.chamber_of[w] < 0) fail(ptr, "element '" + word_string(*sys, w) + "' is not mapped");
    }
    apartments.push_back(std::move(ap));
  }

  std::optional<ReflectionSubgroup> embedding;
  if (j.contains("embedding")) {
    const json& ej = j["embedding"];
    const CoxeterMatrix am = matrix_from_json(member(ej, "/embedding", "ambient"), "/embedding/ambient");
    const CoxeterSystemPtr ambient = located("/embedding/ambient", [&] { return build_system(am); });
    const json& roots = member(ej, "/embedding", "generator_roots");
    if (!roots.is_array()) fail("/embedding/generator_roots", "expected a list of root ids");
    std::vector<int> images;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const std::string ptr = "/embedding/generator_roots/" + std::to_string(i);
      const int r = integer(roots[i], ptr);
      if (r >= ambient->root_count()) fail(ptr, "root id out of range");
      images.push_back(ambient->reflection_of_root(r));
    }
    embedding = located("/embedding", [&] { return make_embedding(ambient, images); });
    if (!(embedding_matrix(*embedding) == sys->matrix())) fail("/embedding", "embedded generators do not match the building type");
  }

  ChamberComplex cx = located("/panels", [&] { return ChamberComplex(sys, chambers, std::move(panels), std::move(apartments)); });
  if (validate) {
    const ValidationReport report = validate_building(cx);
    if (!report.valid) fail("/apartments", "building axioms violated: " + report.violations.front());
  }
  return BuildingFile{std::move(cx), std::move(embedding)};
}

AffineModel parse_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "/: malformed JSON at byte " + std::to_string(e.byte));
  }
  if (integer(member(j, "", "format_version"), "/format_version") != kFormatVersion)
    fail("/format_version", "unsupported version");

  const json& fj = member(j, "", "factors");
  if (!fj.is_array()) fail("/factors", "expected a list");
  std::vector<Factor> factors;
  std::map<std::pair<int, int>, std::shared_ptr<const TreeGeometry>> trees;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string ptr = "/factors/" + std::to_string(i);
    const json& kind = member(fj[i], ptr, "kind");
    if (kind == "flat") {
      factors.emplace_back();
    } else if (kind == "tree") {
      const int v = integer(member(fj[i], ptr, "valency"), ptr + "/valency", 2);
      const int d = integer(member(fj[i], ptr, "depth"), ptr + "/depth", 1);
      if (v > 8 || d > 6) fail(ptr, "tree too large for exhaustive checks");
      auto& geo = trees[{v, d}];
      if (!geo) geo = std::make_shared<const TreeGeometry>(v, d);
      factors.push_back(Factor{geo});
    } else {
      fail(ptr + "/kind", "expected \"tree\" or \"flat\"");
    }
  }
  const int n = static_cast<int>(factors.size());

  const CoxeterMatrix wm = matrix_from_json(member(j, "", "weyl_group"), "/weyl_group");
  const CoxeterSystemPtr w0 = located("/weyl_group", [&] { return build_system(wm); });
  LinearRealization linear = located("/weyl_group", [&] { return LinearRealization::standard(w0); });
  if (linear.dimension() != n) fail("/weyl_group", "dimension differs from the number of factors");

  auto parse_vector = [&](const json& v, const std::string& ptr) {
    if (!v.is_array() || static_cast<int>(v.size()) != n) fail(ptr, "expected " + std::to_string(n) + " coordinates");
    RVector out(n);
    for (int i = 0; i < n; ++i) {
      const std::string cp = ptr + "/" + std::to_string(i);
      if (v[i].is_number_integer()) out[i] = v[i].get<long long>();
      else if (v[i].is_string()) out[i] = located(cp, [&] { return parse_rational(v[i].get<std::string>()); });
      else fail(cp, "expected an integer or a rational string");
    }
    return out;
  };

  const json& tj = member(j, "", "translations");
  TranslationGroup translations = TranslationGroup::integer_lattice(n);
  if (tj.is_string() && tj == "full") {
    translations = TranslationGroup::full_space(n);
  } else if (tj.is_string() && tj == "integer") {
    translations = TranslationGroup::integer_lattice(n);
  } else if (tj.is_array()) {
    std::vector<RVector> gens;
    for (std::size_t g = 0; g < tj.size(); ++g) gens.push_back(parse_vector(tj[g], "/translations/" + std::to_string(g)));
    translations = TranslationGroup::generated_by(n, std::move(gens));
  } else {
    fail("/translations", "expected \"full\", \"integer\" or a list of generators");
  }
  AffineWeylGroup group = located("/translations", [&] { return affine_group(std::move(linear), translations); });

  const json empty = json::object();
  const json& atlas = j.contains("atlas") ? j["atlas"] : empty;
  std::vector<std::vector<int>> avoid(n);
  if (atlas.contains("avoid_leaves")) {
    const json& av = atlas["avoid_leaves"];
    if (!av.is_array()) fail("/atlas/avoid_leaves", "expected a list of [factor, leaf] pairs");
    for (std::size_t a = 0; a < av.size(); ++a) {
      const std::string ptr = "/atlas/avoid_leaves/" + std::to_string(a);
      if (!av[a].is_array() || av[a].size() != 2) fail(ptr, "expected [factor, leaf]");
      const int f = integer(av[a][0], ptr + "/0");
      if (f >= n || factors[f].is_flat()) fail(ptr + "/0", "not a tree factor");
      const int leaf = integer(av[a][1], ptr + "/1");
      if (leaf >= factors[f].tree->tree().vertex_count() || !factors[f].tree->tree().is_leaf(leaf)) fail(ptr + "/1", "not a leaf");
      avoid[f].push_back(leaf);
    }
  }
  const bool explicit_only = atlas.contains("kind") && atlas["kind"] == "explicit";
  std::vector<Chart> charts;
  if (!explicit_only) charts = line_product_charts(factors, group, avoid);
  if (atlas.contains("charts")) {
    const json& cj = atlas["charts"];
    if (!cj.is_array()) fail("/atlas/charts", "expected a list");
    for (std::size_t c = 0; c < cj.size(); ++c) {
      const std::string ptr = "/atlas/charts/" + std::to_string(c);
      const json& lines = member(cj[c], ptr, "lines");
      if (!lines.is_array() || static_cast<int>(lines.size()) != n) fail(ptr + "/lines", "expected one entry per factor");
      Chart chart;
      for (int i = 0; i < n; ++i) {
        const std::string lp = ptr + "/lines/" + std::to_string(i);
        if (factors[i].is_flat()) {
          if (!lines[i].is_null()) fail(lp, "flat factors take null");
          chart.lines.push_back(0);
          continue;
        }
        if (!lines[i].is_array() || lines[i].size() != 2) fail(lp, "expected a leaf pair");
        const int l = factors[i].tree->line_index(integer(lines[i][0], lp + "/0"), integer(lines[i][1], lp + "/1"));
        if (l < 0) fail(lp, "not a pair of distinct leaves");
        chart.lines.push_back(l);
      }
      chart.element = group.identity();
      if (cj[c].contains("linear")) {
        if (!cj[c]["linear"].is_string()) fail(ptr + "/linear", "expected a word");
        chart.element.linear = located(ptr + "/linear", [&] { return element_of_word_string(*w0, cj[c]["linear"].get<std::string>()); });
      }
      if (cj[c].contains("translation")) chart.element.translation = parse_vector(cj[c]["translation"], ptr + "/translation");
      charts.push_back(std::move(chart));
    }
  }
  if (charts.empty()) fail("/atlas", "atlas has no charts");
  const bool closed = atlas.contains("closed_under_group") ? atlas["closed_under_group"].get<bool>() : true;
  const bool presented = atlas.contains("presented") ? atlas["presented"].get<bool>() : true;
  return AffineModel{std::move(factors), std::move(group), std::move(charts), closed, presented};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
  out << contents;
}

}  // namespace frameforge
