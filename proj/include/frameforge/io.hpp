#ifndef FRAMEFORGE_IO_HPP
#define FRAMEFORGE_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "frameforge/affine.hpp"
#include "frameforge/chamber.hpp"
#include "frameforge/coxeter.hpp"

namespace frameforge {

inline constexpr int kFormatVersion = 1;

/// A building file: the chamber system plus, optionally, the reflection
/// subgroup of an ambient group that its type embeds as.
struct BuildingFile {
  ChamberComplex complex;
  std::optional<ReflectionSubgroup> embedding;
};

/// Generator indices as a string, "" for the identity.
std::string word_string(const CoxeterSystem& sys, int element);
/// Inverse of word_string; throws Error(Parse).
int element_of_word_string(const CoxeterSystem& sys, std::string_view word);

nlohmann::json matrix_to_json(const CoxeterMatrix& m);
/// Accepts a type name ("C2", "A1xA1") or an array of rows.
CoxeterMatrix matrix_from_json(const nlohmann::json& j, const std::string& pointer = "");
/// A type name or a JSON matrix literal.
CoxeterMatrix parse_type_argument(std::string_view text);

/// Keys are sorted; the embedding is written only when the subgroup is proper.
nlohmann::json building_to_json(const ChamberComplex& cx, const ReflectionSubgroup* embedding = nullptr);
std::string emit_building(const ChamberComplex& cx, const ReflectionSubgroup* embedding = nullptr);

/// Parses and validates; every error carries the JSON pointer of the
/// offending value. With `validate`, an input failing validate_building is
/// rejected as well.
BuildingFile parse_building(std::string_view text, bool validate = true);

/// Model files: tree/flat factors, Weyl group, translations and atlas.
AffineModel parse_model(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace frameforge

#endif  // FRAMEFORGE_IO_HPP
