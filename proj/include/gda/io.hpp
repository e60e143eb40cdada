#pragma once

// TOML algebra specs and JSON exchange formats.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gda/bruhat.hpp"
#include "gda/gmatrix.hpp"

namespace gda {

using Json = nlohmann::ordered_json;

struct AlgebraInstance {
  std::string name;
  std::string description;
  std::shared_ptr<const GradedDivisionAlgebra> algebra;
  /// From the optional [matrix] section.
  std::optional<std::size_t> n;
  std::optional<std::vector<GradeVector>> shifts;
  /// Optional [expect] integers used as golden values by `gda verify`.
  std::map<std::string, std::int64_t> expect;

  /// The [matrix] section, overridden by explicit arguments when given.
  ShiftedMatrixAlgebra matrix_algebra(std::optional<std::size_t> n_override = std::nullopt,
                                      std::optional<std::vector<GradeVector>> shifts_override = std::nullopt) const;
};

/// Raises ParseError (syntax, with line and column) or ValidationError.
AlgebraInstance parse_algebra_spec(std::string_view text, const std::string& source = "<spec>");
AlgebraInstance load_algebra_spec(const std::string& path);

/// Shift vectors as a JSON list of integer lists, e.g. "[[0,0],[1,0]]".
std::vector<GradeVector> parse_shifts(std::string_view text, std::size_t ambient_rank);

Json to_json(const GradeVector& v);
Json to_json(const FieldElement& x);
Json to_json(const HomogeneousUnit& u);
Json to_json(const AlgebraElement& x);
Json to_json(const GradedMatrix& m);
Json to_json(const AbelianizedUnit& a);
Json to_json(const FiniteAbelianGroup& g);
Json to_json(const Permutation& p);
Json to_json(const FieldMatrix& m);
Json to_json(const ElementaryFactor& f);

AlgebraElement element_from_json(const GradedDivisionAlgebra& e, const Json& j);
GradedMatrix matrix_from_json(const GradedDivisionAlgebra& e, const Json& j);
GradedMatrix parse_matrix(const GradedDivisionAlgebra& e, std::string_view text);
GradedMatrix load_matrix(const GradedDivisionAlgebra& e, const std::string& path);

std::string read_file(const std::string& path);

}  // namespace gda
