#include "gda/io.hpp"

#include <fstream>
#include <sstream>

#include "toml.hpp"

#include "gda/error.hpp"

namespace gda {

namespace {

std::string where(const std::string& source, const toml::source_region& r) {
  return source + ":" + std::to_string(r.begin.line) + ":" + std::to_string(r.begin.column);
}

[[noreturn]] void invalid(const std::string& source, const toml::node& node, const std::string& what) {
  raise(ErrorCode::ValidationError, where(source, node.source()) + ": " + what);
}

[[noreturn]] void missing(const std::string& source, const toml::table& t, const std::string& key) {
  raise(ErrorCode::ValidationError, where(source, t.source()) + ": missing key '" + key + "'");
}

const toml::node& require(const std::string& source, const toml::table& t, const std::string& key) {
  const toml::node* n = t.get(key);
  if (!n) missing(source, t, key);
  return *n;
}

std::int64_t as_int(const std::string& source, const toml::node& n, const std::string& what) {
  auto v = n.value<std::int64_t>();
  if (!n.is_integer() || !v) invalid(source, n, what + " must be an integer");
  return *v;
}

GradeVector as_vector(const std::string& source, const toml::node& n, std::size_t k, const std::string& what) {
  const toml::array* arr = n.as_array();
  if (!arr) invalid(source, n, what + " must be an array of integers");
  GradeVector v;
  for (const auto& x : *arr) v.push_back(as_int(source, x, what));
  if (v.size() != k) invalid(source, n, what + " must have length " + std::to_string(k));
  return v;
}

std::vector<GradeVector> as_vectors(const std::string& source, const toml::node& n, std::size_t k,
                                    const std::string& what) {
  const toml::array* arr = n.as_array();
  if (!arr) invalid(source, n, what + " must be an array of vectors");
  std::vector<GradeVector> out;
  for (const auto& x : *arr) out.push_back(as_vector(source, x, k, what + " entry"));
  return out;
}

CoefficientField parse_field(const std::string& source, const toml::node& n) {
  const toml::table* t = n.as_table();
  if (!t) invalid(source, n, "field must be a table like {kind=\"gf\", p=13}");
  auto kind = (*t)["kind"].value<std::string>();
  if (!kind) missing(source, *t, "kind");
  auto make = [&](auto factory, const toml::node& arg) -> CoefficientField {
    auto v = as_int(source, arg, *kind == "gf" ? "p" : "n");
    if (v < 1) invalid(source, arg, "must be positive");
    try {
      return factory(v);
    } catch (const Error& e) {
      invalid(source, arg, e.what());
    }
  };
  if (*kind == "gf")
    return make([](std::int64_t v) { return CoefficientField::prime(static_cast<std::uint64_t>(v)); },
                require(source, *t, "p"));
  if (*kind == "cyclotomic")
    return make([](std::int64_t v) { return CoefficientField::cyclotomic(static_cast<std::uint32_t>(v)); },
                require(source, *t, "n"));
  invalid(source, n, "unknown field kind '" + *kind + "' (expected \"gf\" or \"cyclotomic\")");
}

FieldElement parse_literal(const std::string& source, const CoefficientField& f, const toml::node& n) {
  std::string text;
  if (auto s = n.value<std::string>(); n.is_string() && s) {
    text = *s;
  } else if (n.is_integer()) {
    text = std::to_string(*n.value<std::int64_t>());
  } else {
    invalid(source, n, "field literals must be strings or integers");
  }
  try {
    return parse_field_element(f, text);
  } catch (const Error& e) {
    raise(e.code(), where(source, n.source()) + ": " + e.what());
  }
}

}  // namespace

ShiftedMatrixAlgebra AlgebraInstance::matrix_algebra(std::optional<std::size_t> n_override,
                                                     std::optional<std::vector<GradeVector>> shifts_override) const {
  std::size_t size = n_override ? *n_override : (shifts_override ? shifts_override->size() : n.value_or(1));
  if (shifts_override) return ShiftedMatrixAlgebra(algebra, size, *shifts_override);
  if (shifts && !n_override) return ShiftedMatrixAlgebra(algebra, shifts->size(), *shifts);
  if (shifts && n_override && *n_override == shifts->size()) return ShiftedMatrixAlgebra(algebra, size, *shifts);
  return ShiftedMatrixAlgebra::unshifted(algebra, size);
}

AlgebraInstance parse_algebra_spec(std::string_view text, const std::string& source) {
  toml::table doc;
  try {
    doc = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    raise(ErrorCode::ParseError, where(source, e.source()) + ": " + std::string(e.description()));
  }
  AlgebraInstance inst;
  inst.name = doc["name"].value_or(std::string{});
  inst.description = doc["description"].value_or(std::string{});

  CoefficientField f = parse_field(source, require(source, doc, "field"));
  const toml::node& rank_node = require(source, doc, "ambient_rank");
  auto k = as_int(source, rank_node, "ambient_rank");
  if (k < 1 || k > 8) invalid(source, rank_node, "ambient_rank must lie in [1, 8]");
  const auto rank = static_cast<std::size_t>(k);

  auto basis = as_vectors(source, require(source, doc, "gamma_e"), rank, "gamma_e");
  const toml::node& comm_node = require(source, doc, "commutation");
  const toml::array* rows = comm_node.as_array();
  if (!rows) invalid(source, comm_node, "commutation must be an array of rows");
  if (rows->size() != basis.size())
    invalid(source, comm_node, "commutation must have one row per gamma_e vector");
  std::vector<std::vector<FieldElement>> comm;
  for (const auto& row_node : *rows) {
    const toml::array* row = row_node.as_array();
    if (!row || row->size() != basis.size())
      invalid(source, row_node, "commutation rows must have " + std::to_string(basis.size()) + " entries");
    comm.emplace_back();
    for (const auto& x : *row) comm.back().push_back(parse_literal(source, f, x));
  }
  try {
    inst.algebra = std::make_shared<const GradedDivisionAlgebra>(
        GradedDivisionAlgebra::make(AlgebraSpec{f, rank, basis, comm}));
  } catch (const Error& e) {
    raise(e.code(), where(source, comm_node.source()) + ": " + e.what());
  }

  if (const toml::table* m = doc["matrix"].as_table()) {
    if (const toml::node* n = m->get("n")) {
      auto v = as_int(source, *n, "n");
      if (v < 1 || v > 8) invalid(source, *n, "n must lie in [1, 8]");
      inst.n = static_cast<std::size_t>(v);
    }
    if (const toml::node* s = m->get("shifts")) {
      inst.shifts = as_vectors(source, *s, rank, "shifts");
      if (inst.n && *inst.n != inst.shifts->size()) invalid(source, *s, "shifts must have n entries");
      inst.n = inst.shifts->size();
    }
  }
  if (const toml::table* ex = doc["expect"].as_table())
    for (const auto& [key, node] : *ex) inst.expect[std::string(key.str())] = as_int(source, node, "expect value");
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ValidationError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraInstance load_algebra_spec(const std::string& path) { return parse_algebra_spec(read_file(path), path); }

std::vector<GradeVector> parse_shifts(std::string_view text, std::size_t ambient_rank) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    raise(ErrorCode::ParseError, std::string("shifts: ") + e.what());
  }
  if (!j.is_array()) raise(ErrorCode::ValidationError, "shifts must be a JSON list of integer vectors");
  std::vector<GradeVector> out;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != ambient_rank)
      raise(ErrorCode::ValidationError, "each shift must be a list of " + std::to_string(ambient_rank) + " integers");
    GradeVector g;
    for (const auto& x : v) {
      if (!x.is_number_integer()) raise(ErrorCode::ValidationError, "shift entries must be integers");
      g.push_back(x.get<std::int64_t>());
    }
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const GradeVector& v) { return Json(v); }

Json to_json(const FieldElement& x) { return x.to_string(); }

Json to_json(const HomogeneousUnit& u) { return Json{{"degree", to_json(u.degree)}, {"coeff", to_json(u.coeff)}}; }

Json to_json(const AlgebraElement& x) {
  Json terms = Json::array();
  for (const auto& [deg, c] : x.terms()) terms.push_back(to_json(HomogeneousUnit{c, deg}));
  return terms;
}

Json to_json(const GradedMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"entries", std::move(rows)}};
}

Json to_json(const AbelianizedUnit& a) {
  return Json{{"degree", to_json(a.degree)}, {"coeff_class", to_json(a.coeff_class)}};
}

Json to_json(const FiniteAbelianGroup& g) {
  Json factors = Json::array();
  for (const auto& d : g.invariant_factors()) factors.push_back(to_int64(d));
  return Json{{"invariant_factors", std::move(factors)}, {"order", to_int64(g.order())}, {"structure", g.to_string()}};
}

Json to_json(const Permutation& p) {
  Json images = Json::array();
  for (auto x : p.images()) images.push_back(x + 1);
  return Json{{"cycles", p.to_cycle_string()}, {"images", std::move(images)}};
}

Json to_json(const FieldMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ElementaryFactor& f) {
  return Json{{"i", f.i + 1}, {"j", f.j + 1}, {"x", to_json(f.x)}};
}

AlgebraElement element_from_json(const GradedDivisionAlgebra& e, const Json& j) {
  if (!j.is_array()) raise(ErrorCode::ValidationError, "an element must be a list of {degree, coeff} terms");
  AlgebraElement x;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("degree") || !t.contains("coeff"))
      raise(ErrorCode::ValidationError, "each term needs 'degree' and 'coeff'");
    GradeVector deg;
    if (!t["degree"].is_array()) raise(ErrorCode::ValidationError, "term degree must be an integer list");
    for (const auto& d : t["degree"]) {
      if (!d.is_number_integer()) raise(ErrorCode::ValidationError, "degree entries must be integers");
      deg.push_back(d.get<std::int64_t>());
    }
    if (deg.size() != e.ambient_rank()) raise(ErrorCode::ValidationError, "degree " + to_string(deg) + " has wrong length");
    try {
      e.coordinates(deg);
    } catch (const Error& err) {
      raise(ErrorCode::ValidationError, err.what());
    }
    std::string lit;
    if (t["coeff"].is_string())
      lit = t["coeff"].get<std::string>();
    else if (t["coeff"].is_number_integer())
      lit = std::to_string(t["coeff"].get<std::int64_t>());
    else
      raise(ErrorCode::ValidationError, "coeff must be a literal string or integer");
    x = x + AlgebraElement(HomogeneousUnit{parse_field_element(e.field(), lit), deg});
  }
  return x;
}

GradedMatrix matrix_from_json(const GradedDivisionAlgebra& e, const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    raise(ErrorCode::ValidationError, "matrix JSON needs an 'entries' list");
  const auto& rows = j["entries"];
  const std::size_t n = rows.size();
  if (n < 1 || n > 8) raise(ErrorCode::ValidationError, "matrix size must lie in [1, 8]");
  GradedMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) raise(ErrorCode::ValidationError, "matrix must be square");
    for (std::size_t k = 0; k < n; ++k) m.at(i, k) = element_from_json(e, rows[i][k]);
  }
  return m;
}

GradedMatrix parse_matrix(const GradedDivisionAlgebra& e, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& err) {
    raise(ErrorCode::ParseError, std::string("matrix: ") + err.what());
  }
  return matrix_from_json(e, j);
}

GradedMatrix load_matrix(const GradedDivisionAlgebra& e, const std::string& path) {
  return parse_matrix(e, read_file(path));
}

}  // namespace gda
