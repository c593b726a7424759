#pragma once

// JSON encoding of fields, scalars, matrices, algebras and results.
// Every document produced here carries "schema": "involquat/1".
//
// Field:   {"kind":"Fp","p":3} | {"kind":"Fq","p":2,"deg":2,"modulus":[1,1,1]}
//          | {"kind":"Q"}, optional "unitary": true
// Scalar:  "2" (residue or integer), "-3/4", [c0, c1, ...] or "[c0,c1]"
//          (coefficients of 1, t, ... in an extension); plain integers too.
// Matrix:  row-major array of rows of scalars.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "involquat/construct.hpp"
#include "involquat/harness/fixtures.hpp"
#include "involquat/harness/fuzz.hpp"
#include "involquat/idempotent.hpp"

namespace involquat::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "involquat/1";

inline json document() { return json{{"schema", kSchema}}; }

[[noreturn]] inline void malformed(const std::string& what) { fail(ErrorCode::Malformed, what); }

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline long long as_integer(const json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<long long>();
}

// ---- fields -------------------------------------------------------------

using AnyField = std::variant<const FiniteField*, const RationalField*>;

inline AnyField parse_field(const json& j) {
  const json& kind = member(j, "kind");
  if (!kind.is_string()) malformed("field kind must be a string");
  const auto k = kind.get<std::string>();
  const bool unitary = j.contains("unitary") && j.at("unitary").is_boolean() && j.at("unitary").get<bool>();
  if (k == "Q") {
    if (unitary) fail(ErrorCode::InvalidField, "Q has no unitary automorphism");
    return &RationalField::instance();
  }
  const long long p = as_integer(member(j, "p"), "p");
  if (p < 2 || p > FiniteField::kMaxPrime) fail(ErrorCode::InvalidField, "unsupported characteristic " + std::to_string(p));
  if (k == "Fp") {
    if (unitary) fail(ErrorCode::InvalidField, "unitary automorphism needs an even-degree extension");
    return &FiniteField::prime(static_cast<unsigned>(p));
  }
  if (k != "Fq") malformed("unknown field kind \"" + k + "\"");
  const long long deg = as_integer(member(j, "deg"), "deg");
  const json& mod = member(j, "modulus");
  if (!mod.is_array() || static_cast<long long>(mod.size()) != deg + 1) malformed("modulus must list deg+1 coefficients");
  std::vector<unsigned> coeffs;
  for (const auto& c : mod) {
    const long long v = as_integer(c, "modulus coefficient");
    if (v < 0 || v >= p) malformed("modulus coefficient out of range");
    coeffs.push_back(static_cast<unsigned>(v));
  }
  return &FiniteField::extension(static_cast<unsigned>(p), std::move(coeffs), unitary);
}

inline json field_to_json(const FiniteField& f) {
  json j;
  if (f.degree() == 1) {
    j = {{"kind", "Fp"}, {"p", f.characteristic()}};
  } else {
    j = {{"kind", "Fq"}, {"p", f.characteristic()}, {"deg", f.degree()}, {"modulus", f.modulus()}};
  }
  if (f.has_unitary()) j["unitary"] = true;
  return j;
}

inline json field_to_json(const RationalField&) { return {{"kind", "Q"}}; }

// ---- scalars ------------------------------------------------------------

namespace detail {

inline bool integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline long long parse_ll(const std::string& s) {
  if (!integer_text(s) || s.size() > 18) malformed("bad integer \"" + s + "\"");
  return std::stoll(s);
}

}  // namespace detail

inline Fq parse_scalar(const FiniteField& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_array()) {
    std::vector<long long> c;
    for (const auto& x : j) c.push_back(as_integer(x, "coefficient"));
    return f.from_coefficients(c);
  }
  if (!j.is_string()) malformed("scalar must be a string, integer or coefficient array");
  const auto s = j.get<std::string>();
  if (!s.empty() && s.front() == '[') {
    json arr;
    try {
      arr = json::parse(s);
    } catch (const json::exception&) {
      malformed("bad coefficient list \"" + s + "\"");
    }
    if (!arr.is_array()) malformed("bad coefficient list \"" + s + "\"");
    return parse_scalar(f, arr);
  }
  return f.from_int(detail::parse_ll(s));
}

inline Rational parse_scalar(const RationalField&, const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>(), 1);
  if (!j.is_string()) malformed("rational scalar must be a string or integer");
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!detail::integer_text(s)) malformed("bad rational \"" + s + "\"");
    return Rational(Rational::value_type(s));
  }
  const auto num = s.substr(0, slash);
  const auto den = s.substr(slash + 1);
  if (!detail::integer_text(num) || !detail::integer_text(den)) malformed("bad rational \"" + s + "\"");
  if (Rational::value_type(den) == 0) fail(ErrorCode::DivisionByZero, s);
  return Rational(Rational::value_type(num) / Rational::value_type(den));
}

inline json scalar_to_json(const Fq& a) {
  if (a.field().degree() == 1) return a.to_string();
  json c = json::array();
  for (unsigned i = 0; i < a.field().degree(); ++i) c.push_back(a.field().digit(a.code(), i));
  return c;
}

inline json scalar_to_json(const Rational& a) { return a.to_string(); }

// ---- matrices -----------------------------------------------------------

template <FieldScalar K>
Matrix<K> parse_matrix(const FieldOf<K>& field, const json& j, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) malformed("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  if (size && (rows != *size || cols != *size))
    fail(ErrorCode::SizeMismatch, "expected a " + std::to_string(*size) + "x" + std::to_string(*size) + " matrix");
  Matrix<K> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) malformed("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_scalar(field, j[i][k]);
  }
  return m;
}

template <FieldScalar K>
json matrix_to_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(scalar_to_json(m(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <FieldScalar K>
json vector_to_json(const std::vector<K>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(scalar_to_json(a));
  return out;
}

// ---- algebras -----------------------------------------------------------

template <FieldScalar K>
InvolutionAlgebra<K> parse_algebra(const FieldOf<K>& field, const json& j) {
  const long long n = as_integer(member(j, "n"), "n");
  if (n < 1 || n > 16) malformed("n must lie in 1..16");
  const json& inv = member(j, "involution");
  const json& kind = member(inv, "kind");
  if (!kind.is_string()) malformed("involution kind must be a string");
  InvolutionKind ik;
  if (kind == "first") ik = InvolutionKind::first;
  else if (kind == "unitary") ik = InvolutionKind::unitary;
  else malformed("involution kind must be \"first\" or \"unitary\"");
  Matrix<K> g = inv.contains("g") ? parse_matrix<K>(field, inv.at("g"), static_cast<std::size_t>(n))
                                  : Matrix<K>::identity(field, static_cast<std::size_t>(n));
  return InvolutionAlgebra<K>(std::move(g), ik);
}

template <FieldScalar K>
json algebra_to_json(const InvolutionAlgebra<K>& alg) {
  return {{"field", field_to_json(alg.field())},
          {"n", alg.n()},
          {"involution", {{"kind", to_string(alg.kind())}, {"g", matrix_to_json(alg.descriptor())}}}};
}

// ---- results ------------------------------------------------------------

inline json involution_class_to_json(const InvolutionClass& c) {
  return {{"kind", to_string(c.kind)}, {"type", to_string(c.type)}};
}

template <FieldScalar K>
json subspace_to_json(const SubspaceBasis<K>& s) {
  json basis = json::array();
  for (const auto& b : s.basis) basis.push_back(matrix_to_json(b));
  return {{"dimension", s.dimension},
          {"over", s.scalars == Scalars::prime_subfield ? "prime-subfield" : "centre"},
          {"basis", std::move(basis)}};
}

template <FieldScalar K>
json idempotent_report_to_json(const IdempotentReport<K>& r) {
  return {{"class", to_string(r.cls)},
          {"is_idempotent", r.is_idempotent},
          {"dim_eA", r.dim_eA},
          {"dim_A", r.dim_A},
          {"sigma_e_e_zero", r.sigma_e_e_zero},
          {"alt_metabolic_zero", r.alt_metabolic_zero},
          {"sigma_e_is_complement", r.sigma_e_is_complement},
          {"e_sigma_e", matrix_to_json(r.e_sigma_e)},
          {"dim_e_sigma_e_A", r.dim_e_sigma_e_A}};
}

template <FieldScalar K>
json quaternion_to_json(const QuaternionSubalgebra<K>& q) {
  json basis = json::array();
  for (const auto& b : q.basis) basis.push_back(matrix_to_json(b));
  json table = json::array();
  for (const auto& row : q.table) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(vector_to_json(cell));
    table.push_back(std::move(r));
  }
  json sigma = json::array();
  for (const auto& c : q.sigma_images) sigma.push_back(vector_to_json(c));
  json members = json::array();
  for (const auto& m : q.contains) members.push_back({{"name", m.name}, {"coords", vector_to_json(m.coords)}});
  return {{"labels", q.labels},
          {"basis", std::move(basis)},
          {"structure_constants", std::move(table)},
          {"sigma_invariant", q.sigma_invariant},
          {"sigma_images", std::move(sigma)},
          {"witness", {{"kind", to_string(q.witness.kind)}, {"element", matrix_to_json(q.witness.element)}}},
          {"contains", std::move(members)}};
}

inline json validation_to_json(const QuaternionValidation& v) {
  return {{"ok", v.ok()},
          {"independent", v.independent},
          {"unital", v.unital},
          {"closed", v.closed},
          {"central", v.central},
          {"simple", v.simple},
          {"split", v.split},
          {"sigma_invariant", v.sigma_invariant},
          {"members", v.members},
          {"failures", v.failures}};
}

template <FieldScalar K>
json outcome_to_json(const QuatOutcome<K>& out) {
  json j{{"decision", to_string(out.decision)}, {"route", out.route}};
  if (!out.reason.empty()) j["reason"] = out.reason;
  if (out.algebra) j["algebra"] = quaternion_to_json(*out.algebra);
  return j;
}

inline json fixture_report_to_json(const harness::FixtureReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) {
    json cj{{"claim", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    claims.push_back(std::move(cj));
  }
  return {{"all_pass", r.all_pass()}, {"claims", std::move(claims)}};
}

inline json fuzz_report_to_json(const harness::FuzzReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json counts = json::object();
    for (const auto& [k, v] : c.counts) counts[k] = v;
    json cj{{"field", c.cell.field().name()},
            {"n", c.cell.n},
            {"type", to_string(c.cell.type)},
            {"trials", c.trials},
            {"violations", c.violations},
            {"counts", std::move(counts)},
            {"messages", c.messages}};
    if (!c.witnesses.empty()) {
      json w = json::array();
      for (const auto& m : c.witnesses)
        w.push_back({{"g", matrix_to_json(m.descriptor)}, {"element", matrix_to_json(m.element)}});
      cj["witnesses"] = std::move(w);
    }
    cells.push_back(std::move(cj));
  }
  return {{"kind", to_string(r.kind)},
          {"seed", r.seed},
          {"trials_per_cell", r.trials_per_cell},
          {"oracle", r.oracle},
          {"violations", r.violations()},
          {"cells", std::move(cells)}};
}

}  // namespace involquat::io
