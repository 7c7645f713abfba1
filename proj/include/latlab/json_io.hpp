#pragma once

// JSON schemas:
//   Lattice    {"label": string?, "gram": [[int]]}
//   Sublattice {"ambient": Lattice, "basis": [[int]]}
// Integers are JSON numbers when |x| < 2^53 and decimal strings otherwise.

#include "latlab/errors.hpp"
#include "latlab/glue.hpp"
#include "latlab/integer.hpp"
#include "latlab/k3.hpp"
#include "latlab/lattice.hpp"
#include "latlab/matrix.hpp"
#include "latlab/oracle.hpp"
#include "latlab/sublattice.hpp"

#include "json.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

namespace latlab::io {

using json = nlohmann::ordered_json;

inline const Integer& json_safe_limit() {
  static const Integer limit = Integer(1) << 53;
  return limit;
}

inline json to_json(const Integer& x) {
  if (abs(x) < json_safe_limit()) return static_cast<std::int64_t>(x);
  return x.str();
}

inline json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

// [numerator, denominator]
inline json to_json(const Rational& q) { return json::array({to_json(numerator(q)), to_json(denominator(q))}); }

inline Integer integer_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) ok = ok && std::isdigit(static_cast<unsigned char>(s[i]));
    if (ok) return Integer(s);
  }
  throw schema_error("field '" + path + "' must be an integer (number or decimal string)");
}

inline IntVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error("field '" + path + "' must be an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline IntMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error("field '" + path + "' must be an array of integer rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) throw schema_error("field '" + path + "' has ragged rows");
  }
  return IntMatrix::from_rows(rows);
}

inline json to_json(const Lattice& l) {
  json j = json::object();
  if (l.label()) j["label"] = *l.label();
  j["gram"] = to_json(l.gram());
  return j;
}

inline Lattice lattice_from_json(const json& j, const std::string& path = "") {
  const auto field = [&](const char* name) { return path.empty() ? std::string(name) : path + "." + name; };
  if (!j.is_object()) throw schema_error("lattice" + (path.empty() ? "" : " '" + path + "'") + " must be a JSON object");
  if (!j.contains("gram")) throw schema_error("missing field '" + field("gram") + "'");
  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw schema_error("field '" + field("label") + "' must be a string");
    label = j["label"].get<std::string>();
  }
  for (const auto& [key, _] : j.items())
    if (key != "gram" && key != "label") throw schema_error("unknown field '" + field(key.c_str()) + "'");
  const IntMatrix gram = matrix_from_json(j["gram"], field("gram"));
  if (!gram.is_square()) throw shape_error("field '" + field("gram") + "' is not a square matrix");
  return Lattice(gram, label);
}

inline json to_json(const Sublattice& s) {
  json j = json::object();
  j["ambient"] = to_json(s.ambient());
  j["basis"] = to_json(s.basis());
  return j;
}

inline Sublattice sublattice_from_json(const json& j) {
  if (!j.is_object()) throw schema_error("sublattice must be a JSON object");
  for (const char* f : {"ambient", "basis"})
    if (!j.contains(f)) throw schema_error(std::string("missing field '") + f + "'");
  for (const auto& [key, _] : j.items())
    if (key != "ambient" && key != "basis") throw schema_error("unknown field '" + key + "'");
  Lattice ambient = lattice_from_json(j["ambient"], "ambient");
  IntMatrix basis = matrix_from_json(j["basis"], "basis");
  if (basis.rows() == 0) basis = IntMatrix(0, ambient.rank());
  return Sublattice(std::move(ambient), std::move(basis));
}

// Parses text, reporting syntax errors as schema_error with line and column.
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw schema_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

// Reports

inline json discriminant_report(const Lattice& l) {
  const auto a = discriminant_module(l);
  json j = json::object();
  if (l.label()) j["label"] = *l.label();
  j["rank"] = static_cast<std::uint64_t>(l.rank());
  j["det"] = to_json(l.determinant());
  j["disc"] = to_json(l.discriminant());
  j["invariant_factors"] = to_json(a.invariant_factors());
  json q = json::array();
  for (const auto& v : a.q_values()) q.push_back(to_json(v));
  j["q_values"] = q;
  return j;
}

inline json complement_report(const Sublattice& s) {
  const Sublattice t = orthogonal_complement(s);
  json j = json::object();
  j["rank"] = static_cast<std::uint64_t>(t.rank());
  j["basis"] = to_json(t.basis());
  j["gram"] = to_json(t.gram());
  return j;
}

inline json gluing_report(const GluingData& data) {
  const auto id = gluing_order_identity(data);
  json j = json::object();
  j["order"] = to_json(data.order());
  j["invariant_factors"] = to_json(data.group_invariant_factors);
  j["disc_N"] = to_json(id.disc_n);
  j["disc_T"] = to_json(id.disc_t);
  j["disc_H"] = to_json(id.disc_h);
  j["identity_holds"] = id.holds;
  j["anti_isometry_holds"] = anti_isometry_check(data).holds;
  return j;
}

inline json mukai_to_json(const k3::MukaiVector& v) { return to_json(v.coords()); }

inline json moduli_report(const k3::ModuliInvariants& inv) {
  json j = json::object();
  j["n"] = to_json(inv.n);
  j["div"] = to_json(inv.div_v);
  j["crs"] = to_json(inv.crs);
  j["disc_T"] = to_json(inv.disc_t_x);
  j["gluing_order"] = to_json(inv.gluing_order);
  j["disc_ns"] = to_json(inv.disc_ns_x);
  j["fine"] = inv.fine;
  return j;
}

inline json comparison_report(const k3::MukaiVector& v, const k3::MukaiVector& u, const k3::Obstruction& o) {
  json j = json::object();
  j["v"] = mukai_to_json(v);
  j["u"] = mukai_to_json(u);
  j["crs_v"] = to_json(o.v.crs);
  j["crs_u"] = to_json(o.u.crs);
  j["gluing_order_v"] = to_json(o.v.gluing_order);
  j["gluing_order_u"] = to_json(o.u.gluing_order);
  j["disc_ns_v"] = to_json(o.v.disc_ns_x);
  j["disc_ns_u"] = to_json(o.u.disc_ns_x);
  j["verdict"] = k3::to_string(o.verdict);
  j["dimension_mismatch"] = o.dimension_mismatch;
  return j;
}

inline json counterexample_row_json(const k3::CounterexampleRow& r) {
  json j = json::object();
  j["g"] = to_json(r.g);
  j["v"] = mukai_to_json(r.v);
  j["u"] = mukai_to_json(r.u);
  j["crs_v"] = to_json(r.crs_v);
  j["crs_u"] = to_json(r.crs_u);
  j["gluing_order_v"] = to_json(r.gluing_order_v);
  j["gluing_order_u"] = to_json(r.gluing_order_u);
  j["disc_ns_v"] = to_json(r.disc_ns_v);
  j["disc_ns_u"] = to_json(r.disc_ns_u);
  j["verdict"] = k3::to_string(r.verdict);
  j["d_equivalence"] = r.d_equivalence;
  return j;
}

inline json fuzz_report(const oracle::FuzzConfig& cfg, const oracle::FuzzReport& r) {
  json j = json::object();
  j["seed"] = cfg.seed;
  j["trials"] = static_cast<std::uint64_t>(r.trials);
  j["max_rank"] = static_cast<std::uint64_t>(cfg.max_rank);
  j["max_entry"] = cfg.max_entry;
  j["unimodular_instances"] = static_cast<std::uint64_t>(r.unimodular_instances);
  j["identity_failures"] = static_cast<std::uint64_t>(r.identity_failures);
  j["injectivity_failures"] = static_cast<std::uint64_t>(r.injectivity_failures);
  j["surjectivity_failures"] = static_cast<std::uint64_t>(r.surjectivity_failures);
  j["anti_isometry_failures"] = static_cast<std::uint64_t>(r.anti_isometry_failures);
  j["mismatches"] = static_cast<std::uint64_t>(r.mismatches);
  json f = json::array();
  for (const auto& x : r.failures) {
    json e = json::object();
    e["seed"] = x.seed;
    e["trial"] = static_cast<std::uint64_t>(x.trial);
    e["what"] = x.what;
    e["ambient"] = x.ambient;
    e["sublattice"] = x.sublattice;
    f.push_back(e);
  }
  j["failures"] = f;
  j["passed"] = r.passed();
  return j;
}

namespace detail {

inline std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace detail

// Markdown rendering: an array of objects becomes one table with a row per
// object, a single object becomes a field/value table. Field order follows
// the JSON.
inline std::string to_markdown(const json& j) {
  std::string out;
  if (j.is_array()) {
    if (j.empty()) return "(no rows)\n";
    std::string head = "|", rule = "|";
    for (const auto& [key, _] : j.front().items()) {
      head += " " + key + " |";
      rule += " --- |";
    }
    out += head + "\n" + rule + "\n";
    for (const auto& row : j) {
      out += "|";
      for (const auto& [key, value] : row.items()) out += " " + detail::cell(value) + " |";
      out += "\n";
    }
    return out;
  }
  out += "| field | value |\n| --- | --- |\n";
  for (const auto& [key, value] : j.items()) out += "| " + key + " | " + detail::cell(value) + " |\n";
  return out;
}

}  // namespace latlab::io
