#pragma once

#include "riesz/convergence.hpp"
#include "riesz/oracle.hpp"

#include <json.hpp>

namespace riesz::json_io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorKind::schema, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::int64_t get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema_error(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

// ---------------------------------------------------------------------------
// Rationals: "p", "p/q" or a JSON integer
// ---------------------------------------------------------------------------

inline Json encode(const Rational& r) { return to_string(r); }

inline Rational decode_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema_error("rational values must be strings like \"1/2\" or integers");
}

inline Json encode(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(encode(r));
  return out;
}

inline Json encode(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(encode(row));
  return out;
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

using SpaceTable = std::map<std::string, SpacePtr>;

inline const char* to_string(NormTag t) {
  switch (t) {
    case NormTag::sup: return "sup";
    case NormTag::l1: return "l1";
    case NormTag::l2: return "l2";
  }
  return "?";
}

inline Json encode(const Space& s) {
  Json j;
  j["id"] = s.id;
  switch (s.kind) {
    case SpaceKind::finite_grid:
      j["kind"] = "grid";
      j["points"] = s.points;
      break;
    case SpaceKind::seq_model:
      j["kind"] = "seq";
      j["norm"] = to_string(s.norm_tag);
      break;
    case SpaceKind::linf_model: j["kind"] = "linf"; break;
    case SpaceKind::tensor_grid:
      j["kind"] = "tensor";
      j["left"] = s.left->id;
      j["right"] = s.right->id;
      break;
  }
  return j;
}

inline const SpacePtr& lookup(const SpaceTable& table, const std::string& id) {
  auto it = table.find(id);
  if (it == table.end()) schema_error("unknown space '" + id + "'");
  return it->second;
}

/// {"id", "kind": grid|seq|linf|tensor, "points" | "size" | "norm" | "left"/"right"}
inline SpacePtr decode_space(const Json& j, const SpaceTable& known) {
  const std::string id = get_string(j, "id");
  const std::string kind = get_string(j, "kind");
  if (kind == "grid") {
    if (j.contains("points")) {
      if (!j["points"].is_array()) schema_error("grid points must be a list");
      std::vector<std::string> pts;
      for (const auto& p : j["points"]) {
        if (!p.is_string()) schema_error("grid point labels must be strings");
        pts.push_back(p.get<std::string>());
      }
      return make_grid(id, std::move(pts));
    }
    const auto n = get_int(j, "size");
    if (n < 1) schema_error("grid size must be >= 1");
    return make_grid(id, static_cast<std::size_t>(n));
  }
  if (kind == "seq") {
    const std::string nm = j.contains("norm") ? get_string(j, "norm") : "l1";
    if (nm == "l1") return make_seq(id, NormTag::l1);
    if (nm == "l2") return make_seq(id, NormTag::l2);
    if (nm == "sup" || nm == "c0") return make_seq(id, NormTag::sup);
    schema_error("unknown sequence norm '" + nm + "'");
  }
  if (kind == "linf") return make_linf(id);
  if (kind == "tensor")
    return make_tensor(id, lookup(known, get_string(j, "left")), lookup(known, get_string(j, "right")));
  schema_error("unknown space kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

inline Json encode(const Element& x) {
  Json j;
  j["space"] = x.space().id;
  Json coords = Json::object();
  for (const auto& [k, v] : x.coords()) coords[index_key(x.space(), k)] = encode(v);
  j["coords"] = std::move(coords);
  j["tail"] = encode(x.tail());
  return j;
}

/// {"space", "coords": {key: value}, "tail"}, or "values": [...] (1-based)
/// on factor spaces, or "matrix": [[...]] on tensor grids.
inline Element decode_element(const Json& j, const SpaceTable& spaces) {
  const SpacePtr& s = lookup(spaces, get_string(j, "space"));
  const Rational tail = j.contains("tail") ? decode_rational(j["tail"]) : Rational(0);
  Element::Coords c;
  if (j.contains("coords")) {
    if (!j["coords"].is_object()) schema_error("element coords must be an object");
    for (const auto& [key, val] : j["coords"].items()) c[parse_index_key(*s, key)] = decode_rational(val);
  }
  if (j.contains("values")) {
    if (!j["values"].is_array()) schema_error("element values must be a list");
    std::int64_t k = 1;
    for (const auto& v : j["values"]) c[{k++, 0}] = decode_rational(v);
  }
  if (j.contains("matrix")) {
    if (!j["matrix"].is_array()) schema_error("element matrix must be a list of rows");
    std::int64_t i = 1;
    for (const auto& row : j["matrix"]) {
      if (!row.is_array()) schema_error("element matrix rows must be lists");
      std::int64_t k = 1;
      for (const auto& v : row) c[{i, k++}] = decode_rational(v);
      ++i;
    }
  }
  return Element(s, std::move(c), tail);
}

// ---------------------------------------------------------------------------
// Units, functionals, neighborhoods
// ---------------------------------------------------------------------------

inline Json encode(const UnitSpec& u) {
  Json j;
  switch (u.kind) {
    case UnitSpec::Kind::constant_one: j["kind"] = "one"; break;
    case UnitSpec::Kind::geometric: j["kind"] = "geometric"; break;
    case UnitSpec::Kind::explicit_element:
      j["kind"] = "element";
      j["element"] = encode(*u.element);
      break;
    case UnitSpec::Kind::tensor:
    case UnitSpec::Kind::join:
      j["kind"] = u.kind == UnitSpec::Kind::tensor ? "tensor" : "join";
      j["left"] = encode(*u.first);
      j["right"] = encode(*u.second);
      break;
  }
  return j;
}

inline UnitSpec decode_unit(const Json& j, const SpaceTable& spaces) {
  const std::string kind = get_string(j, "kind");
  if (kind == "one") return UnitSpec::one();
  if (kind == "geometric") return UnitSpec::geometric();
  if (kind == "element") return UnitSpec::of(decode_element(field(j, "element"), spaces));
  if (kind == "tensor")
    return UnitSpec::tensor(decode_unit(field(j, "left"), spaces), decode_unit(field(j, "right"), spaces));
  if (kind == "join")
    return UnitSpec::join(decode_unit(field(j, "left"), spaces), decode_unit(field(j, "right"), spaces));
  schema_error("unknown unit kind '" + kind + "'");
}

inline Json encode(const Functional& f, const Space& s) {
  Json j;
  switch (f.kind) {
    case Functional::Kind::coordinate:
      j["kind"] = "coordinate";
      j["index"] = index_key(s, f.index);
      break;
    case Functional::Kind::ones_sum: j["kind"] = "ones_sum"; break;
    case Functional::Kind::weighted: {
      j["kind"] = "weighted";
      Json w = Json::object();
      for (const auto& [k, v] : f.weights) w[index_key(s, k)] = encode(v);
      j["weights"] = std::move(w);
      break;
    }
    case Functional::Kind::product:
      j["kind"] = "product";
      j["left"] = encode(*f.left, *s.left);
      j["right"] = encode(*f.right, *s.right);
      break;
  }
  return j;
}

inline Functional decode_functional(const Json& j, const Space& s) {
  const std::string kind = get_string(j, "kind");
  if (kind == "coordinate") {
    const Json& idx = field(j, "index");
    if (idx.is_number_integer()) return Functional::coordinate(idx.get<std::int64_t>());
    if (!idx.is_string()) schema_error("functional index must be a string or integer");
    return Functional::coordinate(parse_index_key(s, idx.get<std::string>()));
  }
  if (kind == "ones_sum") return Functional::ones_sum();
  if (kind == "weighted") {
    std::map<Index, Rational> w;
    for (const auto& [key, val] : field(j, "weights").items()) w[parse_index_key(s, key)] = decode_rational(val);
    return Functional::weighted(std::move(w));
  }
  if (kind == "product") {
    if (s.kind != SpaceKind::tensor_grid) schema_error("product functionals live on tensor grids");
    return Functional::product(decode_functional(field(j, "left"), *s.left),
                               decode_functional(field(j, "right"), *s.right));
  }
  schema_error("unknown functional kind '" + kind + "'");
}

inline Json encode(const SolidNbhd& n) {
  Json j;
  j["space"] = n.space->id;
  j["unit"] = encode(n.unit);
  j["eps"] = encode(n.eps);
  return j;
}

inline SolidNbhd decode_nbhd(const Json& j, const SpaceTable& spaces) {
  const SpacePtr& s = lookup(spaces, get_string(j, "space"));
  const UnitSpec u = j.contains("unit") ? decode_unit(j["unit"], spaces) : default_unit(*s);
  return SolidNbhd(s, u, decode_rational(field(j, "eps")));
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

inline const char* family_name(TraceSpec::Family f) {
  using F = TraceSpec::Family;
  switch (f) {
    case F::scaled_basis: return "scaled_basis";
    case F::basis: return "basis";
    case F::diagonal_scaled: return "diagonal_scaled";
    case F::constant: return "constant";
    case F::explicit_list: return "explicit";
    case F::pointwise: return "pointwise";
    case F::sum: return "sum";
    case F::difference: return "difference";
  }
  return "?";
}

inline Json encode(const TraceSpec& t) {
  using F = TraceSpec::Family;
  Json j;
  j["family"] = family_name(t.family);
  j["space"] = t.space->id;
  switch (t.family) {
    case F::scaled_basis:
      j["coef"] = t.coef.text();
      if (t.index) j["index"] = *t.index;
      break;
    case F::basis:
      if (t.index) j["index"] = *t.index;
      break;
    case F::diagonal_scaled: break;
    case F::constant: j["element"] = encode(t.values.front()); break;
    case F::explicit_list: {
      Json xs = Json::array();
      for (const auto& x : t.values) xs.push_back(encode(x));
      j["elements"] = std::move(xs);
      break;
    }
    case F::pointwise: {
      Json cs = Json::array();
      for (const auto& c : t.coefs) cs.push_back(c.text());
      j["coefs"] = std::move(cs);
      break;
    }
    case F::sum:
    case F::difference:
      j["first"] = encode(*t.first);
      j["second"] = encode(*t.second);
      break;
  }
  return j;
}

using TraceTable = std::map<std::string, TraceSpec>;

/// {"family", "space", "coef", "index", ...}; "first"/"second" of sum and
/// difference are either inline traces or ids of earlier traces.
inline TraceSpec decode_trace(const Json& j, const SpaceTable& spaces, const TraceTable& known = {}) {
  auto sub = [&](const char* key) -> TraceSpec {
    const Json& v = field(j, key);
    if (v.is_string()) {
      auto it = known.find(v.get<std::string>());
      if (it == known.end()) schema_error("unknown trace '" + v.get<std::string>() + "'");
      return it->second;
    }
    return decode_trace(v, spaces, known);
  };
  const std::string fam = get_string(j, "family");
  auto index = [&]() -> std::optional<std::int64_t> {
    if (!j.contains("index")) return std::nullopt;
    return get_int(j, "index");
  };
  if (fam == "sum") return TraceSpec::sum(sub("first"), sub("second"));
  if (fam == "difference") return TraceSpec::difference(sub("first"), sub("second"));
  const SpacePtr& s = lookup(spaces, get_string(j, "space"));
  if (fam == "scaled_basis") return TraceSpec::scaled_basis(s, Coef(get_string(j, "coef")), index());
  if (fam == "basis") return TraceSpec::basis(s, index());
  if (fam == "diagonal_scaled") return TraceSpec::diagonal_scaled(s);
  if (fam == "constant") return TraceSpec::constant(decode_element(field(j, "element"), spaces));
  if (fam == "explicit") {
    std::vector<Element> xs;
    for (const auto& e : field(j, "elements")) xs.push_back(decode_element(e, spaces));
    return TraceSpec::explicit_list(s, std::move(xs));
  }
  if (fam == "pointwise") {
    std::vector<Coef> cs;
    for (const auto& c : field(j, "coefs")) {
      if (!c.is_string()) schema_error("pointwise coefficients must be strings");
      cs.emplace_back(c.get<std::string>());
    }
    return TraceSpec::pointwise(s, std::move(cs));
  }
  schema_error("unknown trace family '" + fam + "'");
}

// ---------------------------------------------------------------------------
// Verdicts, certificates, audits
// ---------------------------------------------------------------------------

inline Json encode(const Certificate& c) {
  Json j;
  j["kind"] = c.kind == Certificate::Kind::dichotomy ? "dichotomy" : "oracle";
  j["x1"] = c.x1 ? encode(*c.x1) : Json();
  j["y1"] = c.y1 ? encode(*c.y1) : Json();
  j["resolution"] = c.resolution ? encode(*c.resolution) : Json();
  return j;
}

inline Json encode(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.witness) j["witness"] = {{"index", v.witness->index}, {"value", encode(v.witness->value)}};
  else j["witness"] = nullptr;
  j["detail"] = v.detail;
  j["threshold"] = encode(v.threshold);
  j["squared"] = v.squared;
  return j;
}

inline Json encode(const AuditResult& r) {
  Json j;
  j["claim_id"] = to_string(r.id);
  j["statement"] = claim_statement(r.id);
  j["dims"] = std::to_string(r.rows) + "x" + std::to_string(r.cols);
  j["mode"] = to_string(r.mode);
  if (r.mode == AuditMode::randomized) {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
  }
  j["values"] = encode(r.values);
  j["status"] = to_string(r.status);
  j["tuples_checked"] = r.checked;
  j["violations"] = r.violations;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json wj;
    Json args;
    for (const auto& [name, vals] : w.args) args[name] = encode(vals);
    wj["args"] = std::move(args);
    wj["lhs"] = encode(w.lhs);
    wj["rhs"] = encode(w.rhs);
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

/// Two-space-indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace riesz::json_io
