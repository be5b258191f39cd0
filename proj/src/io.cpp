#include "krlip/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "krlip/error.hpp"

namespace krlip::io {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // Keep floats recognizable as floats after a round trip.
  if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void write_value(std::string& out, const json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_value(out, e, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: write_number(out, v.get<double>()); return;
    default: out += v.dump(); return;
  }
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where + " must be a number");
  return j.get<double>();
}

std::vector<std::vector<double>> matrix(const json& j, const char* key) {
  const json& m = require(j, key);
  if (!m.is_array()) parse_fail(std::string("'") + key + "' must be an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : m) {
    if (!row.is_array()) parse_fail(std::string("'") + key + "' rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(number(v, std::string(key) + " entry"));
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t lookup(const FiniteMetricSpace& space, const std::string& id) {
  const auto idx = space.index_of(id);
  if (!idx) throw Error(ErrorCode::UnknownPoint, "unknown point id '" + id + "'");
  return *idx;
}

// Per-point numbers given as {"id": v} or as a full array.
std::vector<double> per_point(const json& j, const FiniteMetricSpace& space, const char* what,
                              bool require_all, double fill) {
  std::vector<double> out(space.size(), fill);
  if (j.is_array()) {
    if (j.size() != space.size()) {
      throw Error(ErrorCode::SizeMismatch, std::string(what) + " array has " + std::to_string(j.size()) +
                                               " entries for " + std::to_string(space.size()) + " points");
    }
    for (std::size_t i = 0; i < j.size(); ++i) out[i] = number(j[i], what);
    return out;
  }
  if (!j.is_object()) parse_fail(std::string(what) + " must be an object or an array");
  std::vector<bool> seen(space.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::size_t i = lookup(space, it.key());
    out[i] = number(it.value(), std::string(what) + " of '" + it.key() + "'");
    seen[i] = true;
  }
  if (require_all) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (!seen[i]) throw Error(ErrorCode::SizeMismatch, std::string(what) + " missing point '" + space.id(i) + "'");
    }
  }
  return out;
}

json per_point_object(const FiniteMetricSpace& space, const std::vector<double>& v) {
  json o = json::object();
  for (std::size_t i = 0; i < space.size(); ++i) o[space.id(i)] = v[i];
  return o;
}

}  // namespace

std::string dump(const json& value, int indent) {
  std::string out;
  write_value(out, value, indent, 0);
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw Error(ErrorCode::IoError, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto '" + path.string() + "'");
  }
}

MetricMeasureSpace parse_space(const json& j) {
  if (!j.is_object()) parse_fail("space must be a JSON object");
  std::vector<std::string> ids;
  if (j.contains("points")) {
    if (!j["points"].is_array()) parse_fail("'points' must be an array of strings");
    for (const auto& p : j["points"]) {
      if (!p.is_string()) parse_fail("point ids must be strings");
      ids.push_back(p.get<std::string>());
    }
  }
  std::optional<FiniteMetricSpace> space;
  if (j.contains("dist")) {
    space = FiniteMetricSpace::validate(matrix(j, "dist"), ids);
  } else if (j.contains("coords")) {
    const std::string metric = j.value("metric", std::string("euclidean"));
    if (metric != "euclidean") throw Error(ErrorCode::BadKind, "unsupported metric '" + metric + "'");
    space = FiniteMetricSpace::euclidean(matrix(j, "coords"), ids);
  } else {
    parse_fail("space needs 'dist' or 'coords'");
  }
  if (j.contains("alpha") && !j["alpha"].is_null()) space = snowflake(*space, number(j["alpha"], "alpha"));
  if (j.contains("weights")) {
    std::vector<double> w = per_point(j["weights"], *space, "weights", true, 0.0);
    return MetricMeasureSpace(std::move(*space), std::move(w));
  }
  return MetricMeasureSpace::uniform(std::move(*space));
}

json space_to_json(const MetricMeasureSpace& mm) {
  json j;
  j["points"] = mm.space().ids();
  j["dist"] = mm.space().matrix();
  j["weights"] = mm.weight();
  return j;
}

json coords_space_to_json(const std::vector<std::vector<double>>& coords, const MetricMeasureSpace& mm,
                          std::optional<double> alpha) {
  json j;
  j["points"] = mm.space().ids();
  j["coords"] = coords;
  j["metric"] = "euclidean";
  if (alpha) j["alpha"] = *alpha;
  j["weights"] = mm.weight();
  return j;
}

SignedMeasure parse_measure(const json& j, const FiniteMetricSpace& space) {
  return SignedMeasure(per_point(require(j, "mass"), space, "mass", false, 0.0));
}

json measure_to_json(const FiniteMetricSpace& space, const SignedMeasure& mu) {
  return json{{"mass", per_point_object(space, mu.mass)}};
}

ScalarField parse_field(const json& j, const FiniteMetricSpace& space) {
  return ScalarField(per_point(require(j, "value"), space, "value", true, 0.0));
}

json field_to_json(const FiniteMetricSpace& space, const ScalarField& f) {
  return json{{"value", per_point_object(space, f.value)}};
}

AtomicDecomposition parse_decomposition(const json& j, const FiniteMetricSpace& space) {
  AtomicDecomposition dec;
  dec.alpha = number(require(j, "alpha"), "alpha");
  const json& atoms = require(j, "atoms");
  if (!atoms.is_array()) parse_fail("'atoms' must be an array");
  for (const auto& a : atoms) {
    const double gamma = number(require(a, "gamma"), "gamma");
    const std::string kind = require(a, "kind").get<std::string>();
    if (kind == "dipole") {
      const std::size_t x = lookup(space, require(a, "x").get<std::string>());
      const std::size_t y = lookup(space, require(a, "y").get<std::string>());
      if (x == y) parse_fail("dipole endpoints must differ");
      dec.atoms.push_back({gamma, Atom::dipole(x, y, std::pow(space(x, y), dec.alpha))});
    } else if (kind == "dirac") {
      const std::size_t z = lookup(space, require(a, "z").get<std::string>());
      const int sign = a.value("sign", 1);
      if (sign != 1 && sign != -1) parse_fail("dirac sign must be 1 or -1");
      dec.atoms.push_back({gamma, Atom::dirac(z, sign)});
    } else {
      throw Error(ErrorCode::BadKind, "unknown atom kind '" + kind + "'");
    }
  }
  return dec;
}

json decomposition_to_json(const FiniteMetricSpace& space, const AtomicDecomposition& dec) {
  json atoms = json::array();
  for (const auto& [gamma, atom] : dec.atoms) {
    if (atom.kind == Atom::Kind::Dipole) {
      atoms.push_back({{"gamma", gamma}, {"kind", "dipole"}, {"x", space.id(atom.x)}, {"y", space.id(atom.y)}});
    } else {
      atoms.push_back({{"gamma", gamma}, {"kind", "dirac"}, {"z", space.id(atom.z)}, {"sign", atom.sign}});
    }
  }
  return json{{"alpha", dec.alpha}, {"atoms", atoms}};
}

json kr_result_to_json(const FiniteMetricSpace& space, const KRResult& r) {
  json plan = json::array();
  for (const Arc& a : r.plan.arcs) {
    plan.push_back({{"from", space.id(a.from)}, {"to", space.id(a.to)}, {"mass", a.mass}});
  }
  const json residual = per_point_object(space, r.residual.mass);
  return json{{"primal", r.primal_value},
              {"dual", r.dual_value},
              {"gap", r.gap},
              {"plan", plan},
              {"residual", residual},
              {"potential", per_point_object(space, r.potential.value)}};
}

json schemas() {
  const json number_map = {{"type", "object"}, {"additionalProperties", {{"type", "number"}}}};
  const json matrix = {{"type", "array"},
                       {"items", {{"type", "array"}, {"items", {{"type", "number"}}}}}};
  json space = {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "space"},
      {"type", "object"},
      {"properties",
       {{"points", {{"type", "array"}, {"items", {{"type", "string"}}}, {"uniqueItems", true}}},
        {"dist", matrix},
        {"coords", matrix},
        {"metric", {{"enum", {"euclidean"}}}},
        {"alpha", {{"type", "number"}, {"exclusiveMinimum", 0}, {"maximum", 1}}},
        {"weights", {{"oneOf", {number_map, {{"type", "array"}, {"items", {{"type", "number"}, {"exclusiveMinimum", 0}}}}}}}}}},
      {"oneOf", {{{"required", {"dist"}}}, {{"required", {"coords"}}}}}};
  json measure = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                  {"title", "measure"},
                  {"type", "object"},
                  {"properties", {{"space", {{"oneOf", {{{"type", "string"}}, {{"type", "object"}}}}}}, {"mass", number_map}}},
                  {"required", {"mass"}}};
  json field = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"title", "field"},
                {"type", "object"},
                {"properties", {{"space", {{"oneOf", {{{"type", "string"}}, {{"type", "object"}}}}}}, {"value", number_map}}},
                {"required", {"value"}}};
  json atom = {{"type", "object"},
               {"properties",
                {{"gamma", {{"type", "number"}, {"minimum", 0}}},
                 {"kind", {{"enum", {"dipole", "dirac"}}}},
                 {"x", {{"type", "string"}}},
                 {"y", {{"type", "string"}}},
                 {"z", {{"type", "string"}}},
                 {"sign", {{"enum", {1, -1}}}}}},
               {"required", {"gamma", "kind"}}};
  json decomposition = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                        {"title", "decomposition"},
                        {"type", "object"},
                        {"properties", {{"alpha", {{"type", "number"}}}, {"atoms", {{"type", "array"}, {"items", atom}}}}},
                        {"required", {"alpha", "atoms"}}};
  const json arc = {{"type", "object"},
                    {"properties",
                     {{"from", {{"type", "string"}}}, {"to", {{"type", "string"}}}, {"mass", {{"type", "number"}}}}},
                    {"required", {"from", "to", "mass"}}};
  json kr_report = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                    {"title", "kr report results"},
                    {"type", "object"},
                    {"properties",
                     {{"primal", {{"type", "number"}}},
                      {"dual", {{"type", "number"}}},
                      {"gap", {{"type", "number"}}},
                      {"plan", {{"type", "array"}, {"items", arc}}},
                      {"residual", number_map},
                      {"potential", number_map}}},
                    {"required", {"primal", "dual", "gap", "plan", "residual", "potential"}}};
  json report = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                 {"title", "report"},
                 {"type", "object"},
                 {"properties",
                  {{"tool", {{"type", "string"}}},
                   {"version", {{"type", "string"}}},
                   {"config", {{"type", "object"}}},
                   {"results", {{"type", "object"}}},
                   {"wall_ms", {{"type", "number"}}}}},
                 {"required", {"tool", "version", "config", "results", "wall_ms"}}};
  json error = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"title", "error"},
                {"type", "object"},
                {"properties",
                 {{"error", {{"type", "object"},
                             {"properties", {{"code", {{"type", "string"}}}, {"detail", {{"type", "string"}}}}},
                             {"required", {"code", "detail"}}}}}},
                {"required", {"error"}}};
  return json{{"space", space},   {"measure", measure},     {"field", field},
              {"decomposition", decomposition}, {"kr_results", kr_report}, {"report", report},
              {"error", error}};
}

}  // namespace krlip::io
