#include "krlip/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "krlip/atomic.hpp"
#include "krlip/besov.hpp"
#include "krlip/error.hpp"
#include "krlip/generate.hpp"
#include "krlip/io.hpp"
#include "krlip/lipschitz.hpp"
#include "krlip/metric.hpp"
#include "krlip/transport.hpp"

namespace krlip::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

const char* command_name(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Gen: return "gen";
    case Command::Kr: return "kr";
    case Command::Lip: return "lip";
    case Command::Decompose: return "decompose";
    case Command::Besov: return "besov";
    case Command::Hajlasz: return "hajlasz";
    case Command::Doubling: return "doubling";
    case Command::Embed: return "embed";
  }
  return "?";
}

json echo_config(const RunConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  if (!c.action.empty()) j["action"] = c.action;
  if (!c.space_path.empty()) j["space"] = c.space_path;
  if (!c.measure_paths.empty()) j["measures"] = c.measure_paths;
  if (!c.field_paths.empty()) j["fields"] = c.field_paths;
  if (!c.decomposition_path.empty()) j["decomposition"] = c.decomposition_path;
  if (!c.out_path.empty()) j["out"] = c.out_path;
  if (c.alpha) j["alpha"] = *c.alpha;
  switch (c.command) {
    case Command::Besov:
    case Command::Hajlasz:
    case Command::Embed:
      j["s"] = c.s;
      j["p"] = c.p;
      break;
    default: break;
  }
  if (c.delta) j["delta"] = *c.delta;
  if (!c.delta_schedule.empty()) j["delta_schedule"] = c.delta_schedule;
  if (c.command == Command::Gen) {
    j["seed"] = c.seed;
    j["n"] = c.n;
  }
  if (!c.kind.empty()) j["kind"] = c.kind;
  if (c.balanced_only) j["balanced_only"] = true;
  if (c.jobs != 1) j["jobs"] = c.jobs;
  if (c.format == Format::Csv) j["format"] = "csv";
  if (c.C) j["C"] = *c.C;
  if (c.Q) j["Q"] = *c.Q;
  if (c.L) j["L"] = *c.L;
  if (!c.subset.empty()) j["subset"] = c.subset;
  if (c.depth) j["depth"] = c.depth;
  if (c.r0) j["r0"] = *c.r0;
  return j;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double need(const std::optional<double>& v, const char* flag) {
  if (!v) invalid(std::string("missing ") + flag);
  return *v;
}

// Loaded inputs. A measure or field file may carry its own "space", either
// inline or as a path relative to that file.
struct Inputs {
  std::optional<MetricMeasureSpace> mm;
  std::vector<json> measures;
  std::vector<json> fields;
};

std::optional<MetricMeasureSpace> inline_space(const json& doc, const std::string& path) {
  if (!doc.is_object() || !doc.contains("space")) return std::nullopt;
  const json& s = doc["space"];
  if (s.is_string()) {
    fs::path p = s.get<std::string>();
    if (p.is_relative()) p = fs::path(path).parent_path() / p;
    return io::parse_space(io::read_json_file(p));
  }
  return io::parse_space(s);
}

Inputs load(const RunConfig& c) {
  Inputs in;
  for (const auto& p : c.measure_paths) in.measures.push_back(io::read_json_file(p));
  for (const auto& p : c.field_paths) in.fields.push_back(io::read_json_file(p));
  if (!c.space_path.empty()) {
    in.mm = io::parse_space(io::read_json_file(c.space_path));
    return in;
  }
  for (std::size_t i = 0; i < in.measures.size() && !in.mm; ++i) in.mm = inline_space(in.measures[i], c.measure_paths[i]);
  for (std::size_t i = 0; i < in.fields.size() && !in.mm; ++i) in.mm = inline_space(in.fields[i], c.field_paths[i]);
  if (!in.mm) invalid("no space given (--space or an inline \"space\" key)");
  return in;
}

const json& single(const std::vector<json>& docs, const char* flag) {
  if (docs.empty()) invalid(std::string("missing ") + flag);
  return docs.front();
}

std::vector<std::size_t> subset_indices(const FiniteMetricSpace& space, const std::vector<std::string>& ids) {
  if (ids.empty()) invalid("missing --subset");
  std::vector<std::size_t> out;
  for (const auto& id : ids) {
    const auto idx = space.index_of(id);
    if (!idx) throw Error(ErrorCode::UnknownPoint, "unknown point id '" + id + "'");
    out.push_back(*idx);
  }
  return out;
}

json ratio_json(const RatioReport& r) { return json{{"ratios", r.ratios}, {"max_ratio", r.max_ratio}}; }

std::string number_17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// What a command produced: the results object, plus an optional artifact
// that goes to --out instead of the report, plus optional CSV text.
struct Produced {
  json results;
  std::optional<json> artifact;
  std::optional<std::string> csv;
};

Produced do_validate(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& space = in.mm->space();
  return {json{{"valid", true}, {"n", space.size()}, {"diam", space.diam()}, {"total_mass", in.mm->total_mass()}},
          std::nullopt, std::nullopt};
}

Produced do_gen(const RunConfig& c) {
  const SpaceKind kind = parse_space_kind(c.kind);
  const GeneratedSpace g = generate_space(kind, c.n, c.seed, c.alpha);
  json results = {{"kind", to_string(kind)}, {"n", c.n}, {"points", g.mm.size()}, {"diam", g.mm.space().diam()}};
  return {results, io::coords_space_to_json(g.coords, g.mm, c.alpha), std::nullopt};
}

FiniteMetricSpace maybe_snowflake(const FiniteMetricSpace& space, const std::optional<double>& alpha) {
  return alpha ? snowflake(space, *alpha) : space;
}

Produced do_kr(const RunConfig& c) {
  const Inputs in = load(c);
  const FiniteMetricSpace space = maybe_snowflake(in.mm->space(), c.alpha);
  if (c.action == "norm") {
    const SignedMeasure mu = io::parse_measure(single(in.measures, "--measure"), space);
    const KRResult r = c.balanced_only ? kr0_norm(space, mu) : kr_norm(space, mu);
    return {io::kr_result_to_json(space, r), std::nullopt, std::nullopt};
  }
  if (c.action == "batch") {
    if (in.measures.empty()) invalid("missing --measure");
    std::vector<SignedMeasure> mus;
    for (const auto& m : in.measures) mus.push_back(io::parse_measure(m, space));
    const auto outcomes = kr_batch(space, mus, c.jobs);
    json items = json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      json item = {{"measure", c.measure_paths[i]}};
      if (outcomes[i].ok()) {
        item["result"] = io::kr_result_to_json(space, *outcomes[i].result);
      } else {
        ++failed;
        item["error"] = {{"code", std::string(to_string(*outcomes[i].error))}, {"detail", outcomes[i].detail}};
      }
      items.push_back(std::move(item));
    }
    return {json{{"items", items}, {"failed", failed}}, std::nullopt, std::nullopt};
  }
  invalid("kr needs 'norm' or 'batch', got '" + c.action + "'");
}

Produced do_lip(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& space = in.mm->space();
  const ScalarField f = io::parse_field(single(in.fields, "--field"), space);
  const double alpha = c.alpha.value_or(1.0);
  if (c.action == "seminorm") return {json{{"seminorm", holder_seminorm(space, f, alpha)}}, {}, {}};
  if (c.action == "norm") return {json{{"norm", holder_norm(space, f, alpha)}}, {}, {}};
  if (c.action == "modulus") {
    const double delta = need(c.delta, "--delta");
    return {json{{"delta", delta}, {"modulus", lip_modulus(space, f, alpha, delta)}}, {}, {}};
  }
  if (c.action == "dist") {
    const ModulusProfile prof = dist_to_little_lip(space, f, alpha, c.delta_schedule);
    Produced out{json{{"deltas", prof.deltas}, {"omega", prof.omega}, {"estimate", prof.estimate()}}, {}, {}};
    if (c.format == Format::Csv) {
      std::string csv = "delta,omega\n";
      for (std::size_t i = 0; i < prof.deltas.size(); ++i) {
        csv += number_17(prof.deltas[i]) + "," + number_17(prof.omega[i]) + "\n";
      }
      out.csv = std::move(csv);
    }
    return out;
  }
  if (c.action == "opsup") {
    return {json{{"operator_sup", operator_sup(space, f)}, {"holder_norm_1", holder_norm(space, f, 1.0)}}, {}, {}};
  }
  if (c.action == "extend") {
    const auto subset = subset_indices(space, c.subset);
    std::vector<double> values;
    for (std::size_t i : subset) values.push_back(f[i]);
    const double needed = restricted_lipschitz_constant(space, f, subset);
    const double L = c.L.value_or(needed);
    const ScalarField g = extend_lipschitz(space, subset, values, L);
    return {json{{"L", L},
                 {"restricted_constant", needed},
                 {"extension_constant", holder_seminorm(space, g, 1.0)},
                 {"extension", io::field_to_json(space, g)["value"]}},
            io::field_to_json(space, g), {}};
  }
  if (c.action == "assumption-h") {
    const auto subset = subset_indices(space, c.subset);
    const AssumptionHReport r = assumption_h_report(space, f, alpha, subset, need(c.C, "--C"));
    return {json{{"lipschitz_constant", r.lipschitz_constant},
                 {"norm_f", r.norm_f},
                 {"norm_g", r.norm_g},
                 {"ratio", r.ratio},
                 {"C", r.C},
                 {"holds", r.holds},
                 {"max_pointwise_error", r.max_pointwise_error},
                 {"pointwise_bound", r.pointwise_bound},
                 {"pointwise_ok", r.pointwise_ok},
                 {"extension", io::field_to_json(space, r.extension)["value"]}},
            {}, {}};
  }
  invalid("unknown lip action '" + c.action + "'");
}

json bounds_json(const DecompositionBounds& b) {
  return json{{"gamma_sum", b.gamma_sum},
              {"norm", b.norm},
              {"realized_c", b.realized_c},
              {"reconstruction_error", b.reconstruction_error},
              {"upper_bound_holds", b.upper_bound_holds},
              {"lower_bound_holds", b.lower_bound_holds},
              {"all_dipoles_capped", b.all_dipoles_capped},
              {"max_support", b.max_support},
              {"atom_norms", b.atom_norms},
              {"pair_norms", b.pair_norms}};
}

Produced do_decompose(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& space = in.mm->space();
  const SignedMeasure mu = io::parse_measure(single(in.measures, "--measure"), space);
  if (c.action.empty()) {
    const double alpha = need(c.alpha, "--alpha");
    const AtomicDecomposition dec = decompose(space, mu, alpha);
    json results = {{"atoms", dec.atoms.size()}, {"gamma_sum", dec.gamma_sum()}, {"alpha", alpha}};
    return {results, io::decomposition_to_json(space, dec), {}};
  }
  if (c.action == "verify") {
    if (c.decomposition_path.empty()) invalid("missing --decomposition");
    const AtomicDecomposition dec = io::parse_decomposition(io::read_json_file(c.decomposition_path), space);
    const double alpha = c.alpha.value_or(dec.alpha);
    if (alpha != dec.alpha) invalid("--alpha differs from the decomposition's alpha");
    return {bounds_json(verify_bounds(space, mu, dec, alpha)), {}, {}};
  }
  invalid("unknown decompose action '" + c.action + "'");
}

Produced do_besov(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& mm = *in.mm;
  const BesovParams params{c.s, c.p};
  const ScalarField f = io::parse_field(single(in.fields, "--field"), mm.space());
  if (c.action == "seminorm") return {json{{"seminorm", besov_seminorm(mm, f, params)}}, {}, {}};
  if (c.action == "norm") {
    return {json{{"norm", besov_norm(mm, f, params)}, {"lp_norm", lp_norm(mm, f, c.p)},
                 {"seminorm", besov_seminorm(mm, f, params)}},
            {}, {}};
  }
  if (c.action == "clarkson") {
    if (in.fields.size() != 2) invalid("clarkson needs two --field arguments");
    const ScalarField g = io::parse_field(in.fields[1], mm.space());
    const ClarksonReport r = clarkson_check(mm, f, g, params);
    return {json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}}, {}, {}};
  }
  invalid("unknown besov action '" + c.action + "'");
}

json hajlasz_json(const FiniteMetricSpace& space, const HajlaszResult& r) {
  return json{{"seminorm", r.seminorm},
              {"p", r.p},
              {"upper_bound", r.upper_bound},
              {"gradient", io::field_to_json(space, r.gradient)["value"]}};
}

Produced do_hajlasz(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& mm = *in.mm;
  const ScalarField f = io::parse_field(single(in.fields, "--field"), mm.space());
  const HajlaszResult r = c.p == 1.0 ? hajlasz_seminorm_p1(mm, f, c.s) : hajlasz_upper_bound(mm, f, c.s, c.p);
  json results = hajlasz_json(mm.space(), r);
  results["violation"] = hajlasz_violation(mm, f, r.gradient, c.s);
  return {results, {}, {}};
}

Produced do_doubling(const RunConfig& c) {
  const Inputs in = load(c);
  const auto& mm = *in.mm;
  const LowerMassBound fit = fit_lower_mass_bound(mm);
  json results = {{"doubling_constant", estimate_doubling_constant(mm.space())},
                  {"measure_doubling", estimate_measure_doubling(mm)},
                  {"lower_mass_bound", {{"C", fit.C}, {"Q", fit.Q}, {"samples", fit.samples}}}};
  if (c.depth > 0) {
    const NetHierarchy h = build_net_hierarchy(mm.space(), c.depth, c.r0.value_or(mm.space().diam()));
    json levels = json::array();
    for (std::size_t k = 0; k < h.levels.size(); ++k) {
      levels.push_back({{"radius", h.radii[k]},
                        {"size", h.levels[k].size()},
                        {"covering_radius", covering_radius(mm.space(), h.levels[k])}});
    }
    results["nets"] = levels;
  }
  return {results, {}, {}};
}

Produced do_embed(const RunConfig& c) {
  if (c.action != "check") invalid("embed needs 'check', got '" + c.action + "'");
  const Inputs in = load(c);
  const auto& mm = *in.mm;
  if (in.fields.empty()) invalid("missing --field");
  std::vector<ScalarField> fields;
  for (const auto& doc : in.fields) fields.push_back(io::parse_field(doc, mm.space()));
  const auto fitted_Q = [&] { return c.Q ? *c.Q : fit_lower_mass_bound(mm).Q; };

  if (c.kind == "lip-besov") {
    const double alpha = need(c.alpha, "--alpha");
    json items = json::array();
    bool all = true;
    for (const auto& f : fields) {
      const LipBesovReport r = embedding_ratio_lip_besov(mm, f, alpha, BesovParams{c.s, c.p});
      all = all && r.holds;
      items.push_back({{"seminorm", r.seminorm},
                       {"holder_norm", r.holder_norm},
                       {"ratio", r.ratio},
                       {"ceiling", r.ceiling},
                       {"integral_ceiling", r.integral_ceiling},
                       {"holds", r.holds}});
    }
    return {json{{"items", items}, {"holds", all}}, {}, {}};
  }
  if (c.kind == "besov-hajlasz") return {ratio_json(besov_to_hajlasz_check(mm, fields, c.s, c.p)), {}, {}};
  if (c.kind == "linfty") {
    const double Q = fitted_Q();
    json r = ratio_json(linfty_embedding_check(mm, fields, c.s, c.p, Q));
    r["Q"] = Q;
    return {r, {}, {}};
  }
  if (c.kind == "morrey") {
    const LowerMassBound fit = fit_lower_mass_bound(mm);
    const double Q = c.Q.value_or(fit.Q);
    const double C = c.C.value_or(std::numeric_limits<double>::infinity());
    json items = json::array();
    for (const auto& f : fields) {
      const HajlaszResult g = c.p == 1.0 ? hajlasz_seminorm_p1(mm, f, c.s) : hajlasz_upper_bound(mm, f, c.s, c.p);
      const MorreyReport r = morrey_check(mm, f, g, c.s, c.p, C, Q);
      items.push_back({{"exponent", r.exponent},
                       {"gradient_norm", r.gradient_norm},
                       {"c_star", r.c_star},
                       {"finite", std::isfinite(r.c_star)},
                       {"holds", r.holds}});
    }
    return {json{{"items", items}, {"Q", Q}, {"C", C}, {"mass_bound", {{"C", fit.C}, {"Q", fit.Q}}}}, {}, {}};
  }
  throw Error(ErrorCode::BadKind, "unknown embedding kind '" + c.kind + "'");
}

Produced dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Validate: return do_validate(c);
    case Command::Gen: return do_gen(c);
    case Command::Kr: return do_kr(c);
    case Command::Lip: return do_lip(c);
    case Command::Decompose: return do_decompose(c);
    case Command::Besov: return do_besov(c);
    case Command::Hajlasz: return do_hajlasz(c);
    case Command::Doubling: return do_doubling(c);
    case Command::Embed: return do_embed(c);
  }
  invalid("unknown command");
}

std::string error_object(std::string_view code, const std::string& detail) {
  return io::dump(json{{"error", {{"code", std::string(code)}, {"detail", detail}}}}) + "\n";
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    Produced produced = dispatch(config);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json report = {{"tool", kToolName},
                   {"version", kVersion},
                   {"config", echo_config(config)},
                   {"results", std::move(produced.results)},
                   {"wall_ms", wall_ms}};
    const std::string report_text = io::dump(report) + "\n";
    if (produced.artifact) {
      if (config.out_path.empty()) invalid("missing --out");
      io::write_file_atomic(config.out_path, io::dump(*produced.artifact) + "\n");
      out.output = report_text;
    } else if (produced.csv) {
      if (config.out_path.empty()) {
        out.output = *produced.csv;
      } else {
        io::write_file_atomic(config.out_path, *produced.csv);
      }
    } else if (!config.out_path.empty()) {
      io::write_file_atomic(config.out_path, report_text);
    } else {
      out.output = report_text;
    }
  } catch (const Error& e) {
    out.exit_code = e.is_io() ? 2 : 1;
    out.error = error_object(to_string(e.code()), e.detail());
  } catch (const io::json::exception& e) {
    out.exit_code = 2;
    out.error = error_object("ParseError", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    out.exit_code = 2;
    out.error = error_object("IoError", e.what());
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error = error_object("InvalidArgument", e.what());
  }
  return out;
}

std::string results_only(const std::string& report) {
  const json j = json::parse(report);
  return io::dump(j.at("results"));
}

}  // namespace krlip::cli
