#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "krlip/cli.hpp"
#include "krlip/io.hpp"

namespace {

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(std::stod(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> parse_ids(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_error(const std::string& code, const std::string& detail) {
  std::cerr << krlip::io::dump({{"error", {{"code", code}, {"detail", detail}}}}) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using krlip::cli::Command;
  krlip::cli::RunConfig cfg;

  CLI::App app{"Transport norms, Hölder and Besov analysis on finite metric spaces"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  bool show_schema = false;
  app.add_flag("--version", show_version, "Print the version");
  app.add_flag("--schema", show_schema, "Print the JSON schemas");
  app.add_option("--jobs", cfg.jobs, "Worker threads for batch items")->check(CLI::PositiveNumber);

  std::string schedule_text;
  std::string subset_text;
  std::string format_text = "json";
  std::optional<double> alpha, delta, C, Q, L, r0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--space", cfg.space_path, "Space JSON");
    sub->add_option("--out", cfg.out_path, "Output path");
    sub->add_option("--jobs", cfg.jobs, "Worker threads for batch items")->check(CLI::PositiveNumber);
  };
  const auto measure = [&](CLI::App* sub) { sub->add_option("--measure", cfg.measure_paths, "Measure JSON"); };
  const auto field = [&](CLI::App* sub) { sub->add_option("--field", cfg.field_paths, "Field JSON"); };
  const auto smooth = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.s, "Smoothness");
    sub->add_option("--p", cfg.p, "Integrability");
  };
  const auto set_cmd = [&](CLI::App* sub, Command c) {
    sub->callback([&cfg, c] { cfg.command = c; });
  };

  auto* validate = app.add_subcommand("validate", "Check a space file");
  common(validate);
  set_cmd(validate, Command::Validate);

  auto* gen = app.add_subcommand("gen", "Generate a space");
  common(gen);
  gen->add_option("--kind", cfg.kind, "grid1d|grid2d|cantor|random-euclidean")->required();
  gen->add_option("--n", cfg.n, "Point count")->required();
  gen->add_option("--seed", cfg.seed, "Seed");
  gen->add_option("--alpha", alpha, "Snowflake exponent");
  set_cmd(gen, Command::Gen);

  auto* kr = app.add_subcommand("kr", "Transport norms");
  kr->require_subcommand(1);
  for (const char* action : {"norm", "batch"}) {
    auto* sub = kr->add_subcommand(action, std::string(action) == "norm" ? "Norm of one measure" : "Norms of many");
    common(sub);
    measure(sub);
    sub->add_option("--alpha", alpha, "Snowflake the space first");
    sub->add_flag("--balanced-only", cfg.balanced_only, "Balanced norm only");
    sub->callback([&cfg, action] {
      cfg.command = Command::Kr;
      cfg.action = action;
    });
  }

  auto* lip = app.add_subcommand("lip", "Hölder analysis");
  lip->require_subcommand(1);
  for (const char* action : {"seminorm", "norm", "modulus", "dist", "opsup", "extend", "assumption-h"}) {
    auto* sub = lip->add_subcommand(action, action);
    common(sub);
    field(sub);
    sub->add_option("--alpha", alpha, "Hölder exponent");
    sub->add_option("--delta", delta, "Scale");
    sub->add_option("--delta-schedule", schedule_text, "Comma-separated decreasing scales");
    sub->add_option("--subset", subset_text, "Comma-separated point ids");
    sub->add_option("--L", L, "Extension constant");
    sub->add_option("--C", C, "Comparison constant");
    sub->add_option("--format", format_text, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->callback([&cfg, action] {
      cfg.command = Command::Lip;
      cfg.action = action;
    });
  }

  auto* dec = app.add_subcommand("decompose", "Atomic decomposition");
  common(dec);
  measure(dec);
  dec->add_option("--alpha", alpha, "Snowflake exponent");
  dec->callback([&cfg] { cfg.command = Command::Decompose; });
  auto* verify = dec->add_subcommand("verify", "Check a decomposition");
  common(verify);
  measure(verify);
  verify->add_option("--alpha", alpha, "Snowflake exponent");
  verify->add_option("--decomposition", cfg.decomposition_path, "Decomposition JSON")->required();
  verify->callback([&cfg] {
    cfg.command = Command::Decompose;
    cfg.action = "verify";
  });

  auto* besov = app.add_subcommand("besov", "Besov seminorms");
  besov->require_subcommand(1);
  for (const char* action : {"seminorm", "norm", "clarkson"}) {
    auto* sub = besov->add_subcommand(action, action);
    common(sub);
    field(sub);
    smooth(sub);
    sub->callback([&cfg, action] {
      cfg.command = Command::Besov;
      cfg.action = action;
    });
  }

  auto* haj = app.add_subcommand("hajlasz", "Hajłasz seminorm");
  common(haj);
  field(haj);
  smooth(haj);
  set_cmd(haj, Command::Hajlasz);

  auto* dbl = app.add_subcommand("doubling", "Doubling and mass-bound estimates");
  common(dbl);
  dbl->add_option("--depth", cfg.depth, "Net hierarchy depth");
  dbl->add_option("--r0", r0, "Net hierarchy top radius");
  set_cmd(dbl, Command::Doubling);

  auto* embed = app.add_subcommand("embed", "Embedding checks");
  embed->require_subcommand(1);
  auto* check = embed->add_subcommand("check", "Run one check");
  common(check);
  field(check);
  smooth(check);
  check->add_option("--kind", cfg.kind, "lip-besov|besov-hajlasz|morrey|linfty")->required();
  check->add_option("--alpha", alpha, "Hölder exponent");
  check->add_option("--C", C, "Constant to compare against");
  check->add_option("--Q", Q, "Mass-bound exponent");
  check->callback([&cfg] {
    cfg.command = Command::Embed;
    cfg.action = "check";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("InvalidArgument", e.what());
    return 1;
  }

  if (show_version) {
    std::cout << krlip::cli::kToolName << " " << krlip::cli::kVersion << "\n";
    return 0;
  }
  if (show_schema) {
    std::cout << krlip::io::dump(krlip::io::schemas()) << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 1;
  }

  try {
    if (!schedule_text.empty()) cfg.delta_schedule = parse_schedule(schedule_text);
  } catch (const std::exception&) {
    print_error("InvalidArgument", "bad --delta-schedule '" + schedule_text + "'");
    return 1;
  }
  if (!subset_text.empty()) cfg.subset = parse_ids(subset_text);
  cfg.format = format_text == "csv" ? krlip::cli::Format::Csv : krlip::cli::Format::Json;
  cfg.alpha = alpha;
  cfg.delta = delta;
  cfg.C = C;
  cfg.Q = Q;
  cfg.L = L;
  cfg.r0 = r0;

  const auto outcome = krlip::cli::run(cfg);
  std::cout << outcome.output;
  std::cerr << outcome.error;
  return outcome.exit_code;
}
