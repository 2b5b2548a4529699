#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "config.hpp"
#include "run.hpp"

using namespace cavityvdw::app;

int main(int argc, char** argv) {
  CLI::App app{"Strong-coupling van der Waals potentials and forces between two atoms in a cavity",
               "cavityvdw"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> variant;
  std::optional<double> tolerance;

  const std::map<std::string, std::string> help{
      {"scan-rabi", "squared Rabi frequency contributions over a position sweep"},
      {"dressed", "dressed-state energies and potentials over a position sweep"},
      {"potential", "perturbative resonant potential (planar or free space)"},
      {"force", "dressed-state and superposition forces over a position sweep"},
      {"weak-limit", "strong-coupling shifts against the large-detuning limit"},
      {"kk-check", "numeric Kramers-Kronig transform of the cavity Lorentzian"},
      {"xcheck", "cross-validation suite; exit code 2 if any check fails"},
  };
  for (const auto& [name, text] : help) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output table path; manifest goes to <out>.manifest.json");
    sub->add_option("--format", format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--variant", variant, "corrected or as-printed (sets every variant flag)")
        ->check(CLI::IsMember({"corrected", "as-printed"}));
    sub->add_option("--tolerance", tolerance, "relative quadrature tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_validation;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Command command = *parse_command(name);
  CliOverrides cli;
  cli.out = out;
  if (format) cli.format = *format == "csv" ? Format::csv : Format::jsonl;
  if (variant)
    cli.variant = *variant == "corrected" ? cavityvdw::Variant::corrected
                                          : cavityvdw::Variant::as_printed;
  cli.tolerance = tolerance;

  RunConfig cfg;
  try {
    cfg = load_config(config_path, command, cli);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_validation;
  }
  return execute(cfg, std::cout, std::cerr);
}
