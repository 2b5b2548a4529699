#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cavityvdw/constants.hpp"
#include "cavityvdw/dressed.hpp"
#include "cavityvdw/planarcavity.hpp"
#include "cavityvdw/types.hpp"

namespace cavityvdw::app {

/// Bad configuration or command line input; exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { scan_rabi, dressed, potential, force, weak_limit, kk_check, xcheck };
enum class Scenario { planar, free_space };
enum class Format { csv, jsonl };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);
const char* to_string(Scenario s);
const char* to_string(Format f);

struct CavityConfig {
  double width = 1e-6;
  double delta = 1e-3;
  int mode_index = 1;
};

struct AtomConfig {
  // Planar: on-axis positions (m) and detuning w_nu - w_10 (rad/s).
  double z_a = 0.0;
  double z_b = 0.0;
  double detuning = 0.0;
  double dipole = constants::atomic_unit_dipole;
  // Free space.
  double transition_frequency = 0.0;
  Vec3 position_a = Vec3::Zero();
  Vec3 position_b = Vec3::Zero();
  Vec3 orientation_a = Vec3::UnitX();
  Vec3 orientation_b = Vec3::UnitX();
};

struct KkConfig {
  std::vector<double> offsets;  // (w - w_nu) / gamma_nu
  double peak = 1.0;
};

struct XcheckConfig {
  std::size_t samples = 100;
  std::uint64_t seed = 20240601;
};

struct RunConfig {
  Command command = Command::scan_rabi;
  Scenario scenario = Scenario::planar;
  CavityConfig cavity;
  AtomConfig atoms;
  // Planar: positions in units of d. Free space: k r along position_b - position_a.
  SweepSpec sweep;
  double theta = constants::pi / 8.0;
  KkConfig kk;
  Variant force_variant = Variant::corrected;
  Variant cavity_variant = Variant::corrected;
  QuadratureControl quadrature;
  StepControl step;
  XcheckConfig xcheck;
  std::optional<std::string> out_path;
  Format format = Format::csv;

  /// Dotted key -> "user", "default" or "cli".
  std::map<std::string, std::string> provenance;

  PlanarCavity planar_cavity() const;
  /// Resolved values keyed like the config file; output path excluded.
  nlohmann::ordered_json resolved() const;
};

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<Format> format;
  std::optional<Variant> variant;
  std::optional<double> tolerance;
};

/// Parse and validate config text. Errors name the key and the constraint;
/// syntax errors report line and column.
RunConfig parse_config(std::string_view text, Command command, const CliOverrides& cli = {});
/// Read `path` and parse it; an empty path yields the all-default configuration.
RunConfig load_config(const std::string& path, Command command, const CliOverrides& cli = {});

}  // namespace cavityvdw::app
