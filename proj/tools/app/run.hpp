#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"
#include "table.hpp"

namespace cavityvdw::app {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_check_failed = 2, exit_failure = 3 };

/// Module error raised during a run, tagged with the command; carries the exit code.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct RunResult {
  Table table;
  /// Unit name -> {value, meaning}; dimensionless columns are SI / value.
  nlohmann::ordered_json normalization = nlohmann::ordered_json::object();
  nlohmann::ordered_json derived = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  bool checks_passed = true;
};

RunResult run(const RunConfig& cfg);

/// Cross-validation suite: one row per check with measured error and tolerance.
RunResult run_xcheck(const RunConfig& cfg);

/// Run, write the table to cfg.out_path (or `out`) and the manifest to
/// "<out_path>.manifest.json" (or `err`). Returns the process exit code and
/// reports failures on `err`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cavityvdw::app
