#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "config.hpp"
#include "run.hpp"

namespace cavityvdw::app {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// Hex digest of the resolved configuration.
std::string config_hash(const RunConfig& cfg);

/// Run record: command, config hash, resolved values with provenance,
/// physical constants, variants, tolerances, normalisation units, derived
/// quantities and warnings. Contains nothing time- or path-dependent.
nlohmann::ordered_json make_manifest(const RunConfig& cfg, const RunResult& result);
std::string render_manifest(const RunConfig& cfg, const RunResult& result);

}  // namespace cavityvdw::app
