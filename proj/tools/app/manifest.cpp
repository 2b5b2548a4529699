#include "manifest.hpp"

#include <cstdio>

#include "cavityvdw/constants.hpp"

namespace cavityvdw::app {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  ordered_json j = cfg.resolved();
  j["command"] = to_string(cfg.command);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

ordered_json make_manifest(const RunConfig& cfg, const RunResult& result) {
  ordered_json m;
  m["tool"] = "cavityvdw";
  m["version"] = CAVITYVDW_VERSION;
  m["command"] = to_string(cfg.command);
  m["config_hash"] = "fnv1a64:" + config_hash(cfg);
  m["config"] = cfg.resolved();
  ordered_json prov = ordered_json::object();
  for (const auto& [k, v] : cfg.provenance)
    if (k != "output.path") prov[k] = v;
  m["provenance"] = prov;
  m["constants"] = {{"speed_of_light", constants::speed_of_light},
                    {"hbar", constants::hbar},
                    {"vacuum_permeability", constants::vacuum_permeability},
                    {"vacuum_permittivity", constants::vacuum_permittivity},
                    {"atomic_unit_dipole", constants::atomic_unit_dipole}};
  m["variants"] = cfg.resolved()["variants"];
  m["tolerances"] = cfg.resolved()["tolerances"];
  m["derived"] = result.derived;
  m["normalization"] = result.normalization;
  m["columns"] = result.table.columns;
  m["rows"] = result.table.rows.size();
  m["warnings"] = result.warnings;
  if (cfg.command == Command::xcheck) m["checks_passed"] = result.checks_passed;
  return m;
}

std::string render_manifest(const RunConfig& cfg, const RunResult& result) {
  return make_manifest(cfg, result).dump(2) + "\n";
}

}  // namespace cavityvdw::app
