#include "config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cavityvdw::app {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Command, const char*>, 7> command_names{{
    {Command::scan_rabi, "scan-rabi"},
    {Command::dressed, "dressed"},
    {Command::potential, "potential"},
    {Command::force, "force"},
    {Command::weak_limit, "weak-limit"},
    {Command::kk_check, "kk-check"},
    {Command::xcheck, "xcheck"},
}};

// Quantities the tool computes; setting one is almost always a mistake.
const std::set<std::string> derived_keys{"gamma_nu", "omega_nu",  "mode_width", "resonance_frequency",
                                         "Gamma0",   "gamma0",    "r_p",        "r_s",
                                         "rabi",     "omega_rabi"};

[[noreturn]] void fail(const std::string& key, const std::string& constraint) {
  throw ConfigError("config key '" + key + "': " + constraint);
}

std::string number_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Section {
 public:
  Section(const json& obj, std::string prefix, RunConfig& cfg)
      : obj_(obj), prefix_(std::move(prefix)), cfg_(cfg) {
    if (!obj_.is_object()) fail(prefix_.empty() ? "<root>" : prefix_, "must be an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* take(const std::string& key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    used_.insert(key);
    cfg_.provenance[path(key)] = "user";
    return &*it;
  }

  Section child(const std::string& key) {
    static const json empty = json::object();
    auto it = obj_.find(key);
    if (it == obj_.end()) return Section(empty, path(key), cfg_);
    used_.insert(key);
    return Section(*it, path(key), cfg_);
  }

  void number(const std::string& key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(path(key), "must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(path(key), "must be finite");
    }
  }

  void integer(const std::string& key, long long& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) fail(path(key), "must be an integer");
      out = v->get<long long>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(path(key), "must be a string");
      out = v->get<std::string>();
    }
  }

  void vector3(const std::string& key, Vec3& out) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->size() != 3) fail(path(key), "must be an array of 3 numbers");
      for (int i = 0; i < 3; ++i) {
        if (!(*v)[i].is_number()) fail(path(key), "must be an array of 3 numbers");
        out[i] = (*v)[i].get<double>();
        if (!std::isfinite(out[i])) fail(path(key), "must be finite");
      }
    }
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) fail(path(key), "must be an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number() || !std::isfinite(e.get<double>()))
          fail(path(key), "must be an array of finite numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (used_.count(it.key())) continue;
      if (derived_keys.count(it.key()))
        fail(path(it.key()), "unknown key; it is derived from the cavity and atom parameters "
                             "and cannot be set");
      fail(path(it.key()), "unknown key");
    }
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

 private:
  const json& obj_;
  std::string prefix_;
  RunConfig& cfg_;
  std::set<std::string> used_;
};

Variant parse_variant(const std::string& key, const std::string& s) {
  if (s == "corrected") return Variant::corrected;
  if (s == "as-printed") return Variant::as_printed;
  fail(key, "must be \"corrected\" or \"as-printed\", got \"" + s + "\"");
}

Format parse_format(const std::string& key, const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "jsonl") return Format::jsonl;
  fail(key, "must be \"csv\" or \"jsonl\", got \"" + s + "\"");
}

const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::joint: return "joint";
    case SweepMode::atom_a: return "atom_a";
    case SweepMode::atom_b: return "atom_b";
  }
  return "joint";
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) fail(key, "must be positive, got " + number_text(v));
}

void require_unused(const RunConfig& cfg, const std::string& key, const char* scenario) {
  if (cfg.provenance.count(key))
    fail(key, std::string("is not used by scenario ") + scenario);
}

void validate(RunConfig& cfg) {
  const bool planar = cfg.scenario == Scenario::planar;
  auto& c = cfg.cavity;
  auto& a = cfg.atoms;
  if (planar) {
    require_positive("cavity.width", c.width);
    if (!(c.delta > 0.0)) fail("cavity.delta", "must be positive, got " + number_text(c.delta));
    if (!(c.delta < PlanarCavity::max_delta))
      fail("cavity.delta", "must be below the single-mode validity bound " +
                               number_text(PlanarCavity::max_delta) + ", got " +
                               number_text(c.delta));
    if (c.mode_index < 1) fail("cavity.mode_index", "must be >= 1");
    if (!cfg.provenance.count("atoms.z_a")) a.z_a = 0.5 * c.width;
    if (!cfg.provenance.count("atoms.z_b")) a.z_b = 0.5 * c.width;
    if (a.z_a < 0.0 || a.z_a > c.width) fail("atoms.z_a", "must lie in [0, cavity.width]");
    if (a.z_b < 0.0 || a.z_b > c.width) fail("atoms.z_b", "must lie in [0, cavity.width]");
    for (const char* k : {"atoms.transition_frequency", "atoms.position_a", "atoms.position_b",
                          "atoms.orientation_a", "atoms.orientation_b"})
      require_unused(cfg, k, "planar");
    auto& s = cfg.sweep;
    if (s.start < 0.0 || s.start > 1.0) fail("sweep.start", "must lie in [0, 1] (units of d)");
    if (s.stop < 0.0 || s.stop > 1.0) fail("sweep.stop", "must lie in [0, 1] (units of d)");
    if (s.fixed < 0.0 || s.fixed > 1.0) fail("sweep.fixed", "must lie in [0, 1] (units of d)");
  } else {
    for (const char* k : {"cavity.width", "cavity.delta", "cavity.mode_index", "atoms.z_a",
                          "atoms.z_b", "atoms.detuning", "sweep.mode", "sweep.fixed"})
      require_unused(cfg, k, "free-space");
    if (!cfg.provenance.count("atoms.transition_frequency"))
      fail("atoms.transition_frequency", "is required for scenario free-space");
    require_positive("atoms.transition_frequency", a.transition_frequency);
    if (!cfg.provenance.count("atoms.position_b")) a.position_b = a.position_a + Vec3::UnitZ();
    if ((a.position_b - a.position_a).norm() == 0.0)
      fail("atoms.position_b", "must differ from atoms.position_a");
    if (a.orientation_a.norm() == 0.0) fail("atoms.orientation_a", "must be non-zero");
    if (a.orientation_b.norm() == 0.0) fail("atoms.orientation_b", "must be non-zero");
    if (!cfg.provenance.count("sweep.start")) cfg.sweep.start = 0.1;
    if (!cfg.provenance.count("sweep.stop")) cfg.sweep.stop = 10.0;
    require_positive("sweep.start", cfg.sweep.start);
    require_positive("sweep.stop", cfg.sweep.stop);
    if (cfg.command != Command::potential)
      throw ConfigError(std::string("command ") + to_string(cfg.command) +
                        " requires scenario planar");
  }
  require_positive("atoms.dipole", a.dipole);
  if (cfg.sweep.points < 1) fail("sweep.points", "must be >= 1");
  if (cfg.sweep.points > 1000000) fail("sweep.points", "must be <= 1000000");
  if (cfg.sweep.start > cfg.sweep.stop) fail("sweep.start", "must not exceed sweep.stop");
  if (planar && cfg.command == Command::weak_limit && a.detuning == 0.0)
    fail("atoms.detuning", "must be non-zero for weak-limit");
  if (planar && cfg.command == Command::potential && a.detuning == 0.0)
    fail("atoms.detuning", "must be non-zero for the perturbative planar potential");
  if (!std::isfinite(cfg.theta)) fail("superposition.theta", "must be finite");

  if (cfg.kk.offsets.empty()) fail("kk.offsets", "must not be empty");
  for (double o : cfg.kk.offsets)
    if (o == 0.0) fail("kk.offsets", "entries must be non-zero");
  require_positive("kk.peak", cfg.kk.peak);

  auto tol = [](const char* key, double v) {
    if (!(v > 0.0 && v < 1.0)) fail(key, "must lie in (0, 1), got " + number_text(v));
  };
  tol("tolerances.quadrature", cfg.quadrature.relative_tolerance);
  tol("tolerances.gradient", cfg.step.tolerance);
  tol("tolerances.relative_step", cfg.step.relative_step);
  tol("tolerances.absolute_step", cfg.step.absolute_step);
  if (cfg.quadrature.max_panels < 1) fail("tolerances.max_panels", "must be >= 1");
  if (cfg.xcheck.samples < 1) fail("xcheck.samples", "must be >= 1");
}

void fill_default_provenance(RunConfig& cfg) {
  const ordered_json r = cfg.resolved();
  for (auto it = r.begin(); it != r.end(); ++it) {
    if (it.value().is_object()) {
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
        cfg.provenance.try_emplace(it.key() + "." + jt.key(), "default");
    } else {
      cfg.provenance.try_emplace(it.key(), "default");
    }
  }
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : command_names)
    if (name == n) return c;
  return std::nullopt;
}

const char* to_string(Command c) {
  for (const auto& [k, n] : command_names)
    if (k == c) return n;
  return "?";
}

const char* to_string(Scenario s) { return s == Scenario::planar ? "planar" : "free-space"; }
const char* to_string(Format f) { return f == Format::csv ? "csv" : "jsonl"; }

PlanarCavity RunConfig::planar_cavity() const {
  return PlanarCavity(cavity.width, cavity.delta, cavity.mode_index);
}

ordered_json RunConfig::resolved() const {
  auto vec = [](const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); };
  ordered_json j;
  j["scenario"] = to_string(scenario);
  if (scenario == Scenario::planar) {
    j["cavity"] = {{"width", cavity.width},
                   {"delta", cavity.delta},
                   {"mode_index", cavity.mode_index}};
    j["atoms"] = {{"z_a", atoms.z_a},
                  {"z_b", atoms.z_b},
                  {"detuning", atoms.detuning},
                  {"dipole", atoms.dipole}};
    j["sweep"] = {{"mode", to_string(sweep.mode)},
                  {"start", sweep.start},
                  {"stop", sweep.stop},
                  {"points", sweep.points},
                  {"fixed", sweep.fixed}};
  } else {
    j["atoms"] = {{"transition_frequency", atoms.transition_frequency},
                  {"dipole", atoms.dipole},
                  {"position_a", vec(atoms.position_a)},
                  {"position_b", vec(atoms.position_b)},
                  {"orientation_a", vec(atoms.orientation_a)},
                  {"orientation_b", vec(atoms.orientation_b)}};
    j["sweep"] = {{"start", sweep.start}, {"stop", sweep.stop}, {"points", sweep.points}};
  }
  j["superposition"] = {{"theta", theta}};
  j["kk"] = {{"offsets", kk.offsets}, {"peak", kk.peak}};
  j["variants"] = {{"superposition_force", to_string(force_variant)},
                   {"cavity_green", to_string(cavity_variant)}};
  j["tolerances"] = {{"quadrature", quadrature.relative_tolerance},
                     {"max_panels", quadrature.max_panels},
                     {"gradient", step.tolerance},
                     {"relative_step", step.relative_step},
                     {"absolute_step", step.absolute_step}};
  j["xcheck"] = {{"samples", xcheck.samples}, {"seed", xcheck.seed}};
  j["output"] = {{"format", to_string(format)}};
  return j;
}

RunConfig parse_config(std::string_view text, Command command, const CliOverrides& cli) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error at " + location(text, e.byte) + ": " + e.what());
  }
  if (root.is_null()) root = json::object();

  RunConfig cfg;
  cfg.command = command;
  cfg.kk.offsets = {-1000.0, -100.0, 100.0, 1000.0};

  Section top(root, "", cfg);
  std::string scenario = "planar";
  top.string("scenario", scenario);
  if (scenario == "planar") {
    cfg.scenario = Scenario::planar;
  } else if (scenario == "free-space") {
    cfg.scenario = Scenario::free_space;
  } else {
    fail("scenario", "must be \"planar\" or \"free-space\", got \"" + scenario + "\"");
  }

  {
    Section s = top.child("cavity");
    s.number("width", cfg.cavity.width);
    s.number("delta", cfg.cavity.delta);
    long long nu = cfg.cavity.mode_index;
    s.integer("mode_index", nu);
    if (nu < 1 || nu > 1000000) fail("cavity.mode_index", "must lie in [1, 1000000]");
    cfg.cavity.mode_index = static_cast<int>(nu);
    s.finish();
  }
  {
    Section s = top.child("atoms");
    s.number("z_a", cfg.atoms.z_a);
    s.number("z_b", cfg.atoms.z_b);
    s.number("detuning", cfg.atoms.detuning);
    s.number("dipole", cfg.atoms.dipole);
    s.number("transition_frequency", cfg.atoms.transition_frequency);
    s.vector3("position_a", cfg.atoms.position_a);
    s.vector3("position_b", cfg.atoms.position_b);
    s.vector3("orientation_a", cfg.atoms.orientation_a);
    s.vector3("orientation_b", cfg.atoms.orientation_b);
    s.finish();
  }
  {
    Section s = top.child("sweep");
    std::string mode = "joint";
    s.string("mode", mode);
    if (mode == "joint") {
      cfg.sweep.mode = SweepMode::joint;
    } else if (mode == "atom_a") {
      cfg.sweep.mode = SweepMode::atom_a;
    } else if (mode == "atom_b") {
      cfg.sweep.mode = SweepMode::atom_b;
    } else {
      fail("sweep.mode", "must be \"joint\", \"atom_a\" or \"atom_b\", got \"" + mode + "\"");
    }
    s.number("start", cfg.sweep.start);
    s.number("stop", cfg.sweep.stop);
    long long points = static_cast<long long>(cfg.sweep.points);
    s.integer("points", points);
    if (points < 1) fail("sweep.points", "must be >= 1");
    cfg.sweep.points = static_cast<std::size_t>(points);
    s.number("fixed", cfg.sweep.fixed);
    s.finish();
  }
  {
    Section s = top.child("superposition");
    s.number("theta", cfg.theta);
    s.finish();
  }
  {
    Section s = top.child("kk");
    s.numbers("offsets", cfg.kk.offsets);
    s.number("peak", cfg.kk.peak);
    s.finish();
  }
  {
    Section s = top.child("variants");
    std::string v = to_string(cfg.force_variant);
    s.string("superposition_force", v);
    cfg.force_variant = parse_variant("variants.superposition_force", v);
    v = to_string(cfg.cavity_variant);
    s.string("cavity_green", v);
    cfg.cavity_variant = parse_variant("variants.cavity_green", v);
    s.finish();
  }
  {
    Section s = top.child("tolerances");
    s.number("quadrature", cfg.quadrature.relative_tolerance);
    long long panels = static_cast<long long>(cfg.quadrature.max_panels);
    s.integer("max_panels", panels);
    if (panels < 1) fail("tolerances.max_panels", "must be >= 1");
    cfg.quadrature.max_panels = static_cast<std::size_t>(panels);
    s.number("gradient", cfg.step.tolerance);
    s.number("relative_step", cfg.step.relative_step);
    s.number("absolute_step", cfg.step.absolute_step);
    s.finish();
  }
  {
    Section s = top.child("xcheck");
    long long samples = static_cast<long long>(cfg.xcheck.samples);
    s.integer("samples", samples);
    if (samples < 1 || samples > 1000000) fail("xcheck.samples", "must lie in [1, 1000000]");
    cfg.xcheck.samples = static_cast<std::size_t>(samples);
    if (const json* v = s.take("seed")) {
      if (!v->is_number_unsigned()) fail("xcheck.seed", "must be a non-negative integer");
      cfg.xcheck.seed = v->get<std::uint64_t>();
    }
    s.finish();
  }
  {
    Section s = top.child("output");
    std::string path;
    s.string("path", path);
    if (s.has("path")) cfg.out_path = path;
    std::string format = to_string(cfg.format);
    s.string("format", format);
    cfg.format = parse_format("output.format", format);
    s.finish();
  }
  top.finish();

  if (cli.out) {
    cfg.out_path = *cli.out;
    cfg.provenance["output.path"] = "cli";
  }
  if (cli.format) {
    cfg.format = *cli.format;
    cfg.provenance["output.format"] = "cli";
  }
  if (cli.variant) {
    cfg.force_variant = *cli.variant;
    cfg.cavity_variant = *cli.variant;
    cfg.provenance["variants.superposition_force"] = "cli";
    cfg.provenance["variants.cavity_green"] = "cli";
  }
  if (cli.tolerance) {
    cfg.quadrature.relative_tolerance = *cli.tolerance;
    cfg.provenance["tolerances.quadrature"] = "cli";
  }

  validate(cfg);
  fill_default_provenance(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, Command command, const CliOverrides& cli) {
  if (path.empty()) return parse_config("{}", command, cli);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), command, cli);
}

}  // namespace cavityvdw::app
