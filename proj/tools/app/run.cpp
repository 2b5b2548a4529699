#include "run.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <utility>

#include "manifest.hpp"

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "cavityvdw/kramers_kronig.hpp"
#include "cavityvdw/weakfield.hpp"

namespace cavityvdw::app {

using constants::hbar;
using constants::pi;
using constants::speed_of_light;
using nlohmann::ordered_json;

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t max_listed_warnings = 20;

class Warnings {
 public:
  explicit Warnings(std::vector<std::string>& sink) : sink_(sink) {}
  ~Warnings() {
    if (dropped_ > 0)
      sink_.push_back(std::to_string(dropped_) + " further warnings not listed");
  }
  void add(std::string w) {
    if (sink_.size() < max_listed_warnings) {
      sink_.push_back(std::move(w));
    } else {
      ++dropped_;
    }
  }

 private:
  std::vector<std::string>& sink_;
  std::size_t dropped_ = 0;
};

struct PlanarContext {
  PlanarCavity cavity;
  double w_nu;
  double gamma_nu;
  double gamma0;
  double unit;  // sqrt(c Gamma_0 / d), rad/s
  PlanarScenario base;

  explicit PlanarContext(const RunConfig& cfg)
      : cavity(cfg.planar_cavity()),
        w_nu(cavity.resonance_frequency()),
        gamma_nu(cavity.mode_width()),
        gamma0(free_decay_rate(w_nu, cfg.atoms.dipole)),
        unit(std::sqrt(speed_of_light * gamma0 / cavity.width())),
        base(cavity, cfg.atoms.z_a, cfg.atoms.z_b, cfg.atoms.dipole, w_nu - cfg.atoms.detuning) {}

  std::vector<std::pair<double, double>> positions(const SweepSpec& s) const {
    std::vector<std::pair<double, double>> out;
    const double d = cavity.width();
    for (double u : s.grid()) {
      double z_a = u * d;
      double z_b = u * d;
      if (s.mode == SweepMode::atom_b) z_a = s.fixed * d;
      if (s.mode == SweepMode::atom_a) z_b = s.fixed * d;
      out.emplace_back(z_a, z_b);
    }
    return out;
  }

  void describe(RunResult& r) const {
    r.derived["omega_nu"] = w_nu;
    r.derived["gamma_nu"] = gamma_nu;
    r.derived["Gamma0"] = gamma0;
    r.derived["r_p"] = cavity.r_p();
    r.derived["r_s"] = cavity.r_s();
    r.normalization["length"] = {{"value", cavity.width()}, {"meaning", "d (m)"}};
    r.normalization["frequency"] = {{"value", unit},
                                    {"meaning", "sqrt(c Gamma0 / d) (rad/s), Gamma0 at omega_nu"}};
    r.normalization["frequency_squared"] = {{"value", unit * unit},
                                            {"meaning", "c Gamma0 / d ((rad/s)^2)"}};
    r.normalization["energy"] = {{"value", hbar * unit}, {"meaning", "hbar sqrt(c Gamma0 / d) (J)"}};
    r.normalization["force"] = {{"value", hbar * unit / cavity.width()},
                                {"meaning", "hbar sqrt(c Gamma0 / d) / d (N)"}};
  }
};

void add_position_columns(Table& t) {
  for (const char* c : {"z_A", "z_B", "z_A_over_d", "z_B_over_d"}) t.columns.emplace_back(c);
}

std::vector<Cell> position_cells(const PlanarScenario& s) {
  const double d = s.cavity().width();
  return {s.z_a(), s.z_b(), s.z_a() / d, s.z_b() / d};
}

std::string where(const PlanarScenario& s) {
  return "z_A=" + format_double(s.z_a()) + " z_B=" + format_double(s.z_b()) + ": ";
}

RunResult scan_rabi_table(const RunConfig& cfg) {
  const PlanarContext ctx(cfg);
  RunResult r;
  ctx.describe(r);
  Warnings warn(r.warnings);
  if (cfg.atoms.detuning != 0.0)
    warn.add("scan-rabi evaluates the resonant closed form; atoms.detuning is ignored");
  const auto resonant =
      PlanarScenario::resonant(ctx.cavity, ctx.base.z_a(), ctx.base.z_b(), cfg.atoms.dipole);
  const RabiScan scan = scan_rabi(resonant, cfg.sweep, cfg.cavity_variant);
  for (const auto& w : scan.warnings) warn.add(w);

  Table& t = r.table;
  t.columns = {"z_A",          "z_B",          "omega2_A",          "omega2_B",
               "omega2_AB",    "omega2_total", "z_A_over_d",        "z_B_over_d",
               "omega2_A_dimless", "omega2_B_dimless", "omega2_AB_dimless",
               "omega2_total_dimless"};
  const double d = ctx.cavity.width();
  for (const auto& row : scan.rows) {
    t.add_row({row.z_a, row.z_b, row.si.a, row.si.b, row.si.ab, row.si.total, row.z_a / d,
               row.z_b / d, row.dimensionless.a, row.dimensionless.b, row.dimensionless.ab,
               row.dimensionless.total});
  }
  return r;
}

RunResult dressed_table(const RunConfig& cfg) {
  const PlanarContext ctx(cfg);
  RunResult r;
  ctx.describe(r);
  Warnings warn(r.warnings);
  Table& t = r.table;
  add_position_columns(t);
  for (const char* c : {"rabi", "detuning", "generalized_rabi", "coupling_angle", "E_plus",
                        "E_minus", "U_plus", "U_minus", "U_theta", "rabi_dimless",
                        "detuning_dimless", "generalized_rabi_dimless", "E_plus_dimless",
                        "E_minus_dimless", "U_theta_dimless"})
    t.columns.emplace_back(c);

  const double eu = hbar * ctx.unit;
  for (const auto& [za, zb] : ctx.positions(cfg.sweep)) {
    const PlanarScenario s = ctx.base.moved(za, zb);
    for (const auto& w : s.warnings()) warn.add(w);
    auto row = position_cells(s);
    try {
      const double rabi = s.rabi_field(cfg.cavity_variant)(Vec3{0, 0, s.z_a()}, Vec3{0, 0, s.z_b()});
      const DressedSystem sys = DressedSystem::make(rabi, s.detuning());
      const EnergyPair u = potential_pm(sys.generalized);
      const double ut = potential_theta(cfg.theta, sys);
      for (double v : {sys.rabi, sys.detuning, sys.generalized, sys.coupling_angle,
                       sys.energy_plus, sys.energy_minus, u.plus, u.minus, ut,
                       sys.rabi / ctx.unit, sys.detuning / ctx.unit, sys.generalized / ctx.unit,
                       sys.energy_plus / eu, sys.energy_minus / eu, ut / eu})
        row.emplace_back(v);
    } catch (const DomainError& e) {
      warn.add(where(s) + e.what());
      row.resize(t.columns.size(), nan);
    }
    t.add_row(std::move(row));
  }
  return r;
}

RunResult force_table(const RunConfig& cfg) {
  const PlanarContext ctx(cfg);
  RunResult r;
  ctx.describe(r);
  Warnings warn(r.warnings);
  Table& t = r.table;
  add_position_columns(t);
  for (const char* c : {"rabi", "grad_rabi_A", "grad_rabi_B", "F_A_plus", "F_A_minus",
                        "F_A_theta", "F_B_plus", "F_B_minus", "F_B_theta", "F_A_plus_dimless",
                        "F_A_minus_dimless", "F_A_theta_dimless", "F_B_plus_dimless",
                        "F_B_minus_dimless", "F_B_theta_dimless"})
    t.columns.emplace_back(c);

  const double fu = hbar * ctx.unit / ctx.cavity.width();
  for (const auto& [za, zb] : ctx.positions(cfg.sweep)) {
    const PlanarScenario s = ctx.base.moved(za, zb);
    for (const auto& w : s.warnings()) warn.add(w);
    auto row = position_cells(s);
    try {
      const DressedScenario ds = s.dressed(cfg.cavity_variant);
      const double rabi = ds.rabi_here();
      const double ga = grad_rabi(ds, AtomLabel::a, cfg.step).value.z();
      const double gb = grad_rabi(ds, AtomLabel::b, cfg.step).value.z();
      std::vector<double> f;
      for (AtomLabel who : {AtomLabel::a, AtomLabel::b}) {
        f.push_back(force_eigenstate(ds, +1, who, cfg.step).z());
        f.push_back(force_eigenstate(ds, -1, who, cfg.step).z());
        f.push_back(force_theta(ds, cfg.theta, who, cfg.force_variant, cfg.step).z());
      }
      row.insert(row.end(), {rabi, ga, gb});
      for (double v : f) row.emplace_back(v);
      for (double v : f) row.emplace_back(v / fu);
    } catch (const DomainError& e) {
      warn.add(where(s) + e.what());
      row.resize(t.columns.size(), nan);
    } catch (const GradientError& e) {
      warn.add(where(s) + e.what());
      row.resize(t.columns.size(), nan);
    }
    t.add_row(std::move(row));
  }
  return r;
}

AtomSpec free_atom(const Vec3& pos, double w, double dipole, const Vec3& orientation) {
  AtomSpec a;
  a.position = pos;
  a.transition_frequency = w;
  a.dipole = dipole * orientation.normalized();
  return a;
}

RunResult free_space_potential_table(const RunConfig& cfg) {
  RunResult r;
  const auto& at = cfg.atoms;
  const double w = at.transition_frequency;
  const double k = w / speed_of_light;
  const Vec3 axis = (at.position_b - at.position_a).normalized();
  const double eu = at.dipole * at.dipole * k * k * k / (4.0 * pi * constants::vacuum_permittivity);
  r.derived["wavenumber"] = k;
  r.normalization["length"] = {{"value", 1.0 / k}, {"meaning", "1/k = c/omega_10 (m)"}};
  r.normalization["energy"] = {{"value", eu}, {"meaning", "|d|^2 k^3 / (4 pi eps0) (J)"}};

  Table& t = r.table;
  t.columns = {"kr", "r", "U_closed_form", "U_contraction", "relative_difference",
               "U_closed_form_dimless"};
  SweepSpec grid = cfg.sweep;
  const double lo = grid.start;
  const double hi = grid.stop;
  FreeSpaceGreenProvider free;
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double kr = grid.points == 1 ? lo
                      : i + 1 == grid.points
                          ? hi
                          : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid.points - 1);
    const Vec3 sep = (kr / k) * axis;
    const AtomSpec a = free_atom(at.position_a, w, at.dipole, at.orientation_a);
    const AtomSpec b = free_atom(at.position_a + sep, w, at.dipole, at.orientation_b);
    const double closed = free_space_resonant_potential(a.dipole, b.dipole, k, sep);
    const double contraction = resonant_potential(AtomPair(a, b), free).interaction;
    const double scale = constants::vacuum_permeability * w * w * a.dipole.norm() *
                         b.dipole.norm() * free_space_green(k, sep).real().norm();
    t.add_row({kr, kr / k, closed, contraction, std::abs(closed - contraction) / scale,
               closed / eu});
  }
  return r;
}

RunResult planar_potential_table(const RunConfig& cfg) {
  const PlanarContext ctx(cfg);
  RunResult r;
  ctx.describe(r);
  Warnings warn(r.warnings);
  PlanarResonantGreenProvider planar(ctx.cavity, cfg.cavity_variant);
  Table& t = r.table;
  add_position_columns(t);
  for (const char* c : {"U_single_A", "U_single_B", "U_interaction", "U_total", "U_minus_weak",
                        "U_single_A_dimless", "U_single_B_dimless", "U_interaction_dimless",
                        "U_total_dimless"})
    t.columns.emplace_back(c);
  const double eu = hbar * ctx.unit;
  for (const auto& [za, zb] : ctx.positions(cfg.sweep)) {
    const PlanarScenario s = ctx.base.moved(za, zb);
    for (const auto& w : s.warnings()) warn.add(w);
    const AtomPair pair = s.atoms();
    const auto br = resonant_potential(pair, planar);
    const ModeModel m = make_mode_model(pair, ctx.w_nu, ctx.gamma_nu, planar);
    const double weak = weak_limit_potentials(ctx.gamma_nu, mode_norm(m), s.detuning()).minus;
    const double sa = br.single_a.value_or(nan);
    const double sb = br.single_b.value_or(nan);
    const double total = br.total().value_or(nan);
    auto row = position_cells(s);
    for (double v : {sa, sb, br.interaction, total, weak, sa / eu, sb / eu, br.interaction / eu,
                     total / eu})
      row.emplace_back(v);
    t.add_row(std::move(row));
  }
  return r;
}

RunResult weak_limit_table(const RunConfig& cfg) {
  const PlanarContext ctx(cfg);
  RunResult r;
  ctx.describe(r);
  Warnings warn(r.warnings);
  Table& t = r.table;
  add_position_columns(t);
  for (const char* c : {"rabi", "detuning", "detuning_over_rabi", "U_minus_strong",
                        "U_plus_strong", "U_minus_weak", "U_plus_weak", "relative_error",
                        "U_theta_weak", "F_A_theta_weak", "U_minus_strong_dimless",
                        "U_minus_weak_dimless", "U_theta_weak_dimless", "F_A_theta_weak_dimless"})
    t.columns.emplace_back(c);
  const double eu = hbar * ctx.unit;
  const double fu = eu / ctx.cavity.width();
  for (const auto& [za, zb] : ctx.positions(cfg.sweep)) {
    const PlanarScenario s = ctx.base.moved(za, zb);
    for (const auto& w : s.warnings()) warn.add(w);
    const DressedScenario ds = s.dressed(cfg.cavity_variant);
    auto row = position_cells(s);
    try {
      const double rabi = ds.rabi_here();
      const double det = ds.detuning;
      const double strong = strong_minus_shift(rabi, det);
      const EnergyPair weak =
          weak_limit_potentials(ctx.gamma_nu, rabi * rabi / (ctx.gamma_nu * pi), det);
      // Both weak expressions refer to the state continuous with the bare
      // atomic excitation; for negative detuning that is |+>, so the strong
      // U_- shift is compared with the |Delta| form.
      const double weak_abs = -hbar * rabi * rabi / (4.0 * std::abs(det));
      const double rel = weak_abs != 0.0 ? std::abs(strong - weak_abs) / std::abs(weak_abs) : 0.0;
      const double ut = weak_theta_potential(cfg.theta, rabi, det);
      double fa = nan;
      try {
        fa = weak_theta_force(cfg.theta, rabi, grad_rabi(ds, AtomLabel::a, cfg.step).value, det).z();
      } catch (const GradientError& e) {
        warn.add(where(s) + e.what());
      }
      for (double v : {rabi, det, rabi > 0.0 ? det / rabi : nan, strong, -strong, weak.minus,
                       weak.plus, rel, ut, fa, strong / eu, weak.minus / eu, ut / eu, fa / fu})
        row.emplace_back(v);
    } catch (const DomainError& e) {
      warn.add(where(s) + e.what());
      row.resize(t.columns.size(), nan);
    }
    t.add_row(std::move(row));
  }
  return r;
}

RunResult kk_table(const RunConfig& cfg) {
  const PlanarCavity cav = cfg.planar_cavity();
  const double w0 = cav.resonance_frequency();
  const double g = cav.mode_width();
  const double peak = cfg.kk.peak;
  RunResult r;
  r.derived["omega_nu"] = w0;
  r.derived["gamma_nu"] = g;
  r.normalization["spectral_peak"] = {{"value", peak}, {"meaning", "Lorentzian peak height"}};
  r.normalization["frequency"] = {{"value", g}, {"meaning", "gamma_nu (rad/s)"}};
  const SpectralFunction f = lorentzian_spectrum(peak, w0, g);
  Table& t = r.table;
  t.columns = {"offset_over_gamma", "omega",          "kk_numeric",        "exact_hilbert",
               "narrow_mode",       "relative_error_exact", "relative_error_narrow",
               "kk_numeric_dimless"};
  for (double o : cfg.kk.offsets) {
    const double w = w0 + o * g;
    const double x = w0 - w;
    const double numeric = kk_real_from_imag(f, w, cfg.quadrature);
    const double exact = peak * 0.5 * g * x / (x * x + 0.25 * g * g);
    double narrow = nan;
    if (std::abs(o) >= narrow_mode_min_ratio) narrow = narrow_mode_real_contraction(peak, g, w0, w);
    t.add_row({o, w, numeric, exact, narrow, std::abs(numeric - exact) / std::abs(exact),
               std::abs(numeric - narrow) / std::abs(narrow), numeric / peak});
  }
  return r;
}

template <class F>
RunResult tagged(const char* command, F&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    throw RunError(std::string(command) + ": " + e.what(), exit_validation);
  } catch (const ConfigError& e) {
    throw RunError(std::string(command) + ": " + e.what(), exit_validation);
  } catch (const QuadratureError& e) {
    throw RunError(std::string(command) + ": " + e.what(), exit_failure);
  } catch (const FitError& e) {
    throw RunError(std::string(command) + ": " + e.what(), exit_failure);
  } catch (const GradientError& e) {
    throw RunError(std::string(command) + ": " + e.what(), exit_failure);
  }
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  return tagged(to_string(cfg.command), [&]() -> RunResult {
    switch (cfg.command) {
      case Command::scan_rabi: return scan_rabi_table(cfg);
      case Command::dressed: return dressed_table(cfg);
      case Command::force: return force_table(cfg);
      case Command::potential:
        return cfg.scenario == Scenario::planar ? planar_potential_table(cfg)
                                                : free_space_potential_table(cfg);
      case Command::weak_limit: return weak_limit_table(cfg);
      case Command::kk_check: return kk_table(cfg);
      case Command::xcheck: return run_xcheck(cfg);
    }
    throw RunError("unknown command", exit_validation);
  });
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    result = run(cfg);
  } catch (const RunError& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  const std::string manifest = render_manifest(cfg, result);
  try {
    if (cfg.out_path) {
      export_table(result.table, *cfg.out_path, cfg.format);
      const std::string mpath = *cfg.out_path + ".manifest.json";
      std::ofstream m(mpath, std::ios::binary | std::ios::trunc);
      if (!m) throw OutputError("cannot open '" + mpath + "' for writing");
      m << manifest;
      if (!m.flush()) throw OutputError("failed writing '" + mpath + "'");
    } else {
      write_table(out, result.table, cfg.format);
      out.flush();
      err << manifest;
    }
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (!result.checks_passed) {
    err << "error: one or more cross-checks exceeded their tolerance\n";
    return exit_check_failed;
  }
  return exit_ok;
}

}  // namespace cavityvdw::app
