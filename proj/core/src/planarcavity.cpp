#include "cavityvdw/planarcavity.hpp"

#include <cmath>
#include <sstream>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"

namespace cavityvdw {

using constants::pi;
using constants::speed_of_light;

namespace {

double clamp_position(double z, double d, const char* label, std::vector<std::string>& warnings) {
  if (!(z >= 0.0 && z <= d)) {
    std::ostringstream msg;
    msg << "PlanarScenario: " << label << " = " << z << " m lies outside the cavity [0, " << d << "]";
    throw DomainError(msg.str());
  }
  const double lo = plate_clearance * d;
  const double hi = (1.0 - plate_clearance) * d;
  if (z >= lo && z <= hi) return z;
  const double moved = z < lo ? lo : hi;
  std::ostringstream msg;
  msg << label << " = " << z << " m is on or next to a plate; moved to " << moved << " m";
  warnings.push_back(msg.str());
  return moved;
}

/// Uncorrected four-cosine braces at the resonance frequency.
double printed_braces(const PlanarCavity& cav, double z_a, double z_b) {
  const double d = cav.width();
  const double q = cav.resonance_frequency() / speed_of_light;
  return std::cos((2.0 * d - z_a - z_b) * q) - std::cos((2.0 * d + z_a - z_b) * q) -
         std::cos((2.0 * d - z_a + z_b) * q) - std::cos((z_a + z_b) * q);
}

RabiBreakdown breakdown_at(const PlanarCavity& cav, double gamma0, double z_a, double z_b,
                           Variant variant) {
  const double d = cav.width();
  const double c = speed_of_light;
  RabiBreakdown r;
  if (variant == Variant::corrected) {
    const double s_a = cav.mode_function(z_a);
    const double s_b = cav.mode_function(z_b);
    const double single = 1.5 * c * gamma0 / d;
    r.a = single * s_a * s_a;
    r.b = single * s_b * s_b;
    r.ab = 2.0 * single * (s_a * s_b);
    const double sum = s_a + s_b;
    r.total = single * sum * sum;
  } else {
    const double pref = 0.75 * c * gamma0 / d;
    r.ab = pref * printed_braces(cav, z_a, z_b);
    r.a = 0.5 * pref * printed_braces(cav, z_a, z_a);
    r.b = 0.5 * pref * printed_braces(cav, z_b, z_b);
    r.total = r.a + r.b + r.ab;
  }
  return r;
}

}  // namespace

double free_decay_rate(double transition_frequency, double dipole_norm) {
  if (!(transition_frequency > 0.0) || !(dipole_norm > 0.0)) {
    throw DomainError("free_decay_rate: frequency and dipole moment must be positive");
  }
  const double w = transition_frequency;
  const double c = speed_of_light;
  return w * w * w * dipole_norm * dipole_norm /
         (3.0 * pi * constants::vacuum_permittivity * constants::hbar * c * c * c);
}

double cavity_mode_width(const PlanarCavity& cavity) { return cavity.mode_width(); }

double resonance_frequency(const PlanarCavity& cavity) { return cavity.resonance_frequency(); }

PlanarScenario::PlanarScenario(PlanarCavity cavity, double z_a, double z_b, double dipole_norm,
                               double transition_frequency)
    : cavity_(cavity),
      z_a_(0.0),
      z_b_(0.0),
      dipole_norm_(dipole_norm),
      transition_frequency_(transition_frequency) {
  if (!(dipole_norm > 0.0)) throw DomainError("PlanarScenario: dipole moment must be positive");
  if (!(transition_frequency > 0.0)) {
    throw DomainError("PlanarScenario: transition frequency must be positive");
  }
  z_a_ = clamp_position(z_a, cavity_.width(), "z_A", warnings_);
  z_b_ = clamp_position(z_b, cavity_.width(), "z_B", warnings_);
}

PlanarScenario PlanarScenario::resonant(PlanarCavity cavity, double z_a, double z_b,
                                        double dipole_norm) {
  return PlanarScenario(cavity, z_a, z_b, dipole_norm, cavity.resonance_frequency());
}

double PlanarScenario::detuning() const noexcept {
  return cavity_.resonance_frequency() - transition_frequency_;
}

bool PlanarScenario::on_resonance() const noexcept {
  return std::abs(detuning()) <= 1e-12 * cavity_.resonance_frequency();
}

PlanarScenario PlanarScenario::moved(double z_a, double z_b) const {
  return PlanarScenario(cavity_, z_a, z_b, dipole_norm_, transition_frequency_);
}

AtomPair PlanarScenario::atoms() const {
  AtomSpec a;
  a.position = Vec3{0.0, 0.0, z_a_};
  a.transition_frequency = transition_frequency_;
  a.dipole = Vec3{dipole_norm_, 0.0, 0.0};
  AtomSpec b = a;
  b.position = Vec3{0.0, 0.0, z_b_};
  return AtomPair(a, b);
}

RabiField PlanarScenario::rabi_field(Variant variant) const {
  // Peak couplings are taken at the mode centre, so Gamma_0 is evaluated at w_nu.
  const PlanarCavity cav = cavity_;
  const double gamma0 = free_decay_rate(cav.resonance_frequency(), dipole_norm_);
  if (variant == Variant::corrected) {
    const double amp = std::sqrt(1.5 * speed_of_light * gamma0 / cav.width());
    return [cav, amp](const Vec3& r_a, const Vec3& r_b) {
      return amp * std::abs(cav.mode_function(r_a.z()) + cav.mode_function(r_b.z()));
    };
  }
  return [cav, gamma0](const Vec3& r_a, const Vec3& r_b) {
    const double total = breakdown_at(cav, gamma0, r_a.z(), r_b.z(), Variant::as_printed).total;
    if (total < 0.0) {
      throw DomainError("rabi_field: as-printed squared Rabi frequency is negative here");
    }
    return std::sqrt(total);
  };
}

DressedScenario PlanarScenario::dressed(Variant variant) const {
  DressedScenario s;
  s.rabi = rabi_field(variant);
  s.position_a = Vec3{0.0, 0.0, z_a_};
  s.position_b = Vec3{0.0, 0.0, z_b_};
  s.detuning = detuning();
  s.length_scale = cavity_.width();
  return s;
}

RabiBreakdown rabi_contributions(const PlanarScenario& scn, Variant variant) {
  if (!scn.on_resonance()) {
    throw DomainError(
        "rabi_contributions: scenario is detuned from the cavity resonance; use the dressed-state "
        "routines for Delta != 0");
  }
  const double gamma0 = free_decay_rate(scn.transition_frequency(), scn.dipole_norm());
  return breakdown_at(scn.cavity(), gamma0, scn.z_a(), scn.z_b(), variant);
}

double rabi_unit_squared(const PlanarScenario& scn) {
  return speed_of_light * free_decay_rate(scn.transition_frequency(), scn.dipole_norm()) /
         scn.cavity().width();
}

std::vector<double> SweepSpec::grid() const {
  if (points == 0) throw DomainError("scan_rabi: empty grid");
  if (!(start >= 0.0 && start <= 1.0 && stop >= 0.0 && stop <= 1.0)) {
    throw DomainError("scan_rabi: grid must lie within [0, 1] in units of d");
  }
  if (mode != SweepMode::joint && !(fixed >= 0.0 && fixed <= 1.0)) {
    throw DomainError("scan_rabi: fixed position must lie within [0, 1] in units of d");
  }
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = start;
    return g;
  }
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = start + step * static_cast<double>(i);
  g.back() = stop;
  return g;
}

RabiScan scan_rabi(const PlanarScenario& scenario, const SweepSpec& sweep, Variant variant) {
  const auto grid = sweep.grid();
  const double d = scenario.cavity().width();

  RabiScan scan;
  scan.unit_squared = rabi_unit_squared(scenario);
  scan.rows.reserve(grid.size());
  for (double u : grid) {
    double z_a = u * d;
    double z_b = u * d;
    if (sweep.mode == SweepMode::atom_b) z_a = sweep.fixed * d;
    if (sweep.mode == SweepMode::atom_a) z_b = sweep.fixed * d;

    const PlanarScenario here = scenario.moved(z_a, z_b);
    for (const auto& w : here.warnings()) scan.warnings.push_back(w);

    RabiRow row;
    row.z_a = here.z_a();
    row.z_b = here.z_b();
    row.si = rabi_contributions(here, variant);
    row.dimensionless = {row.si.a / scan.unit_squared, row.si.b / scan.unit_squared,
                         row.si.ab / scan.unit_squared, row.si.total / scan.unit_squared};
    scan.rows.push_back(row);
  }
  return scan;
}

}  // namespace cavityvdw
