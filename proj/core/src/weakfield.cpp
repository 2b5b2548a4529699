#include "cavityvdw/weakfield.hpp"

#include <cmath>
#include <string>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"

namespace cavityvdw {

using constants::hbar;

namespace {

void require_detuned(double detuning, const char* where) {
  if (detuning == 0.0) {
    throw DomainError(std::string(where) + ": weak-coupling limit undefined at zero detuning");
  }
}

}  // namespace

std::optional<double> ResonantPotentialBreakdown::total() const {
  if (!single_a || !single_b) return std::nullopt;
  return *single_a + *single_b + interaction;
}

ResonantPotentialBreakdown resonant_potential(const AtomPair& atoms, const GreenProvider& green) {
  const AtomSpec& a = atoms.a();
  const AtomSpec& b = atoms.b();
  const double w = atoms.transition_frequency();
  const double scale = constants::vacuum_permeability * w * w;

  ResonantPotentialBreakdown out;
  if (auto g = green.real(a.position, a.position, w)) {
    out.single_a = -0.5 * scale * a.dipole.dot(*g * a.dipole);
  }
  if (auto g = green.real(b.position, b.position, w)) {
    out.single_b = -0.5 * scale * b.dipole.dot(*g * b.dipole);
  }
  auto g_ab = green.real(a.position, b.position, w);
  if (!g_ab) throw DomainError("resonant_potential: interaction Green's tensor is divergent");
  out.interaction = -scale * a.dipole.dot(*g_ab * b.dipole);
  return out;
}

double free_space_resonant_potential(const Vec3& dipole_a, const Vec3& dipole_b, double k,
                                     const Vec3& r) {
  const double dist = r.norm();
  if (!(dist > 0.0)) throw DomainError("free_space_resonant_potential: zero separation");
  const Vec3 e = r / dist;
  const double kr = k * dist;
  const double c = std::cos(kr);
  const double s = std::sin(kr);

  const double dd = dipole_a.dot(dipole_b);
  const double ee = dipole_a.dot(e) * dipole_b.dot(e);
  const double transverse = (dd - ee) * k * k * c / dist;
  const double near = (dd - 3.0 * ee) * (k * s / (dist * dist) + c / (dist * dist * dist));
  return -(transverse - near) / (4.0 * constants::pi * constants::vacuum_permittivity);
}

EnergyPair weak_limit_potentials(double mode_width, double mode_norm, double detuning) {
  require_detuned(detuning, "weak_limit_potentials");
  const double u = hbar * mode_width * constants::pi * mode_norm / (4.0 * detuning);
  return {u, -u};
}

double weak_theta_potential(double theta, double rabi, double detuning) {
  require_detuned(detuning, "weak_theta_potential");
  return -hbar / (4.0 * detuning) * std::cos(2.0 * theta) * rabi * rabi;
}

Vec3 weak_theta_force(double theta, double rabi, const Vec3& grad_rabi, double detuning) {
  require_detuned(detuning, "weak_theta_force");
  return hbar / (2.0 * detuning) * std::cos(2.0 * theta) * rabi * grad_rabi;
}

double narrow_mode_real_contraction(double g2_peak, double width, double center, double omega) {
  if (!(width > 0.0)) throw DomainError("narrow_mode_real_contraction: width must be positive");
  const double offset = center - omega;
  if (!(std::abs(offset) >= narrow_mode_min_ratio * width)) {
    throw DomainError("narrow_mode_real_contraction: |w - w_nu| must be at least 100 mode widths");
  }
  return width * g2_peak / (2.0 * offset);
}

double strong_minus_shift(double rabi, double detuning) {
  if (!(rabi >= 0.0)) throw DomainError("strong_minus_shift: Rabi frequency must be non-negative");
  // Omega - |Delta| = Omega_R^2 / (Omega + |Delta|)
  const double omega = std::hypot(rabi, detuning);
  const double denom = omega + std::abs(detuning);
  if (denom == 0.0) return 0.0;
  return -0.5 * hbar * rabi * rabi / denom;
}

}  // namespace cavityvdw
