#include "cavityvdw/dressed.hpp"

#include <cmath>
#include <string>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"

namespace cavityvdw {

using constants::hbar;

namespace {

// Delta + Omega without cancellation for Delta < 0.
double detuning_plus_generalized(double rabi, double detuning, double generalized) {
  if (detuning >= 0.0) return detuning + generalized;
  return rabi * rabi / (generalized - detuning);
}

}  // namespace

double rabi_frequency(double mode_norm, double mode_width) {
  if (!(mode_norm >= 0.0)) throw DomainError("rabi_frequency: mode norm must be non-negative");
  if (!(mode_width > 0.0)) throw DomainError("rabi_frequency: mode width must be positive");
  return std::sqrt(mode_width * constants::pi * mode_norm);
}

DressedSystem DressedSystem::make(double rabi, double detuning) {
  if (!(rabi >= 0.0)) throw DomainError("DressedSystem: Rabi frequency must be non-negative");
  DressedSystem s;
  s.rabi = rabi;
  s.detuning = detuning;
  s.generalized = std::hypot(rabi, detuning);
  s.coupling_angle = cavityvdw::coupling_angle(rabi, detuning);
  const auto e = eigenenergies(rabi, detuning);
  s.energy_plus = e.plus;
  s.energy_minus = e.minus;
  return s;
}

Eigen::Matrix2d hamiltonian_matrix(const DressedSystem& sys) {
  Eigen::Matrix2d h;
  h << 0.0, 0.5 * sys.rabi, 0.5 * sys.rabi, sys.detuning;
  return h;
}

EnergyPair eigenenergies(double rabi, double detuning) {
  if (!(rabi >= 0.0)) throw DomainError("eigenenergies: Rabi frequency must be non-negative");
  const double omega = std::hypot(rabi, detuning);
  // The eigenvalue of smaller magnitude follows from the product
  // E_+ E_- = -hbar^2 Omega_R^2 / 4.
  if (detuning >= 0.0) {
    const double plus = 0.5 * hbar * (detuning + omega);
    const double minus = plus > 0.0 ? -0.25 * hbar * hbar * rabi * rabi / plus : 0.0;
    return {plus, minus};
  }
  const double minus = 0.5 * hbar * (detuning - omega);
  const double plus = -0.25 * hbar * hbar * rabi * rabi / minus;
  return {plus, minus};
}

double coupling_angle(double rabi, double detuning) {
  if (!(rabi >= 0.0)) throw DomainError("coupling_angle: Rabi frequency must be non-negative");
  if (rabi == 0.0 && detuning == 0.0) {
    throw DomainError("coupling_angle: degenerate system (Omega_R = Delta = 0)");
  }
  const double omega = std::hypot(rabi, detuning);
  return std::atan2(detuning_plus_generalized(rabi, detuning, omega), rabi);
}

Eigen::Matrix2d dressed_coefficients(double coupling_angle) {
  const double c = std::cos(coupling_angle);
  const double s = std::sin(coupling_angle);
  Eigen::Matrix2d m;
  m << c, s, -s, c;
  return m;
}

EnergyPair potential_pm(double generalized) {
  if (!(generalized >= 0.0)) throw DomainError("potential_pm: generalized Rabi frequency must be non-negative");
  return {0.5 * hbar * generalized, -0.5 * hbar * generalized};
}

double potential_theta(double theta, const DressedSystem& sys) {
  return 0.5 * hbar * sys.generalized * std::cos(2.0 * (theta - sys.coupling_angle));
}

Gradient finite_difference_gradient(const std::function<double(const Vec3&, const Vec3&)>& f,
                                    const Vec3& r_a, const Vec3& r_b, AtomLabel which,
                                    double length_scale, const StepControl& step) {
  Gradient g;
  const Vec3& moving = which == AtomLabel::a ? r_a : r_b;
  for (int i = 0; i < 3; ++i) {
    const double h = std::max(step.relative_step * std::abs(moving(i)),
                              step.absolute_step * length_scale);
    auto shifted = [&](double dx) {
      Vec3 ra = r_a;
      Vec3 rb = r_b;
      (which == AtomLabel::a ? ra : rb)(i) += dx;
      return f(ra, rb);
    };
    const double coarse = (shifted(h) - shifted(-h)) / (2.0 * h);
    const double fine = (shifted(0.5 * h) - shifted(-0.5 * h)) / h;
    g.value(i) = (4.0 * fine - coarse) / 3.0;
    g.error(i) = std::abs(g.value(i) - fine);
  }
  return g;
}

Gradient grad_rabi(const DressedScenario& scn, AtomLabel which, const StepControl& step) {
  Gradient g = finite_difference_gradient(scn.rabi, scn.position_a, scn.position_b, which,
                                          scn.length_scale, step);
  // Absolute floor for vanishing components: Omega_R varies on the scale L.
  const double floor = std::abs(scn.rabi_here()) / scn.length_scale;
  for (int i = 0; i < 3; ++i) {
    const double allowed = step.tolerance * (std::abs(g.value(i)) + floor);
    if (!(g.error(i) <= allowed)) {
      throw GradientError("grad_rabi: Richardson error estimate " + std::to_string(g.error(i)) +
                              " exceeds tolerance " + std::to_string(allowed) + " in component " +
                              std::to_string(i),
                          g.error(i));
    }
  }
  return g;
}

Vec3 force_eigenstate(const DressedScenario& scn, int sign, AtomLabel which,
                      const StepControl& step) {
  if (sign != 1 && sign != -1) throw DomainError("force_eigenstate: sign must be +1 or -1");
  const DressedSystem sys = scn.system();
  const Vec3 grad = grad_rabi(scn, which, step).value;
  return -sign * 0.5 * hbar * std::sin(2.0 * sys.coupling_angle) * grad;
}

Vec3 force_theta(const DressedScenario& scn, double theta, AtomLabel which, Variant variant,
                 const StepControl& step) {
  const double rabi = scn.rabi_here();
  const Vec3 grad = grad_rabi(scn, which, step).value;
  if (variant == Variant::corrected) {
    return -0.5 * hbar * std::sin(2.0 * theta) * grad;
  }
  if (!(rabi > 0.0)) {
    throw DomainError("force_theta: the as-printed form divides by sin(2 theta_c) = 0 when Omega_R = 0");
  }
  const DressedSystem sys = DressedSystem::make(rabi, scn.detuning);
  return -0.5 * hbar * std::sin(2.0 * theta) / std::sin(2.0 * sys.coupling_angle) * grad;
}

}  // namespace cavityvdw
