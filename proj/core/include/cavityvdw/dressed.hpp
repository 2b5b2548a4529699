#pragma once

// Two-state (shared atomic excitation / single cavity photon) dressed system:
// diagonalisation, potentials, and forces.

#include <functional>
#include <utility>

#include <Eigen/Core>

#include "cavityvdw/types.hpp"

namespace cavityvdw {

/// Vacuum Rabi frequency sqrt(gamma_nu * pi * N). DomainError for N < 0.
double rabi_frequency(double mode_norm, double mode_width);

/// Diagonalised system at fixed atom positions. Frequencies in rad/s,
/// energies in J.
struct DressedSystem {
  double rabi = 0.0;         // Omega_R >= 0
  double detuning = 0.0;     // Delta = w_nu - w_10
  double generalized = 0.0;  // Omega = sqrt(Omega_R^2 + Delta^2)
  double coupling_angle = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;

  /// Throws DomainError for Omega_R < 0 or Omega_R == Delta == 0.
  static DressedSystem make(double rabi, double detuning);
};

/// hbar^-1 H in the bare basis {|u1>, |u2>}: [[0, Omega_R/2], [Omega_R/2, Delta]].
Eigen::Matrix2d hamiltonian_matrix(const DressedSystem& sys);

struct EnergyPair {
  double plus;
  double minus;
};

/// E_+- = hbar Delta/2 +- hbar Omega/2, evaluated without cancellation.
EnergyPair eigenenergies(double rabi, double detuning);

/// Coupling angle from cos th = Omega_R / n, sin th = (Delta + Omega) / n.
/// Lies in [0, pi/2]; pi/4 on resonance, -> pi/2 for Delta >> Omega_R.
double coupling_angle(double rabi, double detuning);

/// Rows are the |+> and |-> coefficients in the bare basis.
Eigen::Matrix2d dressed_coefficients(double coupling_angle);

/// (U_+, U_-) = (+hbar Omega / 2, -hbar Omega / 2).
EnergyPair potential_pm(double generalized);

/// Potential of the fixed superposition cos th |u1> + sin th |u2>:
/// (hbar Omega / 2) cos[2 (theta - theta_c)].
double potential_theta(double theta, const DressedSystem& sys);

enum class AtomLabel { a, b };

/// Vacuum Rabi frequency as a function of both atom positions.
using RabiField = std::function<double(const Vec3& r_a, const Vec3& r_b)>;

/// Everything the force routines need: the Rabi field, where the atoms are,
/// the detuning, and a length scale for the finite-difference step floor.
struct DressedScenario {
  RabiField rabi;
  Vec3 position_a = Vec3::Zero();
  Vec3 position_b = Vec3::Zero();
  double detuning = 0.0;
  double length_scale = 1.0;

  double rabi_here() const { return rabi(position_a, position_b); }
  DressedSystem system() const { return DressedSystem::make(rabi_here(), detuning); }
};

struct StepControl {
  double relative_step = 1e-6;  // h = max(relative_step |x|, absolute_step * L)
  double absolute_step = 1e-9;
  double tolerance = 1e-6;      // accepted Richardson error, relative
};

struct Gradient {
  Vec3 value = Vec3::Zero();
  Vec3 error = Vec3::Zero();
};

/// Central difference of any scalar of the positions with one Richardson
/// level, differentiating with respect to the chosen atom's coordinates.
Gradient finite_difference_gradient(const std::function<double(const Vec3&, const Vec3&)>& f,
                                    const Vec3& r_a, const Vec3& r_b, AtomLabel which,
                                    double length_scale, const StepControl& step = {});

/// Gradient of Omega_R with respect to one atom's position (rad/s per m).
/// Throws GradientError if the Richardson error estimate exceeds tolerance.
Gradient grad_rabi(const DressedScenario& scn, AtomLabel which, const StepControl& step = {});

/// -grad U_+- = -+ (hbar/2) sin(2 theta_c) grad Omega_R, in N.
Vec3 force_eigenstate(const DressedScenario& scn, int sign, AtomLabel which,
                      const StepControl& step = {});

/// Force for the fixed superposition angle theta. `corrected` returns
/// -(hbar/2) sin(2 theta) grad Omega_R, which equals -grad U_theta at fixed
/// theta. `as_printed` returns -(hbar/2) [sin 2theta / sin 2theta_c] grad Omega_R
/// and needs Omega_R > 0.
Vec3 force_theta(const DressedScenario& scn, double theta, AtomLabel which,
                 Variant variant = Variant::corrected, const StepControl& step = {});

}  // namespace cavityvdw
