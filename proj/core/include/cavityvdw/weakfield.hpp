#pragma once

// Weak-coupling (perturbative) resonant potentials, used as an independent
// check on the dressed-state results.

#include <optional>
#include <utility>

#include "cavityvdw/dressed.hpp"
#include "cavityvdw/greens.hpp"
#include "cavityvdw/modecoupling.hpp"

namespace cavityvdw {

/// Resonant second-order potential of two identical atoms sharing one
/// excitation, split into single-atom and interaction terms (J). Single-atom
/// terms are empty when the provider's coincident real part diverges.
struct ResonantPotentialBreakdown {
  std::optional<double> single_a;
  std::optional<double> single_b;
  double interaction = 0.0;

  bool single_atom_terms_divergent() const { return !single_a || !single_b; }
  /// Sum of all terms; nullopt if a single-atom term is missing.
  std::optional<double> total() const;
};

/// -1/2 mu0 w^2 dA.ReG(rA,rA).dA - 1/2 mu0 w^2 dB.ReG(rB,rB).dB
/// - mu0 w^2 dA.ReG(rA,rB).dB at w = w_10.
ResonantPotentialBreakdown resonant_potential(const AtomPair& atoms, const GreenProvider& green);

/// Closed-form free-space interaction term (SI units):
///   -(1/4 pi eps0) dA_a dB_b [ (delta_ab - e_a e_b) k^2 cos(kr)/r
///                             - (delta_ab - 3 e_a e_b)(k sin(kr)/r^2 + cos(kr)/r^3) ].
/// DomainError for r == 0.
double free_space_resonant_potential(const Vec3& dipole_a, const Vec3& dipole_b, double k,
                                     const Vec3& r);

/// Large-detuning eigenstate potentials (+hbar gamma pi N / 4 Delta, -hbar gamma pi N / 4 Delta).
EnergyPair weak_limit_potentials(double mode_width, double mode_norm, double detuning);

/// -(hbar / 4 Delta) cos(2 theta) Omega_R^2.
double weak_theta_potential(double theta, double rabi, double detuning);

/// +(hbar / 2 Delta) cos(2 theta) Omega_R grad Omega_R.
Vec3 weak_theta_force(double theta, double rabi, const Vec3& grad_rabi, double detuning);

/// Real-part image of a Lorentzian squared coupling:
///   gamma_nu g2_peak / (2 (w_nu - w)).
/// DomainError unless |w - w_nu| >= 100 gamma_nu.
double narrow_mode_real_contraction(double g2_peak, double width, double center, double omega);

/// Position-dependent part of the strong-coupling U_- relative to the
/// uncoupled (Omega_R = 0) configuration: -hbar (Omega - |Delta|) / 2,
/// evaluated without cancellation.
double strong_minus_shift(double rabi, double detuning);

}  // namespace cavityvdw
