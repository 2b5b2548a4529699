#pragma once

// Two atoms on the axis of a planar cavity: derived cavity quantities,
// position-dependent Rabi frequency contributions, and position scans.

#include <cstddef>
#include <string>
#include <vector>

#include "cavityvdw/dressed.hpp"
#include "cavityvdw/greens.hpp"
#include "cavityvdw/modecoupling.hpp"

namespace cavityvdw {

/// Gamma_0 = w^3 |d|^2 / (3 pi eps0 hbar c^3), in rad/s.
double free_decay_rate(double transition_frequency, double dipole_norm);

/// gamma_nu = 2 c delta / d.
double cavity_mode_width(const PlanarCavity& cavity);

/// w_nu = nu pi c / d.
double resonance_frequency(const PlanarCavity& cavity);

/// Positions closer than this fraction of d to a plate are moved inside.
inline constexpr double plate_clearance = 1e-6;

/// Two x-polarised atoms on the cavity axis.
class PlanarScenario {
 public:
  /// Positions are in metres; ones within plate_clearance * d of a plate are
  /// clamped and a warning recorded. DomainError for positions outside [0, d].
  PlanarScenario(PlanarCavity cavity, double z_a, double z_b, double dipole_norm,
                 double transition_frequency);

  /// Atoms tuned to the cavity resonance (Delta = 0).
  static PlanarScenario resonant(PlanarCavity cavity, double z_a, double z_b, double dipole_norm);

  const PlanarCavity& cavity() const noexcept { return cavity_; }
  double z_a() const noexcept { return z_a_; }
  double z_b() const noexcept { return z_b_; }
  double dipole_norm() const noexcept { return dipole_norm_; }
  double transition_frequency() const noexcept { return transition_frequency_; }
  /// Delta = w_nu - w_10.
  double detuning() const noexcept;
  bool on_resonance() const noexcept;
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Same scenario with new positions; warnings restart.
  PlanarScenario moved(double z_a, double z_b) const;

  AtomPair atoms() const;

  /// Omega_R as a function of both positions (z components are used).
  RabiField rabi_field(Variant variant = Variant::corrected) const;
  /// Scenario packaged for the dressed-state force routines.
  DressedScenario dressed(Variant variant = Variant::corrected) const;

 private:
  PlanarCavity cavity_;
  double z_a_;
  double z_b_;
  double dipole_norm_;
  double transition_frequency_;
  std::vector<std::string> warnings_;
};

/// Squared Rabi frequency contributions, (rad/s)^2.
struct RabiBreakdown {
  double a = 0.0;
  double b = 0.0;
  double ab = 0.0;
  double total = 0.0;
};

/// Rabi contributions at exact resonance. Corrected form:
///   Omega_AB^2 = (3 c Gamma_0 / d) s_A s_B,  Omega_A^2 = (3 c Gamma_0 / 2d) s_A^2,
/// with s = sin(nu pi z / d). The as-printed variant evaluates the uncorrected
/// four-cosine expression and halves its z_A = z_B value for the single-atom
/// terms. DomainError off resonance.
RabiBreakdown rabi_contributions(const PlanarScenario& scn, Variant variant = Variant::corrected);

/// Frequency unit for the dimensionless output: Omega^2 d / (c Gamma_0).
double rabi_unit_squared(const PlanarScenario& scn);

enum class SweepMode {
  joint,   // z_A = z_B = z
  atom_b,  // z_A fixed, z_B swept
  atom_a,  // z_B fixed, z_A swept
};

/// Positions in units of d. The grid is linspace(start, stop, points).
struct SweepSpec {
  SweepMode mode = SweepMode::joint;
  double start = 1e-3;
  double stop = 1.0 - 1e-3;
  std::size_t points = 200;
  double fixed = 0.5;

  std::vector<double> grid() const;
};

struct RabiRow {
  double z_a = 0.0;
  double z_b = 0.0;
  RabiBreakdown si;
  RabiBreakdown dimensionless;
};

struct RabiScan {
  std::vector<RabiRow> rows;
  double unit_squared = 0.0;  // c Gamma_0 / d
  std::vector<std::string> warnings;
};

/// One row per grid point, in grid order. DomainError for an empty grid or
/// one leaving [0, 1].
RabiScan scan_rabi(const PlanarScenario& scenario, const SweepSpec& sweep,
                   Variant variant = Variant::corrected);

}  // namespace cavityvdw
