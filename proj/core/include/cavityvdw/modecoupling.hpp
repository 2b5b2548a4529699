#pragma once

// Single-mode Lorentzian reduction of the atom-field coupling spectrum.

#include <span>

#include "cavityvdw/greens.hpp"
#include "cavityvdw/types.hpp"

namespace cavityvdw {

/// Two-level atom: position (m), transition frequency (rad/s) and real
/// transition dipole (C m).
struct AtomSpec {
  Vec3 position = Vec3::Zero();
  double transition_frequency = 0.0;
  Vec3 dipole = Vec3::Zero();

  /// Throws DomainError unless the frequency and dipole norm are positive.
  void validate() const;
};

/// Pair of identical atoms; construction enforces a shared transition frequency.
class AtomPair {
 public:
  AtomPair(AtomSpec a, AtomSpec b);

  const AtomSpec& a() const noexcept { return a_; }
  const AtomSpec& b() const noexcept { return b_; }
  double transition_frequency() const noexcept { return a_.transition_frequency; }

 private:
  AtomSpec a_;
  AtomSpec b_;
};

/// Lorentzian single-mode model: centre, width and the peak squared
/// couplings at the centre (rad/s each). The cross coupling is signed.
class ModeModel {
 public:
  ModeModel(double center, double width, double g2_aa, double g2_bb, double g2_ab);

  double center() const noexcept { return center_; }
  double width() const noexcept { return width_; }
  double g2_aa() const noexcept { return g2_aa_; }
  double g2_bb() const noexcept { return g2_bb_; }
  double g2_ab() const noexcept { return g2_ab_; }

  /// Largest width/centre ratio accepted as a narrow mode.
  static constexpr double max_relative_width = 1e-2;

 private:
  double center_;
  double width_;
  double g2_aa_;
  double g2_bb_;
  double g2_ab_;
};

/// Squared coupling (mu0 / hbar pi) w^2 d1 . Im G(r1, r2, w) . d2, in rad/s.
/// Non-negative for a1 == a2; the cross term may be negative.
double coupling_strength_sq(const AtomSpec& a1, const AtomSpec& a2, double omega,
                            const GreenProvider& green);

/// Peak couplings of a pair at the mode centre, packaged as a ModeModel.
ModeModel make_mode_model(const AtomPair& atoms, double center, double width,
                          const GreenProvider& green);

/// peak * (gamma^2/4) / ((w - w_nu)^2 + gamma^2/4)
double lorentzian_profile(double peak, double center, double width, double omega);

struct LorentzianSample {
  double omega;
  double value;
};

struct LorentzianFit {
  double center;
  double width;  // full width at half maximum
  double peak;
  double residual_norm;
  int iterations;
};

/// Least-squares Lorentzian fit. The peak amplitude is eliminated as a linear
/// parameter; centre and width are refined by Levenberg-Marquardt starting
/// from the largest sample. Needs at least five samples bracketing the peak.
/// Throws FitError on degenerate input, non-convergence or a non-positive width.
LorentzianFit fit_lorentzian(std::span<const LorentzianSample> samples);

/// N = g2_aa + g2_bb + 2 g2_ab >= 0.
double mode_norm(const ModeModel& m);

/// g2_ab / sqrt(g2_aa g2_bb), in [-1, 1]. DomainError if an atom is decoupled.
double mode_overlap(const ModeModel& m);

}  // namespace cavityvdw
