#include "cavityvdw/modecoupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"

namespace cavityvdw {

void AtomSpec::validate() const {
  if (!(transition_frequency > 0.0)) throw DomainError("AtomSpec: transition frequency must be positive");
  if (!(dipole.norm() > 0.0)) throw DomainError("AtomSpec: dipole moment must be non-zero");
  if (!position.allFinite()) throw DomainError("AtomSpec: position must be finite");
}

AtomPair::AtomPair(AtomSpec a, AtomSpec b) : a_(std::move(a)), b_(std::move(b)) {
  a_.validate();
  b_.validate();
  if (a_.transition_frequency != b_.transition_frequency) {
    throw DomainError("AtomPair: atoms must share the same transition frequency");
  }
}

ModeModel::ModeModel(double center, double width, double g2_aa, double g2_bb, double g2_ab)
    : center_(center), width_(width), g2_aa_(g2_aa), g2_bb_(g2_bb), g2_ab_(g2_ab) {
  if (!(center > 0.0)) throw DomainError("ModeModel: centre frequency must be positive");
  if (!(width > 0.0)) throw DomainError("ModeModel: width must be positive");
  if (!(width / center < max_relative_width)) {
    throw DomainError("ModeModel: mode is not narrow (width/centre = " +
                      std::to_string(width / center) + ")");
  }
  if (!(g2_aa >= 0.0) || !(g2_bb >= 0.0)) {
    throw DomainError("ModeModel: diagonal couplings must be non-negative");
  }
  // Cauchy-Schwarz, with room for rounding in the inputs.
  const double bound = g2_aa * g2_bb;
  if (!(g2_ab * g2_ab <= bound * (1.0 + 1e-12) + 1e-300)) {
    throw DomainError("ModeModel: cross coupling violates (g2_ab)^2 <= g2_aa g2_bb");
  }
}

double coupling_strength_sq(const AtomSpec& a1, const AtomSpec& a2, double omega,
                            const GreenProvider& green) {
  if (!(omega > 0.0)) throw DomainError("coupling_strength_sq: frequency must be positive");
  const RealDyad im = green.imag(a1.position, a2.position, omega);
  const double contraction = a1.dipole.dot(im * a2.dipole);
  return constants::vacuum_permeability / (constants::hbar * constants::pi) * omega * omega *
         contraction;
}

ModeModel make_mode_model(const AtomPair& atoms, double center, double width,
                          const GreenProvider& green) {
  return ModeModel(center, width, coupling_strength_sq(atoms.a(), atoms.a(), center, green),
                   coupling_strength_sq(atoms.b(), atoms.b(), center, green),
                   coupling_strength_sq(atoms.a(), atoms.b(), center, green));
}

double lorentzian_profile(double peak, double center, double width, double omega) {
  if (!(width > 0.0)) throw DomainError("lorentzian_profile: width must be positive");
  const double hw2 = 0.25 * width * width;
  const double x = omega - center;
  return peak * hw2 / (x * x + hw2);
}

double mode_norm(const ModeModel& m) {
  // Non-negative by Cauchy-Schwarz; clamp rounding at perfect cancellation.
  return std::max(0.0, m.g2_aa() + m.g2_bb() + 2.0 * m.g2_ab());
}

double mode_overlap(const ModeModel& m) {
  if (!(m.g2_aa() > 0.0) || !(m.g2_bb() > 0.0)) {
    throw DomainError("mode_overlap: an atom with zero coupling has no overlap");
  }
  return std::clamp(m.g2_ab() / (std::sqrt(m.g2_aa()) * std::sqrt(m.g2_bb())), -1.0, 1.0);
}

}  // namespace cavityvdw
