#pragma once

#include <functional>
#include <vector>

#include "cavityvdw/types.hpp"

namespace cavityvdw {

/// A real spectral function of angular frequency, together with what the
/// caller knows about it: where its mass lives, where it has narrow features,
/// how fast it decays, and which points are singular.
struct SpectralFunction {
  struct Singularity {
    double location;
    double exclusion_radius;
  };

  std::function<double(double)> value;
  /// Window holding all non-negligible mass; outside it f is integrated with
  /// a tail rule and must decay at least like |w|^-decay_power.
  double support_lo = 0.0;
  double support_hi = 0.0;
  double decay_power = 2.0;
  /// Width scale of the narrowest feature; sets the pole-subtraction window.
  double feature_width = 0.0;
  /// Centres of narrow features; used as quadrature breakpoints.
  std::vector<double> features;
  std::vector<Singularity> singularities;
};

/// Unit-free Lorentzian peak * (gamma^2/4) / ((w - w_nu)^2 + gamma^2/4) packaged
/// with support and feature hints.
SpectralFunction lorentzian_spectrum(double peak, double center, double width);

/// Principal-value transform (1/pi) P int f(w') / (w' - w) dw', the map taking
/// w^2 Im G to w^2 Re G. Computed by subtracting f(w)/(w' - w) over a
/// symmetric window around w, so the remaining integrand is regular.
///
/// Throws DomainError if w is within the exclusion radius of a declared
/// singularity, QuadratureError if the integral does not converge.
double kk_real_from_imag(const SpectralFunction& f, double omega,
                         const QuadratureControl& quad = {});

}  // namespace cavityvdw
