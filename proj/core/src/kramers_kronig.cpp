#include "cavityvdw/kramers_kronig.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "integrate.hpp"

namespace cavityvdw {

SpectralFunction lorentzian_spectrum(double peak, double center, double width) {
  if (!(width > 0.0)) throw DomainError("lorentzian_spectrum: width must be positive");
  SpectralFunction f;
  const double hw2 = 0.25 * width * width;
  f.value = [=](double w) {
    const double x = w - center;
    return peak * hw2 / (x * x + hw2);
  };
  f.support_lo = center - 1e5 * width;
  f.support_hi = center + 1e5 * width;
  f.decay_power = 2.0;
  f.feature_width = width;
  f.features = {center};
  return f;
}

double kk_real_from_imag(const SpectralFunction& f, double omega, const QuadratureControl& quad) {
  if (!f.value) throw DomainError("kk_real_from_imag: spectral function is empty");
  if (!(f.support_lo < f.support_hi)) throw DomainError("kk_real_from_imag: empty support window");
  if (!(f.decay_power > 0.0)) {
    throw DomainError("kk_real_from_imag: decay power must be positive for the transform to exist");
  }
  if (!(f.feature_width > 0.0)) throw DomainError("kk_real_from_imag: feature width must be positive");
  for (const auto& s : f.singularities) {
    if (std::abs(omega - s.location) <= s.exclusion_radius) {
      throw DomainError("kk_real_from_imag: evaluation point " + std::to_string(omega) +
                        " lies within the exclusion radius of a singularity at " +
                        std::to_string(s.location));
    }
  }

  // Geometrically spaced breakpoints around every feature and around w, out
  // to the edge of the support, so no panel spans many decades of scale.
  const double reach = std::max(f.support_hi - f.support_lo, 2.0 * f.feature_width);
  std::vector<double> cuts;
  auto add_ladder = [&](double centre) {
    cuts.push_back(centre);
    for (double s = f.feature_width; s <= reach; s *= 4.0) {
      cuts.push_back(centre - s);
      cuts.push_back(centre + s);
    }
  };
  for (double c : f.features) add_ladder(c);
  add_ladder(omega);

  const double radius = 10.0 * f.feature_width;
  const double a = omega - radius;
  const double b = omega + radius;
  const double f0 = f.value(omega);

  // Symmetric window: P int_{a}^{b} f0 / (t - w) dt == 0, so subtract it.
  auto inner = detail::integrate_piecewise(
      [&](double t) { return (f.value(t) - f0) / (t - omega); }, a, b, cuts, quad);
  detail::require_converged(inner, quad, "kk_real_from_imag (pole window)");

  auto plain = [&](double t) { return f.value(t) / (t - omega); };
  double total = inner.value;

  const double left_end = std::min(f.support_lo, a);
  const double right_end = std::max(f.support_hi, b);
  if (left_end < a) {
    auto r = detail::integrate_piecewise(plain, left_end, a, cuts, quad);
    detail::require_converged(r, quad, "kk_real_from_imag (lower support)");
    total += r.value;
  }
  if (b < right_end) {
    auto r = detail::integrate_piecewise(plain, b, right_end, cuts, quad);
    detail::require_converged(r, quad, "kk_real_from_imag (upper support)");
    total += r.value;
  }

  // Tails outside the support window.
  auto upper = detail::integrate_to_infinity(plain, right_end, quad);
  auto lower = detail::integrate_to_infinity([&](double t) { return plain(-t); }, -left_end, quad);
  detail::require_converged(upper, quad, "kk_real_from_imag (upper tail)");
  detail::require_converged(lower, quad, "kk_real_from_imag (lower tail)");
  total += upper.value + lower.value;

  return total / constants::pi;
}

}  // namespace cavityvdw
