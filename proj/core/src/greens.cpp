#include "cavityvdw/greens.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "integrate.hpp"

namespace cavityvdw {

using cd = std::complex<double>;
using constants::pi;
using constants::speed_of_light;

namespace {

constexpr cd I{0.0, 1.0};

/// Unit-peak Lorentzian (gamma^2/4) / ((w - w0)^2 + gamma^2/4).
double unit_lorentzian(double omega, double center, double width) {
  const double hw2 = 0.25 * width * width;
  const double x = omega - center;
  return hw2 / (x * x + hw2);
}

void check_window(const PlanarCavity& cavity, double omega, double window) {
  const double offset = std::abs(omega - cavity.resonance_frequency());
  if (!(offset <= window * cavity.mode_width())) {
    throw DomainError("planar_resonant_im_gxx: frequency lies " +
                      std::to_string(offset / cavity.mode_width()) +
                      " mode widths from resonance, outside the single-mode window of " +
                      std::to_string(window));
  }
}

}  // namespace

ComplexDyad free_space_green(double k, const Vec3& r) {
  const double dist = r.norm();
  if (!(dist > 0.0)) throw DomainError("free_space_green: zero displacement");
  if (!(k > 0.0)) throw DomainError("free_space_green: wavenumber must be positive");

  // Written with the spherical Bessel function j1 so that the imaginary part
  // keeps full relative accuracy as kr -> 0.
  const double x = k * dist;
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j1 = boost::math::sph_bessel(1u, x);
  const double near = (c + x * s) / (x * x);
  const cd a{c - near, s - j1};
  const cd b{-c + 3.0 * near, 3.0 * j1 - s};
  const double pref = k / (4.0 * pi * x);
  const Vec3 e = r / dist;

  ComplexDyad g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      g(i, j) = pref * ((i == j ? a : cd{}) + b * (e(i) * e(j)));
    }
  }
  return g;
}

CoincidentGreen free_space_im_green_coincident(double k) {
  if (!(k > 0.0)) throw DomainError("free_space_im_green_coincident: wavenumber must be positive");
  CoincidentGreen out;
  out.value = ComplexDyad::Identity() * cd{0.0, k / (6.0 * pi)};
  return out;
}

PlanarCavity::PlanarCavity(double width, double delta, int mode_index)
    : width_(width), delta_(delta), mode_index_(mode_index) {
  if (!(width > 0.0)) throw DomainError("PlanarCavity: plate separation must be positive");
  if (!(delta > 0.0) || !(delta < max_delta)) {
    throw DomainError("PlanarCavity: reflectivity deviation must lie in (0, 0.1), got " +
                      std::to_string(delta));
  }
  if (mode_index < 1) throw DomainError("PlanarCavity: mode index must be >= 1");
}

double PlanarCavity::resonance_frequency() const noexcept {
  return mode_index_ * pi * speed_of_light / width_;
}

double PlanarCavity::mode_width() const noexcept {
  return 2.0 * speed_of_light * delta_ / width_;
}

double PlanarCavity::mode_function(double z) const noexcept {
  return sin_pi(mode_index_ * z / width_);
}

double sin_pi(double x) noexcept {
  // Reduce to [-1, 1]; integers map to exact zeros.
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(pi * r);
}

PlanarGreen planar_green_for_reflectivity(double width, double reflectivity, double z,
                                          double z_prime, double omega,
                                          const QuadratureControl& quad) {
  if (!(width > 0.0)) throw DomainError("planar_cavity_green: plate separation must be positive");
  if (!(z > 0.0 && z < width && z_prime > 0.0 && z_prime < width)) {
    throw DomainError("planar_cavity_green: points must lie strictly between the plates");
  }
  if (!(omega > 0.0)) throw DomainError("planar_cavity_green: frequency must be positive");
  if (!(std::abs(reflectivity) < 1.0)) {
    throw DomainError("planar_cavity_green: |reflectivity| must be below 1");
  }

  const double d = width;
  const double k = omega / speed_of_light;
  const double r_p = reflectivity;
  const double r_s = -reflectivity;
  const double diff = z - z_prime;
  const double sum = z + z_prime;

  PlanarGreen out;
  if (diff == 0.0) {
    out.bulk = free_space_im_green_coincident(k).value;
    out.bulk_real_divergent = true;
  } else {
    out.bulk = free_space_green(k, Vec3{0.0, 0.0, diff});
  }
  out.scattering.setZero();
  if (reflectivity == 0.0) return out;

  // Integrands in terms of k_perp (complex for evanescent waves). The xx entry
  // carries the azimuthal weight pi, the zz entry 2 pi; both share the common
  // prefactor i / (8 pi^2) of the plane-wave expansion.
  struct Entries {
    cd xx;
    cd zz;
  };
  auto integrand = [&](cd kz) -> Entries {
    const cd e2 = std::exp(2.0 * I * kz * d);
    const cd ds = 1.0 - r_s * r_s * e2;
    const cd dp = 1.0 - r_p * r_p * e2;
    const cd w_perp = kz * kz / (k * k);        // (k_perp / k)^2
    const cd w_par = 1.0 - w_perp;             // (k_par / k)^2
    // exp(2 i kz d) * 2 cos(kz (z - z')), kept as decaying exponentials.
    const cd standing = std::exp(I * kz * (2.0 * d + diff)) + std::exp(I * kz * (2.0 * d - diff));
    const cd mirrored = std::exp(I * kz * sum) + std::exp(I * kz * (2.0 * d - sum));
    Entries e;
    e.xx = (r_s * r_s / ds + w_perp * r_p * r_p / dp) * standing +
           (r_s / ds - w_perp * r_p / dp) * mirrored;
    e.zz = 2.0 * w_par * (r_p * r_p / dp * standing + r_p / dp * mirrored);
    return e;
  };

  // Propagating sector, k_par in [0, k]: k_par dk_par / k_perp = -dk_perp.
  // Resonances sit at k_perp = m pi / d with width ~ delta/d; refine around them.
  const double line = std::max(1.0 - std::abs(reflectivity), 1e-12) / d;
  std::vector<double> cuts;
  for (int m = 1; m * pi / d <= k * (1.0 + 1e-12); ++m) {
    const double kres = m * pi / d;
    cuts.push_back(kres);
    for (double s : {1.0, 4.0, 16.0, 64.0, 256.0}) {
      cuts.push_back(kres - s * line);
      cuts.push_back(kres + s * line);
    }
  }
  for (double s : {1.0, 4.0, 16.0, 64.0, 256.0}) cuts.push_back(k - s * line);

  auto prop_xx = detail::integrate_piecewise([&](double q) { return integrand(cd{q, 0.0}).xx; },
                                             0.0, k, cuts, quad);
  auto prop_zz = detail::integrate_piecewise([&](double q) { return integrand(cd{q, 0.0}).zz; },
                                             0.0, k, cuts, quad);
  detail::require_converged(prop_xx, quad, "planar_cavity_green (propagating xx)");
  detail::require_converged(prop_zz, quad, "planar_cavity_green (propagating zz)");

  // Evanescent sector, k_perp = i kappa: k_par dk_par / k_perp = -i dkappa.
  // With real reflectivities the integrand is real here.
  auto evan_xx = detail::integrate_to_infinity(
      [&](double kappa) { return integrand(cd{0.0, kappa}).xx.real(); }, 0.0, quad);
  auto evan_zz = detail::integrate_to_infinity(
      [&](double kappa) { return integrand(cd{0.0, kappa}).zz.real(); }, 0.0, quad);
  detail::require_converged(evan_xx, quad, "planar_cavity_green (evanescent xx)");
  detail::require_converged(evan_zz, quad, "planar_cavity_green (evanescent zz)");

  const cd pref = I / (8.0 * pi);
  const cd gxx = pref * (prop_xx.value - I * evan_xx.value);
  const cd gzz = pref * (prop_zz.value - I * evan_zz.value);
  out.scattering(0, 0) = gxx;
  out.scattering(1, 1) = gxx;
  out.scattering(2, 2) = gzz;
  out.error_estimate = (prop_xx.error + prop_zz.error + evan_xx.error + evan_zz.error) / (8.0 * pi);
  return out;
}

PlanarGreen planar_cavity_green(const PlanarCavity& cavity, double z, double z_prime,
                                double omega, const QuadratureControl& quad) {
  return planar_green_for_reflectivity(cavity.width(), cavity.r_p(), z, z_prime, omega, quad);
}

double planar_resonant_im_gxx(const PlanarCavity& cavity, double z_a, double z_b, double omega,
                              Variant variant, double window) {
  const double d = cavity.width();
  if (!(z_a >= 0.0 && z_a <= d && z_b >= 0.0 && z_b <= d)) {
    throw DomainError("planar_resonant_im_gxx: positions must lie inside the cavity");
  }
  check_window(cavity, omega, window);

  const double w_nu = cavity.resonance_frequency();
  const double c = speed_of_light;
  const double delta = cavity.delta();
  const double shape = unit_lorentzian(omega, w_nu, cavity.mode_width());

  if (variant == Variant::corrected) {
    const double s_a = cavity.mode_function(z_a);
    const double s_b = cavity.mode_function(z_b);
    if (s_a == 0.0 || s_b == 0.0) return 0.0;
    return w_nu * w_nu * w_nu / (4.0 * pi * c * delta) * s_a * s_b * shape;
  }

  // Uncorrected four-cosine combination, (z_A + z_B) term with its original sign.
  const double q = w_nu / c;
  const double braces = std::cos((2.0 * d - z_a - z_b) * q) - std::cos((2.0 * d + z_a - z_b) * q) -
                        std::cos((2.0 * d - z_a + z_b) * q) - std::cos((z_a + z_b) * q);
  return -c * w_nu * w_nu * w_nu / (16.0 * pi * c * c * delta) * braces * shape;
}

RealDyad FreeSpaceGreenProvider::imag(const Vec3& r1, const Vec3& r2, double omega) const {
  const double k = omega / speed_of_light;
  const Vec3 r = r2 - r1;
  if (r.norm() == 0.0) return free_space_im_green_coincident(k).value.imag();
  return free_space_green(k, r).imag();
}

std::optional<RealDyad> FreeSpaceGreenProvider::real(const Vec3& r1, const Vec3& r2,
                                                     double omega) const {
  const Vec3 r = r2 - r1;
  if (r.norm() == 0.0) return std::nullopt;
  return free_space_green(omega / speed_of_light, r).real();
}

PlanarResonantGreenProvider::PlanarResonantGreenProvider(PlanarCavity cavity, Variant variant,
                                                         double window)
    : cavity_(cavity), variant_(variant), window_(window) {}

RealDyad PlanarResonantGreenProvider::imag(const Vec3& r1, const Vec3& r2, double omega) const {
  const double v = planar_resonant_im_gxx(cavity_, r1.z(), r2.z(), omega, variant_, window_);
  RealDyad g = RealDyad::Zero();
  g(0, 0) = g(1, 1) = v / (omega * omega);
  return g;
}

std::optional<RealDyad> PlanarResonantGreenProvider::real(const Vec3& r1, const Vec3& r2,
                                                          double omega) const {
  check_window(cavity_, omega, window_);
  const double w_nu = cavity_.resonance_frequency();
  const double detuning = w_nu - omega;
  if (!(std::abs(detuning) >= narrow_mode_min_ratio * cavity_.mode_width())) {
    throw DomainError(
        "PlanarResonantGreenProvider::real: narrow-mode real part needs |w - w_nu| >= 100 gamma_nu");
  }
  // w^2 Re G(w) = w_nu^2 Im G(w_nu) * gamma / (2 (w_nu - w))
  const double peak = planar_resonant_im_gxx(cavity_, r1.z(), r2.z(), w_nu, variant_, window_);
  const double v = peak * cavity_.mode_width() / (2.0 * detuning);
  RealDyad g = RealDyad::Zero();
  g(0, 0) = g(1, 1) = v / (omega * omega);
  return g;
}

}  // namespace cavityvdw
