#pragma once

// Dyadic Green's tensors for free space and for a symmetric planar cavity,
// plus the provider interface consumed by the coupling and perturbative code.

#include <optional>

#include "cavityvdw/types.hpp"

namespace cavityvdw {

/// Free-space Green's tensor G(r, r', w) for displacement r = r' - r and
/// wavenumber k = w/c. Symmetric and even in r.
///
/// Throws DomainError for |r| == 0 or k <= 0; the coincident limit has a
/// divergent real part and is handled by free_space_im_green_coincident().
ComplexDyad free_space_green(double k, const Vec3& r);

/// Regularised r -> 0 limit of the free-space tensor. Only the imaginary
/// part, (k / 6 pi) * identity, is finite.
struct CoincidentGreen {
  ComplexDyad value;  // real part zeroed
  bool real_part_divergent = true;
};
CoincidentGreen free_space_im_green_coincident(double k);

/// Two identical, almost perfectly reflecting plates at z = 0 and z = d.
/// Reflection coefficients r_p = -r_s = 1 - delta are derived, not stored.
class PlanarCavity {
 public:
  /// Upper bound on the reflectivity deviation for which the single-mode
  /// model is used.
  static constexpr double max_delta = 0.1;

  PlanarCavity(double width, double delta, int mode_index);

  double width() const noexcept { return width_; }
  double delta() const noexcept { return delta_; }
  int mode_index() const noexcept { return mode_index_; }

  double r_p() const noexcept { return 1.0 - delta_; }
  double r_s() const noexcept { return -(1.0 - delta_); }

  /// w_nu = nu pi c / d.
  double resonance_frequency() const noexcept;
  /// gamma_nu = 2 c delta / d.
  double mode_width() const noexcept;
  /// sin(nu pi z / d); exactly zero on the plates and on interior nodes.
  double mode_function(double z) const noexcept;

 private:
  double width_;
  double delta_;
  int mode_index_;
};

/// sin(pi x) with exact zeros at integer x.
double sin_pi(double x) noexcept;

/// On-axis planar-cavity tensor split into bulk (free-space) and scattering
/// parts. For z == z' the bulk real part is divergent and reported as zero.
struct PlanarGreen {
  ComplexDyad bulk;
  ComplexDyad scattering;
  bool bulk_real_divergent = false;
  double error_estimate = 0.0;

  ComplexDyad total() const { return bulk + scattering; }
};

/// Scattering part for mirror reflectivity r_p = -r_s = reflectivity, without
/// the validity bound on the cavity. reflectivity == 0 gives a zero tensor.
PlanarGreen planar_green_for_reflectivity(double width, double reflectivity, double z,
                                          double z_prime, double omega,
                                          const QuadratureControl& quad = {});

/// k_parallel-integrated Green's tensor of the planar cavity for two points
/// on the cavity axis. The azimuthal integral is done analytically; the
/// radial integral is split into propagating (k_par < k, integrated in
/// k_perp) and evanescent (k_par > k, integrated in kappa = |k_perp|) parts.
PlanarGreen planar_cavity_green(const PlanarCavity& cavity, double z, double z_prime,
                                double omega, const QuadratureControl& quad = {});

/// Minimum |w - w_nu| / gamma_nu for the narrow-mode real part.
inline constexpr double narrow_mode_min_ratio = 1e2;

/// Default half-width of the frequency window, in units of gamma_nu, inside
/// which the single-mode Lorentzian reduction is trusted.
inline constexpr double default_mode_window = 1e3;

/// w_nu^2 Im G_xx(z_A, z_B, w) from the resonant single-mode reduction:
///   (w_nu^3 / (4 pi c delta)) sin(nu pi z_A/d) sin(nu pi z_B/d) * L(w),
/// with L the unit-peak Lorentzian of width 2 c delta / d. The as-printed
/// variant evaluates the uncorrected four-cosine combination instead.
/// Units (rad/s)^2 / m. Throws DomainError if w is outside the mode window.
double planar_resonant_im_gxx(const PlanarCavity& cavity, double z_a, double z_b,
                              double omega, Variant variant = Variant::corrected,
                              double window = default_mode_window);

/// Source of Green's tensor values for coupling strengths and resonant
/// potentials. Implementations must be thread-safe.
class GreenProvider {
 public:
  virtual ~GreenProvider() = default;

  virtual RealDyad imag(const Vec3& r1, const Vec3& r2, double omega) const = 0;
  /// Real part, or nullopt where it diverges (free-space coincident points).
  virtual std::optional<RealDyad> real(const Vec3& r1, const Vec3& r2, double omega) const = 0;
};

/// Free-space provider: closed form for r1 != r2, regularised limit otherwise.
class FreeSpaceGreenProvider final : public GreenProvider {
 public:
  RealDyad imag(const Vec3& r1, const Vec3& r2, double omega) const override;
  std::optional<RealDyad> real(const Vec3& r1, const Vec3& r2, double omega) const override;
};

/// Planar cavity in the single-mode Lorentzian reduction. Positions are read
/// from their z components. The transverse block is diag(G_xx, G_xx); G_zz is
/// not part of the model and is zero. The real part is the narrow-mode
/// Kramers-Kronig image of the Lorentzian imaginary part and needs
/// |w - w_nu| >= narrow_mode_min_ratio * gamma_nu.
class PlanarResonantGreenProvider final : public GreenProvider {
 public:
  explicit PlanarResonantGreenProvider(PlanarCavity cavity,
                                       Variant variant = Variant::corrected,
                                       double window = default_mode_window);

  RealDyad imag(const Vec3& r1, const Vec3& r2, double omega) const override;
  std::optional<RealDyad> real(const Vec3& r1, const Vec3& r2, double omega) const override;

  const PlanarCavity& cavity() const noexcept { return cavity_; }

 private:
  PlanarCavity cavity_;
  Variant variant_;
  double window_;
};

}  // namespace cavityvdw
