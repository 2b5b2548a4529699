#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstddef>

namespace cavityvdw {

using Vec3 = Eigen::Vector3d;
using RealDyad = Eigen::Matrix3d;
/// Evaluated dyadic Green's tensor, entries in 1/m.
using ComplexDyad = Eigen::Matrix3cd;

/// Which form of three sign-sensitive closed-form expressions to evaluate. `corrected`
/// is the physically consistent form; `as_printed` reproduces the uncorrected
/// expressions verbatim for comparison.
enum class Variant { corrected, as_printed };

inline const char* to_string(Variant v) {
  return v == Variant::corrected ? "corrected" : "as-printed";
}

/// Control parameters for the adaptive quadratures.
struct QuadratureControl {
  double relative_tolerance = 1e-8;
  std::size_t max_panels = 20000;  // bisection budget per integral
};

}  // namespace cavityvdw
