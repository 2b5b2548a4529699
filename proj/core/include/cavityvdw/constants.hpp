#pragma once

#include <numbers>

namespace cavityvdw::constants {

// SI values (CODATA 2018). The vacuum permittivity is derived from mu0 and c
// so that mu0 * eps0 * c^2 == 1 holds to rounding; several cross-checks rely
// on 1/(eps0 c^3) == mu0/c.
inline constexpr double speed_of_light = 299792458.0;            // m/s
inline constexpr double hbar = 1.054571817e-34;                   // J s
inline constexpr double vacuum_permeability = 1.25663706212e-6;   // N/A^2
inline constexpr double vacuum_permittivity =
    1.0 / (vacuum_permeability * speed_of_light * speed_of_light);  // F/m

inline constexpr double pi = std::numbers::pi;

/// Elementary charge times Bohr radius; a convenient default dipole moment.
inline constexpr double atomic_unit_dipole = 8.4783536255e-30;  // C m

}  // namespace cavityvdw::constants
