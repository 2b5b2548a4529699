#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "cavityvdw/kramers_kronig.hpp"
#include "cavityvdw/planarcavity.hpp"
#include "cavityvdw/weakfield.hpp"

using namespace cavityvdw;
using constants::hbar;
using constants::pi;
using constants::speed_of_light;

namespace {

constexpr double au = constants::atomic_unit_dipole;

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3{n(rng), n(rng), n(rng)}.normalized();
}

AtomSpec atom(const Vec3& r, double w, const Vec3& d) {
  AtomSpec a;
  a.position = r;
  a.transition_frequency = w;
  a.dipole = d;
  return a;
}

}  // namespace

TEST(FreeSpacePotential, ClosedFormMatchesContraction) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> logkr(-1.0, 1.5);
  std::uniform_real_distribution<double> logd(-0.5, 0.5);
  FreeSpaceGreenProvider free;
  for (int i = 0; i < 100; ++i) {
    const double w = 2e15;
    const double k = w / speed_of_light;
    const Vec3 r = std::pow(10.0, logkr(rng)) / k * random_unit(rng);
    const Vec3 da = au * std::pow(10.0, logd(rng)) * random_unit(rng);
    const Vec3 db = au * std::pow(10.0, logd(rng)) * random_unit(rng);
    const RealDyad re = free_space_green(k, r).real();
    const double mu_w2 = constants::vacuum_permeability * w * w;
    const double contraction = -mu_w2 * da.dot(re * db);
    const double scale = mu_w2 * da.norm() * db.norm() * re.norm();
    EXPECT_NEAR(free_space_resonant_potential(da, db, k, r), contraction, 1e-12 * scale);

    const AtomPair pair(atom(Vec3::Zero(), w, da), atom(r, w, db));
    const auto br = resonant_potential(pair, free);
    EXPECT_NEAR(br.interaction, contraction, 1e-12 * scale);
    EXPECT_TRUE(br.single_atom_terms_divergent());
    EXPECT_FALSE(br.total().has_value());

    const AtomPair swapped(atom(r, w, db), atom(Vec3::Zero(), w, da));
    EXPECT_NEAR(resonant_potential(swapped, free).interaction, br.interaction, 1e-14 * scale);
  }
}

TEST(FreeSpacePotential, StaticDipoleLimit) {
  const Vec3 r{0.0, 0.0, 3e-9};
  const Vec3 d{au, 0.0, 0.0};
  const double k = 1e-2;
  const double expected = au * au / (4.0 * pi * constants::vacuum_permittivity * std::pow(3e-9, 3));
  EXPECT_NEAR(free_space_resonant_potential(d, d, k, r), expected, 1e-12 * expected);
}

TEST(FreeSpacePotential, LongitudinalHasNoFarField) {
  const double k = 7e6;
  const double dist = 2e-6;
  const Vec3 r{0.0, dist, 0.0};
  const Vec3 d{0.0, au, 0.0};
  const double kr = k * dist;
  const double near = -2.0 * (k * std::sin(kr) / (dist * dist) + std::cos(kr) / (dist * dist * dist));
  const double expected = -(-near) / (4.0 * pi * constants::vacuum_permittivity) * au * au;
  const double v = free_space_resonant_potential(d, d, k, r);
  EXPECT_NEAR(v, expected, 1e-12 * std::abs(expected));
  EXPECT_THROW(free_space_resonant_potential(d, d, k, Vec3::Zero()), DomainError);
}

TEST(WeakLimit, EigenstatePotentials) {
  const auto zero = weak_limit_potentials(1e11, 0.0, 1e12);
  EXPECT_EQ(zero.plus, 0.0);
  EXPECT_EQ(zero.minus, 0.0);
  const auto u = weak_limit_potentials(16.0 / pi, 1.0, 1000.0);
  EXPECT_NEAR(u.minus, -0.004 * hbar, 1e-15 * hbar);
  EXPECT_EQ(u.plus, -u.minus);
  EXPECT_THROW(weak_limit_potentials(1.0, 1.0, 0.0), DomainError);
}

TEST(WeakLimit, SuperpositionPotential) {
  const double rabi = 4.0;
  const double det = 1000.0;
  const auto u = weak_limit_potentials(rabi * rabi / pi, 1.0, det);
  EXPECT_NEAR(weak_theta_potential(0.0, rabi, det), u.minus, 1e-15 * hbar);
  EXPECT_NEAR(weak_theta_potential(pi / 2.0, rabi, det), u.plus, 1e-15 * hbar);
  EXPECT_NEAR(weak_theta_potential(pi / 4.0, rabi, det), 0.0, 1e-18 * hbar);
  EXPECT_THROW(weak_theta_potential(0.1, rabi, 0.0), DomainError);
}

TEST(WeakLimit, ForceIsNegativeGradient) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> ang(0.0, pi);
  std::uniform_real_distribution<double> pos(0.1e-6, 0.9e-6);
  const double det = 3e13;
  const double q = pi / 1e-6;
  auto rabi = [&](double z) { return 2e10 * (1.2 + std::sin(q * z)); };
  auto rabi_dz = [&](double z) { return 2e10 * q * std::cos(q * z); };
  for (int i = 0; i < 100; ++i) {
    const double th = ang(rng);
    const double z = pos(rng);
    const double h = 1e-10;
    auto u = [&](double zz) { return weak_theta_potential(th, rabi(zz), det); };
    const double fd = -(-u(z + 2 * h) + 8 * u(z + h) - 8 * u(z - h) + u(z - 2 * h)) / (12 * h);
    const Vec3 f = weak_theta_force(th, rabi(z), Vec3{0.0, 0.0, rabi_dz(z)}, det);
    const double scale = hbar / (2.0 * det) * rabi(z) * std::abs(rabi_dz(z));
    EXPECT_NEAR(f.z(), fd, 1e-8 * scale);
  }
  const Vec3 g{1.0, 2.0, 3.0};
  EXPECT_LE(weak_theta_force(pi / 4, 5.0, g, 2.0).norm(),
            1e-15 * weak_theta_force(0.0, 5.0, g, 2.0).norm());
  EXPECT_LE((weak_theta_force(0.0, 5.0, g, 2.0) + weak_theta_force(pi / 2, 5.0, g, 2.0)).norm(),
            1e-15 * weak_theta_force(0.0, 5.0, g, 2.0).norm());
  EXPECT_THROW(weak_theta_force(0.0, 5.0, g, 0.0), DomainError);
}

TEST(NarrowMode, MatchesKramersKronigOfLorentzian) {
  const double w0 = 9.4e14;
  const double g = 6e11;
  const double peak = 3.3e5;
  const auto f = lorentzian_spectrum(peak, w0, g);
  for (double s : {-1.0, 1.0}) {
    const double w = w0 + s * 1e3 * g;
    const double closed = narrow_mode_real_contraction(peak, g, w0, w);
    EXPECT_NEAR(kk_real_from_imag(f, w), closed, 1e-2 * std::abs(closed));
    EXPECT_EQ(narrow_mode_real_contraction(peak, g, w0, 2.0 * w0 - w), -closed);
  }
  EXPECT_EQ(narrow_mode_real_contraction(0.0, g, w0, w0 + 1e3 * g), 0.0);
  EXPECT_THROW(narrow_mode_real_contraction(peak, g, w0, w0 + 10.0 * g), DomainError);
  EXPECT_THROW(narrow_mode_real_contraction(peak, 0.0, w0, w0 + 10.0 * g), DomainError);
}

TEST(StrongWeak, EigenstateShiftMatchesWeakLimit) {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> lg(6.0, 12.0);
  for (int i = 0; i < 1000; ++i) {
    const double rabi = std::pow(10.0, lg(rng));
    const double det = (i % 2 ? 1.0 : -1.0) * 1e3 * rabi;
    const double strong = strong_minus_shift(rabi, det);
    const double weak = -hbar * rabi * rabi / (4.0 * std::abs(det));
    EXPECT_LE(std::abs(strong - weak) / std::abs(weak), 0.5 * std::pow(rabi / det, 2));
    EXPECT_LE(std::abs(strong - weak) / std::abs(weak), 1e-5);
  }
  EXPECT_EQ(strong_minus_shift(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(strong_minus_shift(2.0, 0.0), -hbar);
}

TEST(StrongWeak, LorentzianProviderTotalEqualsWeakEigenstatePotential) {
  const double d = 1e-6;
  const PlanarCavity cav(d, 1e-3, 1);
  PlanarResonantGreenProvider planar(cav);
  const double w_nu = cav.resonance_frequency();
  for (double za : {0.3, 0.5}) {
    for (double zb : {0.5, 0.65}) {
      const auto scn = PlanarScenario::resonant(cav, za * d, zb * d, au);
      const double rabi = scn.rabi_field()(Vec3{0, 0, za * d}, Vec3{0, 0, zb * d});
      const double det = std::clamp(1e3 * rabi, 2e2 * cav.mode_width(), 5e2 * cav.mode_width());
      const double w10 = w_nu - det;
      const AtomPair pair(atom(Vec3{0, 0, za * d}, w10, Vec3{au, 0, 0}),
                          atom(Vec3{0, 0, zb * d}, w10, Vec3{au, 0, 0}));
      const ModeModel m = make_mode_model(pair, w_nu, cav.mode_width(), planar);
      const auto br = resonant_potential(pair, planar);
      ASSERT_TRUE(br.total().has_value());
      const auto weak = weak_limit_potentials(cav.mode_width(), mode_norm(m), det);
      EXPECT_NEAR(*br.total(), weak.minus, 1e-6 * std::abs(weak.minus));
    }
  }
  const double inside = w_nu - 10.0 * cav.mode_width();
  const AtomPair pair(atom(Vec3{0, 0, 0.5 * d}, inside, Vec3{au, 0, 0}),
                      atom(Vec3{0, 0, 0.5 * d}, inside, Vec3{au, 0, 0}));
  EXPECT_THROW(resonant_potential(pair, planar), DomainError);
}
