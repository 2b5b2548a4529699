#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "cavityvdw/modecoupling.hpp"
#include "cavityvdw/planarcavity.hpp"

using namespace cavityvdw;
using constants::pi;
using constants::speed_of_light;

namespace {

AtomSpec atom_at(double z, double w, double dipole = constants::atomic_unit_dipole) {
  AtomSpec a;
  a.position = Vec3{0.0, 0.0, z};
  a.transition_frequency = w;
  a.dipole = Vec3{dipole, 0.0, 0.0};
  return a;
}

}  // namespace

TEST(AtomPair, RequiresIdenticalAtoms) {
  const AtomSpec a = atom_at(0.0, 1e15);
  AtomSpec b = atom_at(1e-7, 1e15);
  EXPECT_NO_THROW(AtomPair(a, b));
  b.transition_frequency = 1.1e15;
  EXPECT_THROW(AtomPair(a, b), DomainError);
  AtomSpec c = a;
  c.dipole = Vec3::Zero();
  EXPECT_THROW(AtomPair(a, c), DomainError);
}

TEST(ModeModel, Invariants) {
  EXPECT_NO_THROW(ModeModel(1e15, 1e12, 1.0, 4.0, -2.0));
  EXPECT_THROW(ModeModel(1e15, 1e12, 1.0, 4.0, 2.1), DomainError);
  EXPECT_THROW(ModeModel(1e15, 1e13, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(ModeModel(1e15, 0.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(ModeModel(1e15, 1e12, -1.0, 1.0, 0.0), DomainError);
}

TEST(CouplingStrength, FreeSpaceCoincident) {
  const double w = 2.4e15;
  const AtomSpec a = atom_at(0.0, w);
  FreeSpaceGreenProvider free;
  const double k = w / speed_of_light;
  const double d2 = a.dipole.squaredNorm();
  const double expected =
      constants::vacuum_permeability / (constants::hbar * pi) * w * w * d2 * k / (6.0 * pi);
  EXPECT_NEAR(coupling_strength_sq(a, a, w, free), expected, 1e-13 * expected);
  EXPECT_THROW(coupling_strength_sq(a, a, 0.0, free), DomainError);
}

TEST(CouplingStrength, DiagonalIsNonNegative) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PlanarCavity cav(1e-6, 1e-3, 2);
  PlanarResonantGreenProvider planar(cav);
  FreeSpaceGreenProvider free;
  for (int i = 0; i < 2000; ++i) {
    const double w = cav.resonance_frequency() + (2.0 * u(rng) - 1.0) * 50.0 * cav.mode_width();
    const AtomSpec a = atom_at(u(rng) * 1e-6, w);
    EXPECT_GE(coupling_strength_sq(a, a, w, planar), 0.0);
    EXPECT_GT(coupling_strength_sq(a, a, w, free), 0.0);
  }
}

TEST(CouplingStrength, PlanarAntinodeCrossCoupling) {
  const double d = 1e-6;
  const double delta = 1e-3;
  const PlanarCavity cav(d, delta, 1);
  const double w = cav.resonance_frequency();
  PlanarResonantGreenProvider planar(cav);
  const AtomSpec a = atom_at(0.5 * d, w);
  const AtomSpec b = atom_at(0.5 * d, w);
  const double gamma0 = free_decay_rate(w, a.dipole.norm());
  const double expected = 3.0 * gamma0 / (4.0 * pi * delta);
  EXPECT_NEAR(coupling_strength_sq(a, b, w, planar), expected, 1e-11 * expected);
}

TEST(LorentzianProfile, ShapeProperties) {
  const double peak = 3.0;
  const double w0 = 10.0;
  const double g = 0.4;
  EXPECT_DOUBLE_EQ(lorentzian_profile(peak, w0, g, w0), peak);
  EXPECT_NEAR(lorentzian_profile(peak, w0, g, w0 + 0.5 * g), 0.5 * peak, 1e-14 * peak);
  EXPECT_NEAR(lorentzian_profile(peak, w0, g, w0 - 0.5 * g), 0.5 * peak, 1e-14 * peak);
  double prev = lorentzian_profile(peak, w0, g, w0);
  for (int i = 1; i < 100; ++i) {
    const double x = 0.05 * i;
    const double up = lorentzian_profile(peak, w0, g, w0 + x);
    EXPECT_NEAR(up, lorentzian_profile(peak, w0, g, w0 - x), 1e-14 * up);
    EXPECT_LT(up, prev);
    prev = up;
  }
  EXPECT_THROW(lorentzian_profile(peak, w0, 0.0, w0), DomainError);
}

TEST(LorentzianProfile, AreaIsHalfPiWidth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double peak = 2.0;
  const double g = 1e-3;
  auto f = [&](double w) { return lorentzian_profile(peak, 0.0, g, w); };
  // Map the real line onto (-1, 1) so the slow 1/w^2 tails are integrated exactly.
  auto mapped = [&](double t) {
    const double s = 1.0 - t * t;
    return f(g * t / s) * g * (1.0 + t * t) / (s * s);
  };
  double err = 0.0;
  const double area = GK::integrate(mapped, -1.0, 1.0, 20, 1e-12, &err);
  EXPECT_NEAR(area / peak, 0.5 * pi * g, 1e-10 * g);
}

TEST(FitLorentzian, RoundTrip) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double w0 = 9.4e14 * (1.0 + 0.1 * u(rng));
    const double g = 6e11 * (1.0 + 0.5 * u(rng));
    const double peak = 2.2e38 * (1.0 + 0.5 * u(rng));
    std::vector<LorentzianSample> s;
    for (int i = 0; i < 41; ++i) {
      const double w = w0 + (i - 20 + 0.3 * u(rng)) * 0.25 * g;
      s.push_back({w, lorentzian_profile(peak, w0, g, w)});
    }
    const LorentzianFit fit = fit_lorentzian(s);
    EXPECT_NEAR(fit.center, w0, 1e-9 * g);
    EXPECT_NEAR(fit.width, g, 1e-9 * g);
    EXPECT_NEAR(fit.peak, peak, 1e-9 * peak);
  }
}

TEST(FitLorentzian, DegenerateInput) {
  std::vector<LorentzianSample> flat;
  for (int i = 0; i < 10; ++i) flat.push_back({1.0 + i, 5.0});
  EXPECT_THROW(fit_lorentzian(flat), FitError);

  std::vector<LorentzianSample> few{{1.0, 1.0}, {2.0, 2.0}, {3.0, 1.0}};
  EXPECT_THROW(fit_lorentzian(few), FitError);

  std::vector<LorentzianSample> negative;
  for (int i = 0; i < 10; ++i) negative.push_back({1.0 + i, -1.0 - i});
  EXPECT_THROW(fit_lorentzian(negative), FitError);
}

TEST(ModeNorm, LimitingCases) {
  EXPECT_DOUBLE_EQ(mode_norm(ModeModel(1e15, 1e11, 2.0, 2.0, 2.0)), 8.0);
  EXPECT_DOUBLE_EQ(mode_norm(ModeModel(1e15, 1e11, 2.0, 2.0, -2.0)), 0.0);
}

TEST(ModeNorm, RandomModelsAreNonNegativeAndOverlapBounded) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> logg(-5.0, 5.0);
  std::uniform_real_distribution<double> rho(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double aa = std::pow(10.0, logg(rng));
    const double bb = std::pow(10.0, logg(rng));
    const double r = i % 100 == 0 ? (i % 200 == 0 ? 1.0 : -1.0) : rho(rng);
    const double ab = r * std::sqrt(aa) * std::sqrt(bb);
    const ModeModel m(1e15, 1e11, aa, bb, ab);
    const double n = mode_norm(m);
    EXPECT_GE(n, 0.0);
    const double lower = std::pow(std::sqrt(aa) - std::sqrt(bb), 2);
    EXPECT_GE(n, lower * (1.0 - 1e-9) - 1e-9 * (aa + bb));
    EXPECT_LE(std::abs(mode_overlap(m)), 1.0);
  }
}

TEST(ModeOverlap, PlanarGeometries) {
  const double d = 1e-6;
  const PlanarCavity cav(d, 1e-3, 2);
  PlanarResonantGreenProvider planar(cav);
  const double w = cav.resonance_frequency();
  const AtomPair opposite(atom_at(0.25 * d, w), atom_at(0.75 * d, w));
  const ModeModel m = make_mode_model(opposite, w, cav.mode_width(), planar);
  EXPECT_NEAR(mode_overlap(m), -1.0, 1e-12);
  EXPECT_NEAR(mode_norm(m), 0.0, 1e-12 * m.g2_aa());

  const AtomPair same(atom_at(0.3 * d, w), atom_at(0.3 * d, w));
  EXPECT_NEAR(mode_overlap(make_mode_model(same, w, cav.mode_width(), planar)), 1.0, 1e-15);

  const AtomPair node(atom_at(0.5 * d, w), atom_at(0.3 * d, w));
  EXPECT_THROW(mode_overlap(make_mode_model(node, w, cav.mode_width(), planar)), DomainError);
}
