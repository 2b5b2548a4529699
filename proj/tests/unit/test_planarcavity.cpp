#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/errors.hpp"
#include "cavityvdw/planarcavity.hpp"

using namespace cavityvdw;
using constants::pi;
using constants::speed_of_light;

namespace {

constexpr double au = constants::atomic_unit_dipole;
constexpr double d = 1e-6;

}  // namespace

TEST(DerivedQuantities, ModeWidthAndFrequency) {
  const PlanarCavity cav(d, 1e-3, 1);
  EXPECT_NEAR(cavity_mode_width(cav), 5.9958e11, 1e-4 * 5.9958e11);
  EXPECT_NEAR(resonance_frequency(cav), 9.4175e14, 1e-4 * 9.4175e14);
  EXPECT_DOUBLE_EQ(cavity_mode_width(PlanarCavity(d / 2, 1e-3, 1)), 2.0 * cavity_mode_width(cav));
  EXPECT_DOUBLE_EQ(resonance_frequency(PlanarCavity(d, 1e-3, 2)), 2.0 * resonance_frequency(cav));
  EXPECT_DOUBLE_EQ(resonance_frequency(PlanarCavity(2 * d, 1e-3, 1)), 0.5 * resonance_frequency(cav));
  EXPECT_NEAR(cavity_mode_width(PlanarCavity(d, 1e-9, 1)), 1e-6 * cavity_mode_width(cav),
              1e-20 * cavity_mode_width(cav));
}

TEST(DerivedQuantities, FreeDecayRate) {
  const double w = 9.4e14;
  const double g = free_decay_rate(w, au);
  EXPECT_NEAR(free_decay_rate(w, 2 * au), 4 * g, 1e-14 * g);
  EXPECT_NEAR(free_decay_rate(2 * w, au), 8 * g, 1e-14 * g);
  const double lhs = constants::vacuum_permeability * au * au / (constants::hbar * pi) * w * w * w;
  EXPECT_NEAR(lhs, 3.0 * speed_of_light * g, 1e-12 * lhs);
  EXPECT_THROW(free_decay_rate(0.0, au), DomainError);
  EXPECT_THROW(free_decay_rate(w, 0.0), DomainError);
}

TEST(Scenario, ClampsPositionsNearPlates) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto s = PlanarScenario::resonant(cav, 0.0, d, au);
  EXPECT_EQ(s.warnings().size(), 2u);
  EXPECT_DOUBLE_EQ(s.z_a(), plate_clearance * d);
  EXPECT_DOUBLE_EQ(s.z_b(), (1.0 - plate_clearance) * d);
  EXPECT_THROW(PlanarScenario::resonant(cav, -1e-9, 0.5 * d, au), DomainError);
  EXPECT_THROW(PlanarScenario::resonant(cav, 0.5 * d, 1.1 * d, au), DomainError);
  EXPECT_TRUE(PlanarScenario::resonant(cav, 0.2 * d, 0.5 * d, au).warnings().empty());
}

TEST(RabiContributions, FactorFourAtAntinode) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto s = PlanarScenario::resonant(cav, 0.5 * d, 0.5 * d, au);
  const auto r = rabi_contributions(s);
  const double unit = rabi_unit_squared(s);
  EXPECT_NEAR(r.a / unit, 1.5, 1e-14);
  EXPECT_NEAR(r.b / unit, 1.5, 1e-14);
  EXPECT_NEAR(r.ab / unit, 3.0, 1e-14);
  EXPECT_NEAR(r.total / unit, 6.0, 1e-14);
  EXPECT_NEAR(r.total / r.a, 4.0, 1e-12);
}

TEST(RabiContributions, NodeAtomIsInvisible) {
  const PlanarCavity cav(d, 1e-3, 2);
  for (int i = 1; i < 100; ++i) {
    const double zb = d * i / 100.0;
    const auto with = rabi_contributions(PlanarScenario::resonant(cav, 0.5 * d, zb, au));
    EXPECT_EQ(with.ab, 0.0);
    EXPECT_EQ(with.a, 0.0);
    EXPECT_EQ(with.total, with.b);
  }
}

TEST(RabiContributions, IdenticalPositionsAndSymmetry) {
  const PlanarCavity cav(d, 1e-3, 3);
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const double z = u(rng) * d;
    const auto same = rabi_contributions(PlanarScenario::resonant(cav, z, z, au));
    EXPECT_NEAR(same.ab, 2.0 * same.a, 1e-12 * std::max(same.ab, 1e-300));
    const double z2 = u(rng) * d;
    const auto ab = rabi_contributions(PlanarScenario::resonant(cav, z, z2, au));
    const auto ba = rabi_contributions(PlanarScenario::resonant(cav, z2, z, au));
    EXPECT_EQ(ab.a, ba.b);
    EXPECT_EQ(ab.b, ba.a);
    EXPECT_EQ(ab.ab, ba.ab);
    EXPECT_GE(ab.total, 0.0);
    EXPECT_NEAR(ab.total, ab.a + ab.b + ab.ab, 1e-13 * (ab.a + ab.b + std::abs(ab.ab)));
  }
}

TEST(RabiContributions, PipelineThroughCouplingsAgrees) {
  const PlanarCavity cav(d, 1e-3, 2);
  PlanarResonantGreenProvider planar(cav);
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const auto s = PlanarScenario::resonant(cav, u(rng) * d, u(rng) * d, au);
    const ModeModel m =
        make_mode_model(s.atoms(), cav.resonance_frequency(), cavity_mode_width(cav), planar);
    const double pipeline = cavity_mode_width(cav) * pi * mode_norm(m);
    const auto r = rabi_contributions(s);
    const double scale = r.a + r.b + std::abs(r.ab);
    EXPECT_NEAR(pipeline, r.total, 1e-10 * scale);
    EXPECT_NEAR(cavity_mode_width(cav) * pi * m.g2_aa(), r.a, 1e-10 * scale);
    EXPECT_NEAR(2.0 * cavity_mode_width(cav) * pi * m.g2_ab(), r.ab, 1e-10 * scale);
    const double field = s.rabi_field()(Vec3{0, 0, s.z_a()}, Vec3{0, 0, s.z_b()});
    EXPECT_NEAR(field * field, r.total, 1e-10 * scale);
  }
}

TEST(RabiContributions, AsPrintedVariant) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto s = PlanarScenario::resonant(cav, 0.3 * d, 0.3 * d, au);
  const auto r = rabi_contributions(s, Variant::as_printed);
  const double unit = rabi_unit_squared(s);
  // Uncorrected braces evaluate to -2 on the diagonal.
  EXPECT_NEAR(r.ab / unit, -1.5, 1e-12);
  EXPECT_NEAR(r.a / unit, -0.75, 1e-12);
  EXPECT_LT(r.total, 0.0);
  EXPECT_THROW(s.rabi_field(Variant::as_printed)(Vec3{0, 0, 0.3 * d}, Vec3{0, 0, 0.3 * d}),
               DomainError);
}

TEST(RabiContributions, RequireResonance) {
  const PlanarCavity cav(d, 1e-3, 1);
  const PlanarScenario off(cav, 0.5 * d, 0.5 * d, au, 0.99 * cav.resonance_frequency());
  EXPECT_FALSE(off.on_resonance());
  EXPECT_THROW(rabi_contributions(off), DomainError);
  EXPECT_NEAR(off.detuning(), 0.01 * cav.resonance_frequency(), 1e-6 * cav.resonance_frequency());
}

TEST(ScanRabi, JointSweepMatchesClosedForm) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto base = PlanarScenario::resonant(cav, 0.5 * d, 0.5 * d, au);
  const auto scan = scan_rabi(base, SweepSpec{});
  ASSERT_EQ(scan.rows.size(), 200u);
  const double gamma0 = free_decay_rate(cav.resonance_frequency(), au);
  for (const auto& row : scan.rows) {
    EXPECT_EQ(row.z_a, row.z_b);
    const double s = std::sin(pi * row.z_a / d);
    const double expected = 1.5 * gamma0 * speed_of_light / d * 4.0 * s * s;
    EXPECT_NEAR(row.si.total, expected, 1e-12 * 6.0 * gamma0 * speed_of_light / d);
    EXPECT_NEAR(row.dimensionless.total, row.si.total / scan.unit_squared, 1e-15 * 6.0);
  }
  EXPECT_DOUBLE_EQ(scan.rows.front().z_a, 1e-3 * d);
  EXPECT_DOUBLE_EQ(scan.rows.back().z_a, (1.0 - 1e-3) * d);
}

TEST(ScanRabi, NodeSweepEqualsSingleAtomCurve) {
  const PlanarCavity cav(d, 1e-3, 2);
  const auto base = PlanarScenario::resonant(cav, 0.5 * d, 0.5 * d, au);
  SweepSpec spec;
  spec.mode = SweepMode::atom_b;
  spec.fixed = 0.5;
  spec.points = 1000;
  const auto scan = scan_rabi(base, spec);
  ASSERT_EQ(scan.rows.size(), 1000u);
  double worst = 0.0;
  for (const auto& row : scan.rows) {
    EXPECT_EQ(row.z_a, 0.5 * d);
    if (row.si.b > 0.0) worst = std::max(worst, std::abs(row.si.total - row.si.b) / row.si.b);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(ScanRabi, GridValidation) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto base = PlanarScenario::resonant(cav, 0.5 * d, 0.5 * d, au);
  SweepSpec empty;
  empty.points = 0;
  EXPECT_THROW(scan_rabi(base, empty), DomainError);
  SweepSpec out;
  out.stop = 1.5;
  EXPECT_THROW(scan_rabi(base, out), DomainError);
  SweepSpec edge;
  edge.start = 0.0;
  edge.stop = 1.0;
  edge.points = 3;
  const auto scan = scan_rabi(base, edge);
  EXPECT_EQ(scan.rows.size(), 3u);
  EXPECT_EQ(scan.warnings.size(), 4u);
}
