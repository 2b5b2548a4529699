#include <benchmark/benchmark.h>

#include "cavityvdw/constants.hpp"
#include "cavityvdw/dressed.hpp"
#include "cavityvdw/greens.hpp"
#include "cavityvdw/kramers_kronig.hpp"
#include "cavityvdw/planarcavity.hpp"

using namespace cavityvdw;

namespace {

constexpr double d = 1e-6;

void BM_PlanarCavityGreen(benchmark::State& state) {
  const PlanarCavity cav(d, 1e-3, 1);
  const double w = cav.resonance_frequency() + 0.5 * cav.mode_width();
  const double zp = state.range(0) == 0 ? 0.5 * d : 0.3 * d;
  for (auto _ : state) benchmark::DoNotOptimize(planar_cavity_green(cav, 0.5 * d, zp, w));
}
BENCHMARK(BM_PlanarCavityGreen)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ScanRabi(benchmark::State& state) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto base = PlanarScenario::resonant(cav, 0.5 * d, 0.5 * d, constants::atomic_unit_dipole);
  SweepSpec spec;
  spec.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_rabi(base, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanRabi)->Arg(200)->Arg(10000);

void BM_KramersKronig(benchmark::State& state) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto f = lorentzian_spectrum(1.0, cav.resonance_frequency(), cav.mode_width());
  const double w = cav.resonance_frequency() + 1e3 * cav.mode_width();
  for (auto _ : state) benchmark::DoNotOptimize(kk_real_from_imag(f, w));
}
BENCHMARK(BM_KramersKronig);

void BM_ForceTheta(benchmark::State& state) {
  const PlanarCavity cav(d, 1e-3, 1);
  const auto scn = PlanarScenario(cav, 0.3 * d, 0.6 * d, constants::atomic_unit_dipole,
                                  cav.resonance_frequency() - 1e10)
                       .dressed();
  for (auto _ : state) benchmark::DoNotOptimize(force_theta(scn, 0.4, AtomLabel::a));
}
BENCHMARK(BM_ForceTheta);

}  // namespace

BENCHMARK_MAIN();
