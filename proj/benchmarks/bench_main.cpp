#include <benchmark/benchmark.h>

#include "qbm/bessel.hpp"
#include "qbm/coefficients.hpp"
#include "qbm/dynamics.hpp"
#include "qbm/observables.hpp"
#include "qbm/states.hpp"

namespace {

qbm::DensityMatrix fig1_state(std::size_t n) {
  return qbm::make_superposition_state(qbm::SuperpositionParams{},
                                       qbm::Grid1D::symmetric(20.0, n));
}

void BM_Rhs(benchmark::State& state) {
  const auto rho = fig1_state(static_cast<std::size_t>(state.range(0)));
  qbm::DensityMatrix out(rho.grid());
  const auto bath = qbm::ohmic_high_temperature(0.001, 1.0, 300.0);
  const qbm::IntegratorConfig cfg;
  for (auto _ : state) {
    qbm::rhs(rho, bath, 1.0, cfg, 0.0, out);
    benchmark::DoNotOptimize(out.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Rhs)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Hermitize(benchmark::State& state) {
  auto rho = fig1_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rho.hermitize());
}
BENCHMARK(BM_Hermitize)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_HermiticityDefect(benchmark::State& state) {
  const auto rho = fig1_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rho.hermiticity_defect());
}
BENCHMARK(BM_HermiticityDefect)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_EvolveSteps(benchmark::State& state) {
  const auto rho = fig1_state(static_cast<std::size_t>(state.range(0)));
  const auto bath = qbm::ohmic_high_temperature(0.001, 1.0, 300.0);
  qbm::IntegratorConfig cfg;
  cfg.dt = 1e-4;
  qbm::EvolutionOptions opts;
  opts.t_final = 20 * cfg.dt;
  for (auto _ : state) benchmark::DoNotOptimize(qbm::evolve(rho, bath, 1.0, cfg, opts).steps);
}
BENCHMARK(BM_EvolveSteps)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Wigner(benchmark::State& state) {
  const auto rho = fig1_state(static_cast<std::size_t>(state.range(0)));
  const auto p = qbm::default_momentum_grid(rho.grid());
  for (auto _ : state) benchmark::DoNotOptimize(qbm::wigner_transform(rho, p).values.data());
}
BENCHMARK(BM_Wigner)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_BesselJ0(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qbm::bessel_j0(z));
    z = z > 40.0 ? 0.0 : z + 0.37;
  }
}
BENCHMARK(BM_BesselJ0);

}  // namespace
BENCHMARK_MAIN();
