#include <benchmark/benchmark.h>

#include "sfi/bounds.hpp"
#include "sfi/observables.hpp"
#include "sfi/propagator.hpp"
#include "sfi/pulse.hpp"
#include "sfi/wavefunction.hpp"

namespace {

sfi::PulseTables linear_tables(double lambda) {
  sfi::PulseSpec ps;
  ps.family = sfi::PulseFamily::linear;
  ps.lambda = lambda;
  ps.T = 1.0;
  return sfi::build_tables(ps);
}

void BM_SplitStep2D(benchmark::State& state) {
  const int n = int(state.range(0));
  sfi::GridSpec g{2, n, 16.0, {}};
  const sfi::PulseTables tbl = linear_tables(10.0);
  sfi::PotentialSpec pot{sfi::PotentialKind::coulomb, 1.0, 1.0, 1.0, 1.0, 0.5 * g.h()};
  const sfi::Wavefunction psi0 = sfi::gaussian_state(g, 1.0);
  sfi::EvolutionPlan plan;
  plan.dt = 1e-3;
  plan.t1 = 16.0 * plan.dt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfi::evolve_split(psi0, plan, tbl, pot).final.v.data());
  }
  state.SetItemsProcessed(state.iterations() * 16);
  state.counters["steps/s"] =
      benchmark::Counter(double(state.iterations()) * 16.0, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SplitStep2D)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ToMomentum2D(benchmark::State& state) {
  const int n = int(state.range(0));
  sfi::GridSpec g{2, n, 16.0, {}};
  const sfi::Wavefunction psi = sfi::gaussian_state(g, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfi::to_momentum(psi).v.data());
  }
}
BENCHMARK(BM_ToMomentum2D)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Kappa(benchmark::State& state) {
  const sfi::PulseTables tbl = linear_tables(1.0);
  double lambda = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfi::kappa_lambda(tbl, 1.0, 1.0, lambda).value);
    lambda += 1.0;  // defeat memoization-style folding
  }
}
BENCHMARK(BM_Kappa)->Unit(benchmark::kMicrosecond);

void BM_DollardPhase(benchmark::State& state) {
  sfi::GridSpec g{2, 128, 24.0, {}};
  const sfi::PulseTables tbl = linear_tables(20.0);
  sfi::DollardSpec dspec;
  dspec.K0 = 2.0 * std::pow(40.0, 2.0 / 35.0);
  const sfi::Wavefunction psi =
      sfi::apply_cutoff(sfi::gaussian_state(g, 2.0), dspec).psi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sfi::dollard_propagate(psi, 1.0, 3.0, tbl, 1.0, dspec).v.data());
  }
}
BENCHMARK(BM_DollardPhase)->Unit(benchmark::kMillisecond);

void BM_ConeNorm(benchmark::State& state) {
  sfi::GridSpec g{2, 256, 16.0, {}};
  const sfi::PulseTables tbl = linear_tables(10.0);
  const sfi::Wavefunction psi = sfi::gaussian_state(g, 1.0);
  sfi::ConeObservable cone;
  cone.delta = 0.3;
  cone.theta = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfi::cone_norm(psi, 5.0, cone, tbl, {45.0, 0.0, 0.0}));
  }
}
BENCHMARK(BM_ConeNorm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
