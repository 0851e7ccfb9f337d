// Microbenchmarks for the hot paths: ramp integration, equilibrium energy
// sums, work optimization and comparison sweeps.

#include <benchmark/benchmark.h>

#include "qhe/cycle.hpp"
#include "qhe/ermakov.hpp"
#include "qhe/optimize.hpp"
#include "qhe/supremacy.hpp"
#include "qhe/thermo.hpp"

using namespace qhe;

namespace {

cycle::OttoCycleSpec engine_spec(int n, const cycle::DrivingMode& driving) {
  cycle::OttoCycleSpec spec;
  spec.omega1 = 1.0;
  spec.omega2 = 1.0 / 0.6;
  spec.beta_c = 2.0 / n;  // sigma_c = 2
  spec.beta_h = 0.3 * spec.beta_c;
  spec.medium = {n, 0.5};
  spec.driving = driving;
  spec.stroke_times = cycle::default_stroke_times(driving);
  return spec;
}

void SolveRamp(benchmark::State& state) {
  const auto protocol = dynamics::FrequencyProtocol::smooth_ramp(
      1.0, 2.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    const auto trajectory = dynamics::solve_ermakov(protocol);
    benchmark::DoNotOptimize(trajectory.samples().size());
  }
}
BENCHMARK(SolveRamp)->Arg(1)->Arg(4)->Arg(16);

void MeanEnergy(benchmark::State& state) {
  const thermo::MediumSpec medium{static_cast<int>(state.range(0)), 0.5};
  const thermo::BathSpec bath{2.0 / state.range(0), 1.0};  // sigma = 2
  for (auto _ : state) {
    benchmark::DoNotOptimize(thermo::mean_energy(medium, bath).total);
  }
}
BENCHMARK(MeanEnergy)->Arg(10)->Arg(100)->Arg(1000);

void QuenchCycle(benchmark::State& state) {
  const auto spec = engine_spec(static_cast<int>(state.range(0)),
                                cycle::DrivingMode::sudden());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycle::cycle_performance(spec).total_work_out);
  }
}
BENCHMARK(QuenchCycle)->Arg(1)->Arg(100);

void RampCycle(benchmark::State& state) {
  const auto spec = engine_spec(100, cycle::DrivingMode::ramp(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycle::cycle_performance(spec).total_work_out);
  }
}
BENCHMARK(RampCycle);

void MaximizeWork(benchmark::State& state) {
  const auto spec = engine_spec(static_cast<int>(state.range(0)),
                                cycle::DrivingMode::sudden());
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize::maximize_work(spec).x_opt);
  }
}
BENCHMARK(MaximizeWork)->Arg(1)->Arg(100)->Arg(500);

void RatioSweep(benchmark::State& state) {
  supremacy::SweepSpec spec;
  spec.a_grid = {0.2, 0.3, 0.4, 0.5};
  spec.n_grid = {50};
  spec.lambda_grid = {0.0, 0.5, 1.0};
  spec.sigma_c_grid = {2.0};
  spec.driving = cycle::DrivingMode::sudden();
  spec.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(supremacy::sweep(spec).size());
  }
}
BENCHMARK(RatioSweep)->Arg(1)->Arg(0);  // serial vs machine parallelism

}  // namespace

BENCHMARK_MAIN();
