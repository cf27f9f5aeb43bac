#include <benchmark/benchmark.h>

#include "wormsim/gait.hpp"

namespace {

using namespace wormsim;

void BM_SimulateGait(benchmark::State& state) {
  GaitSpec spec;
  spec.n_segments = static_cast<int>(state.range(0));
  spec.k_modules = 1;
  spec.n_anchor = 1;
  spec.n_relax = 1;
  spec.mu_cycles = static_cast<int>(state.range(1));
  for (auto _ : state) {
    GaitTrajectory traj = simulate_gait(spec);
    benchmark::DoNotOptimize(traj.head_position);
  }
  state.SetItemsProcessed(state.iterations() * spec.mu_cycles *
                          spec.steps_per_cycle());
}
BENCHMARK(BM_SimulateGait)
    ->Args({6, 10})
    ->Args({12, 10})
    ->Args({12, 1000})
    ->Unit(benchmark::kMicrosecond);

void BM_WaveState(benchmark::State& state) {
  GaitSpec spec;
  spec.n_segments = 12;
  spec.n_anchor = 2;
  spec.n_relax = 2;
  long step = 0;
  for (auto _ : state) {
    auto phases = wave_state(spec, step++);
    benchmark::DoNotOptimize(phases);
  }
}
BENCHMARK(BM_WaveState);

}  // namespace
