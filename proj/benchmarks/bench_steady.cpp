#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wormsim/profile.hpp"
#include "wormsim/steady.hpp"

namespace {

using namespace wormsim;

void BM_SteadyTurn(benchmark::State& state) {
  const HydroParams p = reference_profile().params;
  for (auto _ : state) {
    SteadyTurn turn = steady_turn(p, {10.0, -5.0, 0.0, 0.0, true});
    benchmark::DoNotOptimize(turn);
  }
}
BENCHMARK(BM_SteadyTurn);

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) {
    CalibrationResult cal = calibrate(CalibrationTargets{});
    benchmark::DoNotOptimize(cal);
  }
}
BENCHMARK(BM_Calibrate);

void BM_TurnMap(benchmark::State& state) {
  const HydroParams p = reference_profile().params;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SweepGrid grid = sweep_turn_map(p, -10.0, 10.0, -10.0, 10.0, n);
    benchmark::DoNotOptimize(grid.speed);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_TurnMap)->Arg(21)->Arg(101)->Arg(201)
    ->Unit(benchmark::kMillisecond);

void BM_CircleFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    xs[i] = 2.0 + 0.8665 * std::cos(t);
    ys[i] = 3.0 + 0.8665 * std::sin(t);
  }
  for (auto _ : state) {
    CircleFit fit = fit_circle(xs, ys);
    benchmark::DoNotOptimize(fit);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CircleFit)->Arg(100)->Arg(3000);

}  // namespace
