#include <benchmark/benchmark.h>

#include "wormsim/hydro.hpp"
#include "wormsim/integrate.hpp"
#include "wormsim/profile.hpp"

namespace {

using namespace wormsim;

void BM_TurnManeuver(benchmark::State& state) {
  const HydroParams p = reference_profile().params;
  const ReducedTurnModel model{p, {10.0, -5.0, 0.0, 0.0, true}};
  const std::vector<double> y0(ReducedTurnModel::state_size, 0.0);
  const double duration = static_cast<double>(state.range(0));
  for (auto _ : state) {
    Trajectory traj = integrate(model, y0, 0.0, duration);
    benchmark::DoNotOptimize(traj.states.back());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(duration * 100));
}
BENCHMARK(BM_TurnManeuver)->Arg(10)->Arg(60)->Arg(120)
    ->Unit(benchmark::kMillisecond);

void BM_FixedRk4Surge(benchmark::State& state) {
  const HydroParams p = reference_profile().params;
  const SurgeModel model{p, {0.3, 0.3, 0.0, 0.0, true}};
  const std::vector<double> y0(SurgeModel::state_size, 0.0);
  IntegratorConfig cfg;
  cfg.method = Method::fixed_rk4;
  cfg.h_init = 1e-3;
  for (auto _ : state) {
    Trajectory traj = integrate(model, y0, 0.0, 10.0, cfg);
    benchmark::DoNotOptimize(traj.states.back());
  }
}
BENCHMARK(BM_FixedRk4Surge)->Unit(benchmark::kMillisecond);

void BM_SingleStep(benchmark::State& state) {
  const HydroParams p = reference_profile().params;
  const HorizontalModel model{p, {10.0, -5.0, 0.0, 0.0, true}};
  const std::vector<double> y{0.0, 0.0, 0.1, 0.8, 0.05, 0.9};
  for (auto _ : state) {
    StepResult res = step_adaptive54(model, 0.0, y, 1e-2);
    benchmark::DoNotOptimize(res.y);
  }
}
BENCHMARK(BM_SingleStep);

}  // namespace
