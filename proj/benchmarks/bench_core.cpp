// Microbenchmarks of the hot paths: transforms, multiplier operators and one
// full splitting step.

#include <benchmark/benchmark.h>

#include <numbers>

#include "zak/limitlab.hpp"
#include "zak/solver.hpp"

namespace {

using namespace zak;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SystemState make_state(std::size_t n) {
  DataRecipe r;
  r.seed = 1;
  r.n_modes = 3;
  r.eps_solenoidal = 0.3;
  r.kind = DataRecipe::Kind::ill_prepared;
  return gen_initial(r, make_grid(n, kTwoPi), AlphaParam(4.0));
}

void BM_to_spectral(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  VectorField phys = to_physical(s.u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_spectral(phys));
  }
}
BENCHMARK(BM_to_spectral)->Arg(32)->Arg(64);

void BM_project_Q(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_Q(s.u));
  }
}
BENCHMARK(BM_project_Q)->Arg(32)->Arg(64);

void BM_apply_UZ(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  const AlphaParam alpha(16.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_UZ(s.u, 1e-3, alpha));
  }
}
BENCHMARK(BM_apply_UZ)->Arg(32)->Arg(64);

void BM_wave_forced_frozen(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wave_forced_frozen(s.n, s.nt, s.n, 1e-3));
  }
}
BENCHMARK(BM_wave_forced_frozen)->Arg(32)->Arg(64);

void BM_step_zg(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  SolverParams p;
  p.alpha = AlphaParam(16.0);
  p.dt = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_zg(s, p));
  }
}
BENCHMARK(BM_step_zg)->Arg(16)->Arg(32);

void BM_step_zl(benchmark::State& state) {
  SystemState s = make_state(static_cast<std::size_t>(state.range(0)));
  s.u = project_Q(s.u);
  SolverParams p;
  p.alpha = AlphaParam(std::numeric_limits<double>::infinity());
  p.dt = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_zl(s, p));
  }
}
BENCHMARK(BM_step_zl)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
