#include <benchmark/benchmark.h>

#include "pdi/config.hpp"
#include "pdi/double_dressed.hpp"
#include "pdi/dressed.hpp"
#include "pdi/oracle.hpp"
#include "pdi/susceptibility.hpp"
#include "pdi/sweep.hpp"

namespace {

pdi::SystemParams working_point() {
  pdi::SystemParams p;
  p.Omega = 45;
  p.Delta = 2 * 45 * 0.43;
  p.G = 16;
  p.omega = 100;
  return p;
}

void BM_DeriveFrames(benchmark::State& state) {
  const auto p = working_point();
  for (auto _ : state) {
    const auto f = pdi::derive_dressed(p);
    benchmark::DoNotOptimize(pdi::derive_double_dressed(f, p));
  }
}
BENCHMARK(BM_DeriveFrames);

void BM_SteadyStateClosedForm(benchmark::State& state) {
  const auto f = pdi::derive_dressed(working_point());
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdi::steady_state_single(f));
  }
}
BENCHMARK(BM_SteadyStateClosedForm);

void BM_CollectiveInversion(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double x = state.range(1) == 0 ? 1.0 + 1e-9 : 0.7390261189;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdi::collective_inversion(x, N));
  }
}
BENCHMARK(BM_CollectiveInversion)->Args({50, 0})->Args({50, 1})->Args({1000, 1});

void BM_ChiClosedForm(benchmark::State& state) {
  const auto p = working_point();
  const auto f = pdi::derive_dressed(p);
  const auto g = pdi::derive_double_dressed(f, p);
  const auto grid = pdi::uniform_grid(-250, 250, static_cast<int>(state.range(0)));
  const double rz = pdi::collective_inversion(g.x, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdi::chi_closed_form(f, g, rz, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChiClosedForm)->Arg(10001);

void BM_DickeSteadyState(benchmark::State& state) {
  const auto p = working_point();
  const auto g = pdi::derive_double_dressed(pdi::derive_dressed(p), p);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto L = pdi::oracle::build_liouvillian_dicke(g, N);
    benchmark::DoNotOptimize(pdi::oracle::steady_state(L));
  }
}
BENCHMARK(BM_DickeSteadyState)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_RegressionSpectrum(benchmark::State& state) {
  const auto p = working_point();
  const auto f = pdi::derive_dressed(p);
  const auto g = pdi::derive_double_dressed(f, p);
  const auto grid = pdi::uniform_grid(-130, 130, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdi::oracle::regression_spectrum(g, f, grid));
  }
}
BENCHMARK(BM_RegressionSpectrum)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_InversionSweep(benchmark::State& state) {
  pdi::RunConfig cfg;
  cfg.mode = pdi::RunMode::InversionSweep;
  cfg.params = working_point();
  cfg.sweep_points = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdi::evaluate_run(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InversionSweep)->Arg(801)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
