#include <benchmark/benchmark.h>

#include <cmath>

#include "wavesplit/wavesplit.hpp"

using namespace wavesplit;

static void BM_Derivative(benchmark::State& state) {
  const Grid1D g = make_grid(40.0, static_cast<int>(state.range(0)));
  const ScalarField f = gaussian_pulse(g, 0.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

static void BM_ApplyM(benchmark::State& state) {
  const Grid1D g = make_grid(40.0, static_cast<int>(state.range(0)));
  const ScalarField f = ScalarField::sample(g, [](double x) { return 1.0 + 0.1 * std::tanh(x); });
  const ScalarField p = gaussian_pulse(g, -3.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_M(f, p));
}
BENCHMARK(BM_ApplyM)->Arg(1024)->Arg(4096);

static void BM_SolveAcoustic(benchmark::State& state) {
  const Grid1D g = make_grid(40.0, static_cast<int>(state.range(0)));
  AcousticParams p;
  p.delta1 = p.delta2 = 1e-3;
  p.beta = 2e-3;
  const StateVector s = pure_mode_state(p, Mode::right, gaussian_pulse(g, -5.0, 1.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_acoustic(s, 5.0));
}
BENCHMARK(BM_SolveAcoustic)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_SolveHyperbolic(benchmark::State& state) {
  const Grid1D g = make_grid(40.0, static_cast<int>(state.range(0)));
  const HyperbolicParams p{CoefficientProfile::constant(1.0, g),
                           CoefficientProfile({ProfileKind::gaussian_bump, 1.0, 1.0, 0.0, 2.0, 0.05}, g)};
  const StateVector s = pure_mode_state(p, Mode::right, gaussian_pulse(g, -8.0, 1.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_hyperbolic(s, 8.0));
}
BENCHMARK(BM_SolveHyperbolic)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SmoothingSpline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = 0.05 * static_cast<double>(i);
    y[i] = std::sin(t[i]) + 0.01 * std::cos(37.0 * t[i]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_smoothing_spline(t, y, 0.01, {}));
}
BENCHMARK(BM_SmoothingSpline)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_StringSeries(benchmark::State& state) {
  const Grid1D g = make_grid(51.2, 1024);
  const StateVector s = pure_mode_state(StringParams{1.0}, Mode::right, gaussian_pulse(g, -5.0, 1.0, 1.0));
  const auto times = uniform_times(0.0, 19.95, 0.05);
  for (auto _ : state)
    benchmark::DoNotOptimize(synthesize_string_series(s, 0.0, {0.05, 0.05}, times, 0.01, 1));
}
BENCHMARK(BM_StringSeries)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
