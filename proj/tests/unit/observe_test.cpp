#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "wavesplit/error.hpp"
#include "wavesplit/observe.hpp"
#include "wavesplit/projectors.hpp"
#include "wavesplit/propagate.hpp"

using namespace wavesplit;

namespace {

const Grid1D kFine = make_grid(51.2, 2048);
const Grid1D kGrid = make_grid(40.0, 1024);

StateVector right_string(const Grid1D& g) {
  return pure_mode_state(StringParams{1.0}, Mode::right, gaussian_pulse(g, -5, 1, 1));
}

StateVector right_hyperbolic() {
  const HyperbolicParams p{CoefficientProfile::constant(1.0, kGrid), CoefficientProfile::constant(1.0, kGrid)};
  return pure_mode_state(p, Mode::right, gaussian_pulse(kGrid, -5, 1, 1));
}

double max_component_gap(const MeasurementSeries& s) {
  double m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) m = std::max(m, std::abs(s.components[0][i] - s.components[1][i]));
  return m;
}

ObservationSetup setup(double dx, double dt, double sigma) {
  return ObservationSetup{0.0, Stencil{dx, dt}, uniform_times(0.0, 10.0, dt), sigma, 7};
}

}  // namespace

TEST(UniformTimes, CountAndSpacing) {
  const auto t = uniform_times(0.0, 19.95, 0.05);
  ASSERT_EQ(t.size(), 400u);
  EXPECT_DOUBLE_EQ(t[399], 399 * 0.05);
}

TEST(StringSeries, ComponentsCoincideForRightWaveInFineStencilLimit) {
  const StateVector s = right_string(kFine);
  const auto times = uniform_times(0.0, 10.0, 0.05);
  const double coarse = max_component_gap(synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.0, 1));
  const double fine = max_component_gap(synthesize_string_series(s, 0.0, {0.025, 0.025}, times, 0.0, 1));
  EXPECT_LT(fine, coarse / 3.0);
  EXPECT_LT(fine, 0.02);
}

TEST(StringSeries, StaticStringGivesZeros) {
  const StateVector s(StringParams{1.0}, {ScalarField(kGrid), ScalarField(kGrid)});
  const MeasurementSeries m = synthesize_string_series(s, 0.0, {0.1, 0.1}, uniform_times(0, 5, 0.1), 0.0, 1);
  for (const auto& c : m.components)
    for (double v : c) EXPECT_EQ(v, 0.0);
}

TEST(StringSeries, SeededNoiseIsReproducible) {
  const StateVector s = right_string(kGrid);
  const auto times = uniform_times(0.0, 10.0, 0.1);
  const MeasurementSeries a = synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.01, 42);
  const MeasurementSeries b = synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.01, 42);
  EXPECT_EQ(a.components, b.components);
  const MeasurementSeries c = synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.01, 43);
  EXPECT_NE(a.components, c.components);
}

TEST(StringSeries, RejectsStencilFinerThanGrid) {
  const StateVector s = right_string(kGrid);
  EXPECT_THROW(synthesize_string_series(s, 0.0, {0.01, 0.1}, uniform_times(0, 5, 0.1), 0.0, 1), PreconditionError);
  EXPECT_THROW(synthesize_string_series(s, 25.0, {0.1, 0.1}, uniform_times(0, 5, 0.1), 0.0, 1), PreconditionError);
}

TEST(NoisySeries, DiffersFromCleanByExactlyTheDraw) {
  const StateVector s = right_string(kGrid);
  const auto times = uniform_times(0.0, 10.0, 0.1);
  const MeasurementSeries clean = synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.0, 5);
  const MeasurementSeries noisy = synthesize_string_series(s, 0.0, {0.1, 0.1}, times, 0.02, 5);
  const auto draw = noise_draws(5, 2, times.size(), 0.02);
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_EQ(noisy.components[k][i], clean.components[k][i] + draw[k][i]);
      // Subtraction recovers the clean value up to the rounding of one addition.
      const double ulp = std::ldexp(std::numeric_limits<double>::epsilon(),
                                    std::ilogb(std::abs(noisy.components[k][i]) + 1e-300));
      EXPECT_LE(std::abs(noisy.components[k][i] - draw[k][i] - clean.components[k][i]), ulp);
    }
  EXPECT_EQ(noisy.noise_sigma, 0.02);
  EXPECT_EQ(noisy.seed, 5u);
}

TEST(NoiseDraws, SampleVarianceMatchesSigma) {
  const double sigma = 0.03;
  const auto d = noise_draws(2024, 2, 5000, sigma);
  double sum = 0, sq = 0;
  std::size_t n = 0;
  for (const auto& c : d)
    for (double v : c) {
      sum += v;
      sq += v * v;
      ++n;
    }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(var / (sigma * sigma), 1.0, 0.05);
  for (const auto& c : noise_draws(1, 3, 10, 0.0))
    for (double v : c) EXPECT_EQ(v, 0.0);
}

TEST(DirectSeries, ReproducesInterpolatedTruth) {
  const StateVector s = right_hyperbolic();
  const auto times = uniform_times(0.0, 4.0, 0.5);
  const MeasurementSeries m = synthesize_direct_series(s, 0.37, times, 0.0, 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const StateVector truth = solve(s, times[i]);
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(m.components[k][i], interpolate_cubic(truth[k], 0.37), 1e-8);
  }
}

TEST(DirectSeries, AcousticSeriesHasThreeComponents) {
  AcousticParams p;
  const StateVector s = pure_mode_state(p, Mode::right, gaussian_pulse(kGrid, -5, 1, 1));
  const MeasurementSeries m = synthesize_series(s, 0.0, {}, uniform_times(0, 10, 0.1), 0.0, 1);
  EXPECT_EQ(m.component_count(), 3u);
  EXPECT_EQ(m.system, System::acoustic);
  EXPECT_NO_THROW(m.validate());
}

TEST(SeriesValidation, RejectsNonUniformTimes) {
  MeasurementSeries m;
  m.system = System::hyperbolic;
  m.times = {0.0, 0.1, 0.25};
  m.components = {{0, 0, 0}, {0, 0, 0}};
  EXPECT_THROW(m.validate(), PreconditionError);
  m.times = {0.0, 0.1, 0.2};
  EXPECT_NO_THROW(m.validate());
  m.components.pop_back();
  EXPECT_THROW(m.validate(), PreconditionError);
}

TEST(Calibrate, ExactSamplerHasNoBaseline) {
  const CalibrationResult c = calibrate_delta(right_hyperbolic(), setup(0.05, 0.05, 0.0), 10);
  EXPECT_LE(c.delta, 1e-10);
  EXPECT_EQ(c.direction, Direction::right);
  EXPECT_EQ(c.trials, 10);
}

TEST(Calibrate, StencilBaselineIsFirstOrder) {
  const StateVector s = right_string(kFine);
  const double a = calibrate_delta(s, setup(0.1, 0.1, 0.0), 10).delta;
  const double b = calibrate_delta(s, setup(0.05, 0.05, 0.0), 10).delta;
  EXPECT_GT(b, 0.0);
  EXPECT_NEAR(a / b, 2.0, 0.6);
}

TEST(Calibrate, NoiseBaselineIsLinearInSigma) {
  const StateVector s = right_hyperbolic();
  ObservationSetup st{0.0, {}, uniform_times(0.0, 9.9, 0.1), 0.01, 3};
  ASSERT_EQ(st.times.size(), 100u);
  const double a = calibrate_delta(s, st, 50).delta;
  st.sigma = 0.02;
  const double b = calibrate_delta(s, st, 50).delta;
  EXPECT_NEAR(b / a, 2.0, 0.4);
  // The left projection of pure noise has about sigma * sqrt(n) norm.
  EXPECT_GT(a, 0.5 * 0.01 * std::sqrt(100.0));
}

TEST(Calibrate, RejectsImpureScenariosAndFewTrials) {
  const HyperbolicParams p{CoefficientProfile::constant(1.0, kGrid), CoefficientProfile::constant(1.0, kGrid)};
  const StateVector mixed = pure_mode_state(p, Mode::right, gaussian_pulse(kGrid, -5, 1, 1)) +
                            pure_mode_state(p, Mode::left, gaussian_pulse(kGrid, 5, 1, 0.2));
  EXPECT_THROW(calibrate_delta(mixed, setup(0.05, 0.05, 0.0), 10), PreconditionError);
  EXPECT_THROW(calibrate_delta(right_hyperbolic(), setup(0.05, 0.05, 0.0), 9), PreconditionError);
}

TEST(ModePurity, ReportsDirectionAndFraction) {
  const Purity p = mode_purity(right_string(kGrid));
  EXPECT_EQ(p.direction, Direction::right);
  EXPECT_LE(p.off_mode_fraction, 1e-14);
  const StateVector left = pure_mode_state(StringParams{1.0}, Mode::left, gaussian_pulse(kGrid, 5, 1, 1));
  EXPECT_EQ(mode_purity(left).direction, Direction::left);
}
