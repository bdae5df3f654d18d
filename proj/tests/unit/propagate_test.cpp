#include <gtest/gtest.h>

#include <cmath>

#include "wavesplit/error.hpp"
#include "wavesplit/projectors.hpp"
#include "wavesplit/propagate.hpp"

using namespace wavesplit;

namespace {

const Grid1D kGrid = make_grid(40.0, 1024);
const Grid1D kWide = make_grid(80.0, 2048);

AcousticParams acoustic(double d1, double d2) {
  AcousticParams p;
  p.delta1 = d1;
  p.delta2 = d2;
  p.beta = d1 + d2;
  return p;
}

HyperbolicParams constant_hyper(double b, double c) {
  return HyperbolicParams{CoefficientProfile::constant(b, kGrid), CoefficientProfile::constant(c, kGrid)};
}

HyperbolicParams bump_c(double eps) {
  return HyperbolicParams{CoefficientProfile::constant(1.0, kGrid),
                          CoefficientProfile({ProfileKind::gaussian_bump, 1.0, 1.0, 0.0, 2.0, eps}, kGrid)};
}

// Sub-grid location of the maximum by a parabola through the top three samples.
double peak_location(const ScalarField& f) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[j]) j = i;
  const double a = f[j - 1], b = f[j], c = f[j + 1];
  return f.grid().x(j) + 0.5 * (a - c) / (a - 2 * b + c) * f.grid().spacing();
}

// Composite Simpson rule, test-side oracle for characteristic travel times.
template <class Fn>
double simpson(Fn&& fn, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST(SolveString, RightHalfPulseTranslates) {
  const ScalarField g = gaussian_pulse(kGrid, 0.0, 1.0, 1.0);
  const StateVector s(StringParams{1.5}, {g, ScalarField(kGrid)});
  const ModeDecomposition d = mode_decompose(solve_string(s, 4.0));
  EXPECT_LE(max_abs_difference(d.pi, gaussian_pulse(kGrid, 6.0, 1.0, 0.5)), 1e-12);
  EXPECT_LE(max_abs_difference(d.lambda, gaussian_pulse(kGrid, -6.0, 1.0, 0.5)), 1e-12);
}

TEST(SolveString, ZeroTimeIsIdentity) {
  const StateVector s(StringParams{1.0}, {gaussian_pulse(kGrid, 1, 1, 1), gaussian_pulse(kGrid, -2, 2, 0.3)});
  EXPECT_LE(max_abs_difference(solve_string(s, 0.0), s), 1e-15);
  EXPECT_THROW(solve_string(s, -1.0), PreconditionError);
}

TEST(SolveString, ConservesNorm) {
  const StateVector s(StringParams{1.0}, {gaussian_pulse(kWide, 0, 1, 1), gaussian_pulse(kWide, 0, 1, 0.4)});
  const double n0 = conserved_norm(s);
  EXPECT_NEAR(conserved_norm(solve_string(s, 5.0)) / n0, 1.0, 1e-10);
  EXPECT_NEAR(conserved_norm(solve_string(s, 10.0)) / n0, 1.0, 1e-10);
}

TEST(SolveString, KeepsPureModesPure) {
  const StateVector s = pure_mode_state(StringParams{1.0}, Mode::right, gaussian_pulse(kGrid, -5, 1, 1));
  EXPECT_LE(l2_norm(project(solve_string(s, 8.0), Mode::left)), 1e-10);
}

TEST(SolveString, DetectsWrapAround) {
  const StateVector s = pure_mode_state(StringParams{1.0}, Mode::right, gaussian_pulse(kGrid, 5, 1, 1));
  EXPECT_THROW(solve_string(s, 12.0), WrapAroundError);
}

TEST(SolveHyperbolic, UnitCoefficientsMatchString) {
  const ScalarField a = gaussian_pulse(kGrid, -3, 1, 1);
  const ScalarField b = gaussian_pulse(kGrid, 2, 1.5, -0.5);
  const StateVector h(constant_hyper(1, 1), {a, b});
  // u = Pi + Lambda and v = Pi - Lambda map onto the string (v, w) = (u, v).
  const StateVector s(StringParams{1.0}, {a, b});
  const StateVector hs = solve_hyperbolic(h, 5.0);
  const StateVector ss = solve_string(s, 5.0);
  EXPECT_LE(std::max(max_abs_difference(hs[0], ss[0]), max_abs_difference(hs[1], ss[1])), 1e-6);
}

TEST(SolveHyperbolic, SpeedIsGeometricMeanOfCoefficients) {
  const StateVector s = pure_mode_state(constant_hyper(4, 1), Mode::right, gaussian_pulse(kGrid, -5, 1, 1));
  const ModeDecomposition d = mode_decompose(solve_hyperbolic(s, 3.0));
  EXPECT_NEAR(peak_location(d.pi), 1.0, kGrid.spacing());
}

TEST(SolveHyperbolic, TraversalTimeMatchesQuadrature) {
  const HyperbolicParams p = bump_c(0.2);
  const double x1 = -8.0, x2 = 8.0;
  const double T = simpson([&](double x) { return 1.0 / std::sqrt(p.b(x) * p.c(x)); }, x1, x2, 4000);
  const StateVector s = pure_mode_state(p, Mode::right, gaussian_pulse(kGrid, x1, 0.5, 1.0));
  const ModeDecomposition d = mode_decompose(solve_hyperbolic(s, T));
  EXPECT_NEAR(peak_location(d.pi) - x1, x2 - x1, 1e-3 * (x2 - x1));
}

TEST(SolveHyperbolic, ConservesWeightedNorm) {
  // Narrow bump, so the pulse starts and ends in the homogeneous region.
  const HyperbolicParams p{CoefficientProfile::constant(1.0, kGrid),
                           CoefficientProfile({ProfileKind::gaussian_bump, 1.0, 1.0, 0.0, 1.0, 0.05}, kGrid)};
  const StateVector s = pure_mode_state(p, Mode::right, gaussian_pulse(kGrid, -8, 1, 1));
  const double n0 = conserved_norm(s);
  EXPECT_NEAR(conserved_norm(solve_hyperbolic(s, 14.0)) / n0, 1.0, 1e-3);
}

TEST(SolveHyperbolic, SolvesCompose) {
  const StateVector s = pure_mode_state(bump_c(0.1), Mode::right, gaussian_pulse(kGrid, -8, 1, 1));
  EXPECT_LE(max_abs_difference(solve_hyperbolic(solve_hyperbolic(s, 4.0), 6.0), solve_hyperbolic(s, 10.0)), 1e-4);
}

TEST(SolveSequence, MatchesIndependentSolves) {
  const StateVector s = pure_mode_state(bump_c(0.1), Mode::left, gaussian_pulse(kGrid, 6, 1, 1));
  const std::vector<double> times{0.0, 1.5, 1.5, 4.0, 9.0};
  const auto seq = solve_sequence(s, times);
  ASSERT_EQ(seq.size(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    EXPECT_LE(max_abs_difference(seq[i], solve_hyperbolic(s, times[i])), 1e-8) << times[i];
  EXPECT_THROW(solve_sequence(s, {2.0, 1.0}), PreconditionError);
}

TEST(SolveAcoustic, EntropyModeIsFrozenWithoutDissipation) {
  const ScalarField z(kGrid);
  const StateVector s(acoustic(0, 0), {z, z, gaussian_pulse(kGrid, 1, 1, 1)});
  EXPECT_LE(max_abs_difference(solve_acoustic(s, 7.0), s), 1e-12);
}

TEST(SolveAcoustic, RightPulseTranslatesWithoutDissipation) {
  const ScalarField g = gaussian_pulse(kGrid, -5, 1, 1);
  const StateVector s(acoustic(0, 0), {g, g, g});
  const ScalarField moved = gaussian_pulse(kGrid, 3, 1, 1);
  const StateVector out = solve_acoustic(s, 8.0);
  for (int i = 0; i < 3; ++i) EXPECT_LE(max_abs_difference(out[i], moved), 1e-8);
  EXPECT_LE(max_abs_difference(solve_acoustic(s, 0.0), s), 1e-14);
}

TEST(SolveAcoustic, SolvesCompose) {
  const StateVector s(acoustic(0.02, 0.01), {gaussian_pulse(kGrid, -2, 1, 1), gaussian_pulse(kGrid, 1, 1, 0.5),
                                             gaussian_pulse(kGrid, 0, 2, -1)});
  EXPECT_LE(max_abs_difference(solve_acoustic(solve_acoustic(s, 2.5), 3.5), solve_acoustic(s, 6.0)), 1e-8);
}

TEST(TrackNorm, AcousticEnergyConservedWithoutDissipation) {
  const StateVector s(acoustic(0, 0), {gaussian_pulse(kGrid, -2, 1, 1), gaussian_pulse(kGrid, 1, 1, 0.5),
                                       gaussian_pulse(kGrid, 0, 2, -1)});
  const EvolutionResult r = evolve(s, {0, 2, 4, 6, 8, 10});
  const auto norms = track_norm(r);
  for (double n : norms) EXPECT_NEAR(n / norms.front(), 1.0, 1e-8);
}

TEST(TrackNorm, AcousticEnergyDecaysWithDissipation) {
  const ScalarField g = gaussian_pulse(kGrid, -6, 1, 1);
  const StateVector s = pure_mode_state(acoustic(1e-3, 1e-3), Mode::right, g);
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(i);
  const EvolutionResult r = evolve(s, times);
  ASSERT_TRUE(r.energy_parts.has_value());
  for (std::size_t i = 1; i < times.size(); ++i)
    EXPECT_LT((*r.energy_parts)[i].acoustic, (*r.energy_parts)[i - 1].acoustic);
}

TEST(Evolve, RequiresIncreasingTimes) {
  const StateVector s(StringParams{1.0}, {gaussian_pulse(kGrid, 0, 1, 1), ScalarField(kGrid)});
  EXPECT_THROW(evolve(s, {1.0, 1.0}), PreconditionError);
  const EvolutionResult r = evolve(s, {0.0, 1.0, 2.0});
  EXPECT_EQ(r.states.size(), 3u);
  EXPECT_EQ(r.norms.size(), 3u);
  EXPECT_FALSE(r.energy_parts.has_value());
}

TEST(EntropyBalance, StaticEntropyStateHasNoResidual) {
  const ScalarField z(kGrid);
  const StateVector s(acoustic(0, 0), {z, z, gaussian_pulse(kGrid, 0, 1, 1)});
  const BalanceResidual b = entropy_balance_residual(evolve(s, {0, 0.5, 1.0, 1.5}));
  ASSERT_EQ(b.values.size(), 2u);
  for (double v : b.values) EXPECT_LE(v, 1e-10);
}

TEST(EntropyBalance, PureAcousticResidualIsFluxDivergence) {
  const StateVector s(acoustic(0, 0), {gaussian_pulse(kGrid, -3, 1, 1), gaussian_pulse(kGrid, -3, 1, 1),
                                       gaussian_pulse(kGrid, -3, 1, 1)});
  const BalanceResidual b = entropy_balance_residual(evolve(s, {0, 1, 2, 3}));
  ASSERT_EQ(b.times.size(), 2u);
  for (std::size_t i = 0; i < b.times.size(); ++i) {
    // p = v = g(x - t) so D(p v) = -2 (x - x0) g^2 with g a unit Gaussian.
    const double x0 = -3 + b.times[i];
    double peak = 0;
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
      const double y = kGrid.x(j) - x0;
      peak = std::max(peak, std::abs(2 * y * std::exp(-y * y)));
    }
    EXPECT_NEAR(b.values[i], peak, 1e-8);
  }
}

TEST(EntropyBalance, ConvergesUnderFrameRefinement) {
  const ScalarField z(kGrid);
  const StateVector s(acoustic(0.05, 0.05), {z, z, gaussian_pulse(kGrid, 0, 1, 1)});
  auto at_one = [&](double dt) {
    const BalanceResidual b = entropy_balance_residual(evolve(s, {1 - dt, 1, 1 + dt}));
    return b.values.front();
  };
  const double r1 = at_one(0.2), r2 = at_one(0.1), r3 = at_one(0.05);
  const double ratio = std::abs(r1 - r2) / std::abs(r2 - r3);
  EXPECT_NEAR(ratio, 4.0, 0.6);
  EXPECT_THROW(entropy_balance_residual(evolve(s, {0.0, 1.0})), PreconditionError);
}
