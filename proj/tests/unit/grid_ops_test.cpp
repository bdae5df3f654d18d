#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavesplit/error.hpp"
#include "wavesplit/grid.hpp"
#include "wavesplit/profile.hpp"
#include "wavesplit/pseudodiff.hpp"
#include "wavesplit/spectral.hpp"

using namespace wavesplit;
constexpr double kPi = std::numbers::pi;

namespace {

ScalarField sine(const Grid1D& g) {
  return ScalarField::sample(g, [](double x) { return std::sin(x); });
}

}  // namespace

TEST(Grid, SpacingAndCoverage) {
  const Grid1D a = make_grid(2 * kPi, 64);
  EXPECT_DOUBLE_EQ(a.spacing(), 2 * kPi / 64);
  const Grid1D b = make_grid(40.0, 1024);
  EXPECT_DOUBLE_EQ(b.x(0), -20.0);
  EXPECT_DOUBLE_EQ(b.x(1023) + b.spacing(), 20.0);
  EXPECT_DOUBLE_EQ(b.spacing() * b.points(), b.length());
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(10.0, 7), PreconditionError);
  EXPECT_THROW(make_grid(10.0, 6), PreconditionError);
  EXPECT_THROW(make_grid(0.0, 64), PreconditionError);
  EXPECT_THROW(make_grid(-1.0, 64), PreconditionError);
}

TEST(ScalarField, RejectsNonFiniteValues) {
  const Grid1D g = make_grid(1.0, 8);
  std::vector<double> v(8, 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(ScalarField(g, v), PreconditionError);
  EXPECT_THROW(ScalarField(g, std::vector<double>(7, 0.0)), PreconditionError);
}

TEST(Derivative, SineGivesCosine) {
  const Grid1D g = make_grid(2 * kPi, 64);
  const ScalarField d = derivative(sine(g));
  const ScalarField c = ScalarField::sample(g, [](double x) { return std::cos(x); });
  EXPECT_LE(max_abs_difference(d, c), 1e-10);
}

TEST(Derivative, ConstantGivesZero) {
  const Grid1D g = make_grid(10.0, 128);
  EXPECT_LE(derivative(ScalarField::constant(g, 3.5)).max_abs(), 1e-14);
}

TEST(Derivative, GaussianMatchesAnalyticOracle) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField p = gaussian_pulse(g, -5.0, 1.0, 1.0);
  const ScalarField exact = ScalarField::sample(g, [](double x) {
    return -(x + 5.0) * std::exp(-0.5 * (x + 5.0) * (x + 5.0));
  });
  EXPECT_LE(max_abs_difference(derivative(p), exact), 1e-8);
}

TEST(Antiderivative, CosineGivesSine) {
  const Grid1D g = make_grid(2 * kPi, 64);
  const ScalarField c = ScalarField::sample(g, [](double x) { return std::cos(x); });
  EXPECT_LE(max_abs_difference(antiderivative(c), sine(g)), 1e-12);
}

TEST(Antiderivative, InvertsDerivativeUpToMean) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField p = gaussian_pulse(g, 2.0, 1.5, 0.7);
  ScalarField expect = p;
  expect += -p.mean();
  const ScalarField back = antiderivative(derivative(p));
  EXPECT_LE(max_abs_difference(back, expect), 1e-9);
  EXPECT_LE(std::abs(back.mean()), 1e-12 * back.max_abs());
  EXPECT_LE(max_abs_difference(derivative(back), derivative(p)), 1e-9);
}

TEST(Antiderivative, RejectsConstants) {
  const Grid1D g = make_grid(10.0, 64);
  EXPECT_THROW(antiderivative(ScalarField::constant(g, 1.0)), PreconditionError);
  EXPECT_THROW(antiderivative(gaussian_pulse(make_grid(40.0, 512), 0.0, 1.0, 1.0)), PreconditionError);
}

TEST(EdgeAnchoredPrimitive, IntegratesPulseWithNonzeroMean) {
  const Grid1D g = make_grid(40.0, 1024);
  const EdgeAnchoredPrimitive u(gaussian_pulse(g, 0.0, 1.0, 1.0));
  EXPECT_NEAR(u(g.left()), 0.0, 1e-14);
  EXPECT_NEAR(u(0.0), std::sqrt(2 * kPi) / 2, 1e-12);
  EXPECT_NEAR(u(1.3), std::sqrt(kPi / 2) * (1 + std::erf(1.3 / std::sqrt(2.0))), 1e-12);
}

TEST(Translate, ShiftsBandLimitedField) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField moved = translate(gaussian_pulse(g, -5.0, 1.0, 1.0), 3.3);
  EXPECT_LE(max_abs_difference(moved, gaussian_pulse(g, -1.7, 1.0, 1.0)), 1e-12);
}

TEST(ApplyM, ConstantProfileScalesZeroMeanFields) {
  const Grid1D g = make_grid(2 * kPi, 64);
  const ScalarField two = ScalarField::constant(g, 2.0);
  EXPECT_LE(max_abs_difference(apply_M(two, sine(g)), 2.0 * sine(g)), 1e-12);
  EXPECT_LE(max_abs_difference(apply_M_inv(two, sine(g)), 0.5 * sine(g)), 1e-12);
  const ScalarField one = ScalarField::constant(g, 1.0);
  const ScalarField c2 = ScalarField::sample(g, [](double x) { return std::cos(2 * x) + 0.3 * std::sin(5 * x); });
  EXPECT_LE(max_abs_difference(apply_M(one, c2), c2), 1e-12);
}

TEST(ApplyM, ConstantProfileScalesLocalizedPulses) {
  // Localized pulses carry a mean; kappa * g holds on them as well.
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField p = gaussian_pulse(g, 1.0, 1.0, 1.0);
  EXPECT_LE(max_abs_difference(apply_M(ScalarField::constant(g, 3.0), p), 3.0 * p), 1e-10);
}

TEST(ApplyM, MatchesCompositionOfAtomicOperations) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField f = ScalarField::sample(g, [](double x) { return 1.0 + 0.1 * std::tanh(x); });
  const ScalarField p = gaussian_pulse(g, -2.0, 1.0, 1.0);
  // D^-1 (f D g) with the constant fixed so that the mean is mean(f) mean(g).
  ScalarField oracle = antiderivative_of_fluctuation(f * derivative(p));
  oracle += f.mean() * p.mean();
  EXPECT_LE(max_abs_difference(apply_M(f, p), oracle), 1e-12);
  ScalarField fg = f * derivative(p);
  fg += -fg.mean();
  EXPECT_LE(max_abs_difference(derivative(apply_M(f, p)), fg), 1e-9);
}

TEST(ApplyM, RoundTripIsIdentity) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField f = ScalarField::sample(g, [](double x) { return 1.0 + 0.2 * std::exp(-x * x / 8); });
  const ScalarField p = gaussian_pulse(g, -3.0, 1.2, 0.8);
  EXPECT_LE(max_abs_difference(apply_M_inv(f, apply_M(f, p)), p), 1e-9);
  EXPECT_LE(max_abs_difference(apply_M(f, apply_M_inv(f, p)), p), 1e-9);
}

TEST(ApplyM, IsLinear) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField f = ScalarField::sample(g, [](double x) { return 2.0 + 0.1 * std::tanh(x / 2); });
  const ScalarField a = gaussian_pulse(g, -4.0, 1.0, 1.0);
  const ScalarField b = gaussian_pulse(g, 3.0, 2.0, 0.5);
  EXPECT_LE(max_abs_difference(apply_M(f, 2.0 * a + (-3.0) * b), 2.0 * apply_M(f, a) + (-3.0) * apply_M(f, b)), 1e-10);
  EXPECT_LE(max_abs_difference(derivative(2.0 * a + b), 2.0 * derivative(a) + derivative(b)), 1e-10);
}

TEST(GaussianPulse, PeakAndIntegral) {
  const Grid1D g = make_grid(40.0, 1024);
  const ScalarField p = gaussian_pulse(g, -5.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(p.max_abs(), 1.0);
  EXPECT_DOUBLE_EQ(p[static_cast<std::size_t>((-5.0 - g.left()) / g.spacing())], 1.0);
  const ScalarField q = gaussian_pulse(g, 1.0, 1.7, 2.5);
  EXPECT_NEAR(q.integral() / (2.5 * 1.7 * std::sqrt(2 * kPi)), 1.0, 1e-6);
}

TEST(GaussianPulse, RejectsUnderResolvedOrTouchingPulses) {
  const Grid1D g = make_grid(40.0, 1024);
  EXPECT_THROW(gaussian_pulse(g, 0.0, 2 * g.spacing(), 1.0), PreconditionError);
  EXPECT_THROW(gaussian_pulse(g, 17.0, 1.0, 1.0), PreconditionError);
}

TEST(CoefficientProfile, PresetsAndValidation) {
  const Grid1D g = make_grid(40.0, 1024);
  const CoefficientProfile ramp({ProfileKind::linear_ramp, 2.0, 1.0, 0.0, 10.0, 0.05}, g);
  EXPECT_DOUBLE_EQ(ramp(5.0), 2.0 * (1 + 0.05 * 0.5));
  EXPECT_DOUBLE_EQ(ramp.slope(0.0), 2.0 * 0.05 / 10.0);
  const CoefficientProfile bump({ProfileKind::gaussian_bump, 1.0, 1.0, 0.0, 2.0, 0.1}, g);
  EXPECT_DOUBLE_EQ(bump(0.0), 1.1);
  // Zero crossing violates positivity.
  EXPECT_THROW(CoefficientProfile({ProfileKind::tanh_step, 1.0, -20.0, 0.0, 1.0, 0.1}, g), PreconditionError);
  // Too steep for its epsilon.
  EXPECT_THROW(CoefficientProfile({ProfileKind::tanh_step, 1.0, 1.0, 0.0, 0.1, 0.1}, g), PreconditionError);
  EXPECT_THROW(CoefficientProfile({ProfileKind::constant, 1.0, 0.0, 0.0, 1.0, -0.1}, g), PreconditionError);
  EXPECT_EQ(profile_kind_from_string("gaussian_bump"), ProfileKind::gaussian_bump);
  EXPECT_THROW(profile_kind_from_string("spline"), PreconditionError);
}
