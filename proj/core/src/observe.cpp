#include "wavesplit/observe.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wavesplit/diagnose.hpp"
#include "wavesplit/error.hpp"
#include "wavesplit/propagate.hpp"
#include "wavesplit/spectral.hpp"

namespace wavesplit {

double MeasurementSeries::sample_step() const {
  if (times.size() < 2) throw PreconditionError("series needs at least 2 samples");
  return times[1] - times[0];
}

void MeasurementSeries::validate() const {
  if (times.size() < 2) throw PreconditionError("series needs at least 2 samples");
  if (components.size() != wavesplit::component_count(system)) {
    throw PreconditionError("series has " + std::to_string(components.size()) +
                            " components, system needs " +
                            std::to_string(wavesplit::component_count(system)));
  }
  for (const auto& c : components) {
    if (c.size() != times.size()) throw PreconditionError("component length != time count");
  }
  const double step = sample_step();
  if (!(step > 0.0)) throw PreconditionError("series times must increase");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double expect = times[0] + static_cast<double>(i) * step;
    if (std::abs(times[i] - expect) > 1e-12 * std::max(1.0, std::abs(expect)) + 1e-9 * step) {
      throw PreconditionError("series times are not uniform");
    }
  }
  if (system == System::string && !(stencil.dx > 0.0 && stencil.dt > 0.0)) {
    throw PreconditionError("string series needs a positive stencil");
  }
  if (noise_sigma < 0.0) throw PreconditionError("noise sigma must be >= 0");
}

std::vector<double> uniform_times(double t_start, double t_end, double step) {
  if (!(step > 0.0)) throw PreconditionError("time step must be > 0");
  if (!(t_end >= t_start)) throw PreconditionError("t_end must be >= t_start");
  const auto n = static_cast<std::size_t>(std::floor((t_end - t_start) / step + 1e-9)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = t_start + static_cast<double>(i) * step;
  return t;
}

std::vector<std::vector<double>> noise_draws(std::uint64_t seed, std::size_t components,
                                             std::size_t n, double sigma) {
  if (sigma < 0.0) throw PreconditionError("noise sigma must be >= 0");
  std::vector<std::vector<double>> d(components, std::vector<double>(n, 0.0));
  if (sigma == 0.0) return d;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < components; ++k) d[k][i] = normal(rng);
  return d;
}

MeasurementSeries add_noise(MeasurementSeries s, double sigma, std::uint64_t seed) {
  const auto d = noise_draws(seed, s.components.size(), s.times.size(), sigma);
  for (std::size_t k = 0; k < d.size(); ++k)
    for (std::size_t i = 0; i < s.times.size(); ++i) s.components[k][i] += d[k][i];
  s.noise_sigma = sigma;
  s.seed = seed;
  return s;
}

namespace {

void require_observable(const Grid1D& g, double x) {
  if (x < g.left() || x >= g.left() + g.length()) {
    throw PreconditionError("observation point " + std::to_string(x) + " lies outside the domain");
  }
}

// Displacement u(x) = integral of v/c from the quiescent left edge.
EdgeAnchoredPrimitive displacement(const StateVector& s) {
  return EdgeAnchoredPrimitive((1.0 / s.string_params().c) * s[0]);
}

}  // namespace

MeasurementSeries synthesize_string_series(const StateVector& initial, double x_obs,
                                           const Stencil& stencil,
                                           const std::vector<double>& times, double sigma,
                                           std::uint64_t seed) {
  require_system(initial, System::string, "synthesize_string_series");
  const Grid1D& g = initial.grid();
  if (!(stencil.dx > 0.0 && stencil.dt > 0.0)) {
    throw PreconditionError("stencil dx and dt must be > 0");
  }
  if (stencil.dx < g.spacing() * (1.0 - 1e-12)) {
    throw PreconditionError("stencil dx is finer than the simulation grid spacing");
  }
  require_observable(g, x_obs);
  require_observable(g, x_obs + stencil.dx);
  const double c = initial.string_params().c;

  MeasurementSeries s;
  s.system = System::string;
  s.times = times;
  s.x_obs = x_obs;
  s.stencil = stencil;
  s.components.assign(2, std::vector<double>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto u_now = displacement(solve_string(initial, times[i]));
    const auto u_next = displacement(solve_string(initial, times[i] + stencil.dt));
    const double u0 = u_now(x_obs);
    s.components[0][i] = c * (u_now(x_obs + stencil.dx) - u0) / stencil.dx;
    s.components[1][i] = -(u_next(x_obs) - u0) / stencil.dt;
  }
  s.validate();
  return add_noise(std::move(s), sigma, seed);
}

MeasurementSeries synthesize_direct_series(const StateVector& initial, double x_obs,
                                           const std::vector<double>& times, double sigma,
                                           std::uint64_t seed) {
  require_observable(initial.grid(), x_obs);
  MeasurementSeries s;
  s.system = initial.system();
  s.times = times;
  s.x_obs = x_obs;
  s.components.assign(initial.size(), std::vector<double>(times.size()));
  const std::vector<StateVector> states = solve_sequence(initial, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const StateVector& st = states[i];
    for (std::size_t k = 0; k < st.size(); ++k) {
      s.components[k][i] = interpolate_cubic(st[k], x_obs);
    }
  }
  s.validate();
  return add_noise(std::move(s), sigma, seed);
}

MeasurementSeries synthesize_series(const StateVector& initial, double x_obs,
                                    const Stencil& stencil, const std::vector<double>& times,
                                    double sigma, std::uint64_t seed) {
  if (initial.system() == System::string) {
    return synthesize_string_series(initial, x_obs, stencil, times, sigma, seed);
  }
  return synthesize_direct_series(initial, x_obs, times, sigma, seed);
}

Purity mode_purity(const StateVector& state) {
  const ModeDecomposition d = mode_decompose(state);
  double right = 0.0, left = 0.0, other = 0.0;
  if (d.system() == System::acoustic) {
    right = l2_norm(d.parts[0]);
    left = l2_norm(d.parts[1]);
    other = l2_norm(d.parts[2]);
  } else {
    right = d.pi.l2_norm();
    left = d.lambda.l2_norm();
  }
  Purity p;
  p.direction = right >= left ? Direction::right : Direction::left;
  const double on = std::max(right, left);
  const double off = std::min(right, left) + other;
  p.off_mode_fraction = on > 0.0 ? off / on : 0.0;
  return p;
}

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
    else carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

CalibrationResult calibrate_delta(const StateVector& pure_initial, const ObservationSetup& setup,
                                  int trials) {
  if (trials < 10) throw PreconditionError("calibration needs at least 10 trials");
  const Purity purity = mode_purity(pure_initial);
  double tol = 1e-10;
  if (pure_initial.system() == System::acoustic) {
    tol += 10.0 * idempotency_residual(pure_initial.params(), pure_initial.grid());
  }
  if (purity.off_mode_fraction > tol) {
    throw PreconditionError("calibration scenario is not a pure single-direction wave (off-mode "
                            "fraction " + std::to_string(purity.off_mode_fraction) + ")");
  }
  const MeasurementSeries clean =
      synthesize_series(pure_initial, setup.x_obs, setup.stencil, setup.times, 0.0, setup.seed);
  const Mode off = purity.direction == Direction::right ? Mode::left : Mode::right;

  std::vector<double> r(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    const MeasurementSeries noisy =
        setup.sigma > 0.0 ? add_noise(clean, setup.sigma, setup.seed + static_cast<std::uint64_t>(i))
                          : clean;
    r[static_cast<std::size_t>(i)] =
        discrete_norm(project_series(noisy, off, pure_initial.params()));
  }
  CompensatedSum s;
  for (double x : r) s.add(x);
  const double mean = s.value() / trials;
  CompensatedSum v;
  for (double x : r) v.add((x - mean) * (x - mean));
  const double stddev = std::sqrt(v.value() / (trials - 1));

  CalibrationResult out;
  out.delta = mean + 3.0 * stddev;
  out.trials = trials;
  out.sigma_used = setup.sigma;
  out.stencil = setup.stencil;
  out.direction = purity.direction;
  return out;
}

}  // namespace wavesplit
