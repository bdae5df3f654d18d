#pragma once

#include <cstdint>
#include <vector>

#include "wavesplit/projectors.hpp"
#include "wavesplit/system.hpp"

namespace wavesplit {

struct Stencil {
  double dx = 0.0;
  double dt = 0.0;
};

/// Component samples at the observation point.
struct MeasurementSeries {
  System system = System::string;
  std::vector<double> times;
  /// components[k][i] = phi_{k+1}(t_i)
  std::vector<std::vector<double>> components;
  double x_obs = 0.0;
  Stencil stencil;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return times.size(); }
  std::size_t component_count() const { return components.size(); }
  double sample_step() const;
  void validate() const;
};

/// t_start + i * step for i = 0..n-1 with n = floor((t_end - t_start)/step + 1e-9) + 1.
std::vector<double> uniform_times(double t_start, double t_end, double step);

/// Independent N(0, sigma^2) draws, time-major then component, from seed.
std::vector<std::vector<double>> noise_draws(std::uint64_t seed, std::size_t components,
                                             std::size_t n, double sigma);

/// series + noise_draws(seed, ...); records sigma and seed.
MeasurementSeries add_noise(MeasurementSeries clean, double sigma, std::uint64_t seed);

/// Forward-difference string instrument: phi1 = c (u(x+dx) - u(x))/dx,
/// phi2 = -(u(t+dt) - u(t))/dt, with u = integral of v/c from the left edge.
MeasurementSeries synthesize_string_series(const StateVector& initial, double x_obs,
                                           const Stencil& stencil,
                                           const std::vector<double>& times, double sigma,
                                           std::uint64_t seed);

/// Samples every state component at x_obs (cubic interpolation off-grid).
MeasurementSeries synthesize_direct_series(const StateVector& initial, double x_obs,
                                           const std::vector<double>& times, double sigma,
                                           std::uint64_t seed);

/// Picks the instrument appropriate for the system: finite differences for
/// the string, direct sampling otherwise.
MeasurementSeries synthesize_series(const StateVector& initial, double x_obs,
                                    const Stencil& stencil, const std::vector<double>& times,
                                    double sigma, std::uint64_t seed);

struct ObservationSetup {
  double x_obs = 0.0;
  Stencil stencil;
  std::vector<double> times;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct CalibrationResult {
  double delta = 0.0;
  int trials = 0;
  double sigma_used = 0.0;
  Stencil stencil;
  /// Direction the calibration scenario travels in; delta is the norm of
  /// the opposite projection.
  Direction direction = Direction::right;
};

/// Runs `trials` seeded syntheses (seed + i) of a pure single-direction
/// scenario and returns delta = mean + 3 stddev of the off-mode residual.
CalibrationResult calibrate_delta(const StateVector& pure_initial, const ObservationSetup& setup,
                                  int trials);

/// Off-mode content of a state relative to its on-mode content, and the
/// dominant direction.
struct Purity {
  Direction direction = Direction::right;
  double off_mode_fraction = 0.0;
};
Purity mode_purity(const StateVector& state);

}  // namespace wavesplit
