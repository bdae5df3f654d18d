#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wavesplit/observe.hpp"
#include "wavesplit/projectors.hpp"
#include "wavesplit/spline.hpp"

namespace wavesplit {

/// sqrt(sum_i sum_k phi_k(t_i)^2).
double discrete_norm(const MeasurementSeries& series);

/// Pointwise projection of a series. Hyperbolic systems use the scalar
/// f(x_obs) = sqrt(c/b) in place of M. Acoustic first-order D terms act on
/// time series through D -> -d/dt (right), +d/dt (left) computed by
/// regularized_derivative, and are dropped for the entropy projector.
MeasurementSeries project_series(const MeasurementSeries& series, Mode mode,
                                 const SystemParams& params,
                                 const SplineOptions& spline = {});

/// Scalar mode amplitude track: the first-row (v-row) value of the mode's
/// projection, or the rho-row for the entropy mode.
std::vector<double> mode_track(const MeasurementSeries& series, Mode mode,
                               const SystemParams& params, const SplineOptions& spline = {});

/// Standard deviation of the mode track under i.i.d. noise of the given sigma.
double mode_track_sigma(System system, Mode mode, const SystemParams& params, double x_obs,
                        double sigma);

/// Local propagation speed of a directed mode at x.
double mode_speed(const SystemParams& params, double x);

struct DetectionResult {
  double norm_total = 0.0;
  double residual_left = 0.0;
  double residual_right = 0.0;
  std::optional<double> residual_entropy;
  double delta_used = 0.0;
  double kappa = 3.0;
  std::set<Mode> detected;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
};

DetectionResult detect(const MeasurementSeries& series, const CalibrationResult& calibration,
                       double kappa, const SystemParams& params,
                       const SplineOptions& spline = {});

/// Spline of a directed mode's time track plus the characteristic mapping
/// to the initial spatial profile.
struct Waveform {
  Mode mode = Mode::right;
  SplineModel spline;
  double x_obs = 0.0;
  double speed = 1.0;

  /// F(xi) = track((x_obs - xi)/speed) for right waves,
  /// track((xi - x_obs)/speed) for left waves.
  double initial_profile(double xi) const;
  /// Range of xi covered by the observation window.
  std::pair<double, double> profile_range() const;
};

/// Throws PreconditionError if the mode was not detected or n < 5.
Waveform reconstruct_waveform(const MeasurementSeries& series, Mode mode,
                              const SystemParams& params, const DetectionResult& detection,
                              const SplineOptions& spline = {});

/// Earliest time where |spline| reaches threshold_frac * max|spline|.
double estimate_arrival(const SplineModel& waveform, double threshold_frac);

struct ErrorBudget {
  double from_speed = 0.0;
  double from_arrival = 0.0;
  double total = 0.0;
};

struct Localization {
  double position = 0.0;
  ErrorBudget budget;
};

Localization localize_source(double arrival, double t_zero, double speed, Direction direction,
                             double x_obs, double delta_speed, double delta_arrival);

/// Arrival-threshold geometry of a Gaussian: the crossing precedes the
/// pulse center by width * sqrt(2 ln(1/threshold_frac)).
double gaussian_threshold_offset(double width, double threshold_frac);

struct ModeWeights {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double i_value = 0.0;
  SplineModel fit;
};

/// Minimizes I = ||psi_+ - P_+ phi||_n over spline-parametrized right-subspace
/// members. Uses a vanishing smoothing weight so the fit is the plain
/// least-squares solution of the Euler equations.
ModeWeights mode_weights_functional(const MeasurementSeries& series, const SystemParams& params,
                                    const SplineOptions& spline = {});

struct DiagnosticsReport {
  DetectionResult detection;
  std::map<Mode, Waveform> waveforms;
  std::optional<Mode> primary_mode;
  std::optional<double> arrival_time;
  std::optional<double> source_position;
  ErrorBudget error_budget;
};

struct DiagnosticsOptions {
  double kappa = 3.0;
  SplineOptions spline;
  double threshold_frac = 0.05;
  double t_zero = 0.0;
  double delta_speed = 0.0;
  double delta_arrival = 0.0;
};

/// Detection, reconstruction of every detected directed mode, arrival and
/// source localization for the dominant one.
DiagnosticsReport diagnose(const MeasurementSeries& series, const CalibrationResult& calibration,
                           const SystemParams& params, const DiagnosticsOptions& options);

}  // namespace wavesplit
