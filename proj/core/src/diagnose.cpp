#include "wavesplit/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavesplit/error.hpp"

namespace wavesplit {

double discrete_norm(const MeasurementSeries& series) {
  double s = 0.0;
  for (const auto& c : series.components)
    for (double x : c) s += x * x;
  return std::sqrt(s);
}

namespace {

void require_matching(const MeasurementSeries& series, const SystemParams& params) {
  if (series.system != system_of(params)) {
    throw SystemMismatchError("series is " + std::string(to_string(series.system)) +
                              ", parameters are " + std::string(to_string(system_of(params))));
  }
  if (series.components.size() != component_count(series.system)) {
    throw PreconditionError("series component count does not match its system");
  }
}

double impedance_at(const HyperbolicParams& p, double x) { return std::sqrt(p.c(x) / p.b(x)); }

MeasurementSeries with_components(const MeasurementSeries& like,
                                  std::vector<std::vector<double>> comps) {
  MeasurementSeries out = like;
  out.components = std::move(comps);
  return out;
}

// Time derivatives of each component through the smoothing spline.
struct SeriesDerivatives {
  std::vector<std::vector<double>> d1, d2;
};

SeriesDerivatives series_derivatives(const MeasurementSeries& s, const SplineOptions& opts,
                                     bool second) {
  SeriesDerivatives d;
  for (const auto& c : s.components) {
    const SplineModel m = fit_smoothing_spline(s.times, c, s.noise_sigma, opts);
    std::vector<double> a(s.size()), b(s.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      a[i] = m.derivative(s.times[i], 1);
      if (second) b[i] = m.derivative(s.times[i], 2);
    }
    d.d1.push_back(std::move(a));
    d.d2.push_back(std::move(b));
  }
  return d;
}

}  // namespace

MeasurementSeries project_series(const MeasurementSeries& series, Mode mode,
                                 const SystemParams& params, const SplineOptions& spline) {
  require_matching(series, params);
  const std::size_t n = series.size();
  const auto& phi = series.components;
  const System sys = series.system;
  if (mode == Mode::entropy && sys != System::acoustic) {
    throw PreconditionError("entropy projection exists only for the acoustic system");
  }
  const double sg = mode == Mode::left ? -1.0 : 1.0;

  if (sys == System::string || sys == System::hyperbolic) {
    const double f =
        sys == System::string ? 1.0 : impedance_at(std::get<HyperbolicParams>(params), series.x_obs);
    std::vector<std::vector<double>> out(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      out[0][i] = 0.5 * (phi[0][i] + sg * phi[1][i] / f);
      out[1][i] = 0.5 * (sg * f * phi[0][i] + phi[1][i]);
    }
    return with_components(series, std::move(out));
  }

  const OperatorMatrix3 p = acoustic_projector(std::get<AcousticParams>(params), mode);
  bool first = false, second = false;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      first = first || p(r, c).coeff[1] != 0.0;
      second = second || p(r, c).coeff[2] != 0.0;
    }
  // Along a mode travelling with unit speed, D acts as -d/dt (right) or
  // +d/dt (left); the frozen entropy mode has no time dependence to exchange.
  const double dsub = mode == Mode::right ? -1.0 : (mode == Mode::left ? 1.0 : 0.0);
  const bool need = dsub != 0.0 && (first || second);
  const SeriesDerivatives d = need ? series_derivatives(series, spline, second) : SeriesDerivatives{};
  std::vector<std::vector<double>> out(3, std::vector<double>(n, 0.0));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto& e = p(r, c).coeff;
      for (std::size_t i = 0; i < n; ++i) {
        double v = e[0] * phi[c][i];
        if (need) v += e[1] * dsub * d.d1[c][i] + e[2] * d.d2[c][i];
        out[r][i] += v;
      }
    }
  }
  return with_components(series, std::move(out));
}

std::vector<double> mode_track(const MeasurementSeries& series, Mode mode,
                               const SystemParams& params, const SplineOptions& spline) {
  const MeasurementSeries p = project_series(series, mode, params, spline);
  return p.components[mode == Mode::entropy ? 2 : 0];
}

double mode_track_sigma(System system, Mode mode, const SystemParams& params, double x_obs,
                        double sigma) {
  switch (system) {
    case System::string: return sigma * std::sqrt(0.5);
    case System::hyperbolic: {
      const double f = impedance_at(std::get<HyperbolicParams>(params), x_obs);
      return 0.5 * sigma * std::sqrt(1.0 + 1.0 / (f * f));
    }
    case System::acoustic: {
      const OperatorMatrix3 p = acoustic_projector(std::get<AcousticParams>(params), mode);
      const int row = mode == Mode::entropy ? 2 : 0;
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += p(row, c).coeff[0] * p(row, c).coeff[0];
      return sigma * std::sqrt(s);
    }
  }
  throw PreconditionError("unknown system");
}

double mode_speed(const SystemParams& params, double x) {
  switch (system_of(params)) {
    case System::string: return std::get<StringParams>(params).c;
    case System::hyperbolic: return std::get<HyperbolicParams>(params).speed(x);
    case System::acoustic: return 1.0;
  }
  throw PreconditionError("unknown system");
}

DetectionResult detect(const MeasurementSeries& series, const CalibrationResult& calibration,
                       double kappa, const SystemParams& params, const SplineOptions& spline) {
  series.validate();
  require_matching(series, params);
  if (!(kappa > 0.0)) throw PreconditionError("kappa must be > 0");
  if (series.system == System::string &&
      (series.stencil.dx != calibration.stencil.dx || series.stencil.dt != calibration.stencil.dt)) {
    throw PreconditionError("series stencil does not match the calibration stencil");
  }
  DetectionResult r;
  r.kappa = kappa;
  r.delta_used = calibration.delta;
  r.norm_total = discrete_norm(series);
  if (r.norm_total == 0.0) return r;

  const MeasurementSeries right = project_series(series, Mode::right, params, spline);
  const MeasurementSeries left = project_series(series, Mode::left, params, spline);
  const double nr = discrete_norm(right);
  const double nl = discrete_norm(left);
  if (series.system == System::acoustic) {
    r.residual_left = nl;
    r.residual_right = nr;
    r.residual_entropy = discrete_norm(project_series(series, Mode::entropy, params, spline));
  } else {
    // phi - P+ phi and phi - P- phi, evaluated literally.
    const auto diff = [&](const MeasurementSeries& proj) {
      double s = 0.0;
      for (std::size_t k = 0; k < series.components.size(); ++k)
        for (std::size_t i = 0; i < series.size(); ++i) {
          const double d = series.components[k][i] - proj.components[k][i];
          s += d * d;
        }
      return std::sqrt(s);
    };
    r.residual_left = diff(right);
    r.residual_right = diff(left);
  }
  const double threshold = kappa * calibration.delta;
  if (r.residual_right > threshold) r.detected.insert(Mode::right);
  if (r.residual_left > threshold) r.detected.insert(Mode::left);
  if (r.residual_entropy && *r.residual_entropy > threshold) r.detected.insert(Mode::entropy);
  r.alpha_hat = nr / r.norm_total;
  r.beta_hat = nl / r.norm_total;
  return r;
}

double Waveform::initial_profile(double xi) const {
  if (mode == Mode::entropy || !(speed > 0.0)) {
    throw PreconditionError("initial profile exists only for travelling modes");
  }
  const double t = mode == Mode::right ? (x_obs - xi) / speed : (xi - x_obs) / speed;
  // Outside the observation window nothing was seen.
  if (t < spline.t_begin() || t > spline.t_end()) return 0.0;
  return spline(t);
}

std::pair<double, double> Waveform::profile_range() const {
  if (mode == Mode::right) {
    return {x_obs - speed * spline.t_end(), x_obs - speed * spline.t_begin()};
  }
  return {x_obs + speed * spline.t_begin(), x_obs + speed * spline.t_end()};
}

Waveform reconstruct_waveform(const MeasurementSeries& series, Mode mode,
                              const SystemParams& params, const DetectionResult& detection,
                              const SplineOptions& spline) {
  if (!detection.detected.contains(mode)) {
    throw PreconditionError("mode '" + std::string(to_string(mode)) + "' was not detected");
  }
  if (series.size() < 5) throw PreconditionError("reconstruction needs at least 5 samples");
  const std::vector<double> track = mode_track(series, mode, params, spline);
  const double s =
      mode_track_sigma(series.system, mode, params, series.x_obs, series.noise_sigma);
  Waveform w{mode, fit_smoothing_spline(series.times, track, s, spline), series.x_obs,
             mode == Mode::entropy ? 0.0 : mode_speed(params, series.x_obs)};
  return w;
}

double estimate_arrival(const SplineModel& waveform, double threshold_frac) {
  if (!(threshold_frac > 0.0 && threshold_frac <= 1.0)) {
    throw PreconditionError("threshold fraction must be in (0, 1]");
  }
  constexpr int kPerInterval = 16;
  const double t0 = waveform.t_begin();
  const double h = waveform.knot_step() / kPerInterval;
  const auto count = static_cast<std::size_t>(
      std::llround((waveform.t_end() - t0) / h));
  std::vector<double> ts(count + 1), a(count + 1);
  std::size_t best = 0;
  for (std::size_t j = 0; j <= count; ++j) {
    ts[j] = j == count ? waveform.t_end() : t0 + static_cast<double>(j) * h;
    a[j] = std::abs(waveform(ts[j]));
    if (a[j] > a[best]) best = j;
  }
  if (!(a[best] > 0.0)) throw PreconditionError("waveform is flat; no arrival");
  const double tol = waveform.knot_step() * 5e-4;

  if (threshold_frac == 1.0) {
    // Golden-section refinement of the peak.
    double lo = ts[best == 0 ? 0 : best - 1], hi = ts[std::min(best + 1, count)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    while (hi - lo > tol) {
      const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (std::abs(waveform(m1)) >= std::abs(waveform(m2))) hi = m2;
      else lo = m1;
    }
    return 0.5 * (lo + hi);
  }

  const double level = threshold_frac * a[best];
  std::size_t j = 0;
  while (a[j] < level) ++j;
  if (j == 0) return ts[0];
  double lo = ts[j - 1], hi = ts[j];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (std::abs(waveform(mid)) >= level) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

Localization localize_source(double arrival, double t_zero, double speed, Direction direction,
                             double x_obs, double delta_speed, double delta_arrival) {
  if (!(speed > 0.0)) throw PreconditionError("speed must be > 0");
  if (arrival < t_zero) {
    throw PreconditionError("arrival " + std::to_string(arrival) + " precedes t_zero " +
                            std::to_string(t_zero));
  }
  const double elapsed = arrival - t_zero;
  Localization l;
  l.position = direction == Direction::right ? x_obs - speed * elapsed : x_obs + speed * elapsed;
  l.budget.from_speed = std::abs(delta_speed) * elapsed;
  l.budget.from_arrival = speed * std::abs(delta_arrival);
  l.budget.total = l.budget.from_speed + l.budget.from_arrival;
  return l;
}

double gaussian_threshold_offset(double width, double threshold_frac) {
  if (!(threshold_frac > 0.0 && threshold_frac <= 1.0)) {
    throw PreconditionError("threshold fraction must be in (0, 1]");
  }
  return width * std::sqrt(2.0 * std::log(1.0 / threshold_frac));
}

ModeWeights mode_weights_functional(const MeasurementSeries& series, const SystemParams& params,
                                    const SplineOptions& spline) {
  series.validate();
  const MeasurementSeries right = project_series(series, Mode::right, params, spline);
  const MeasurementSeries left = project_series(series, Mode::left, params, spline);
  const double total = discrete_norm(series);

  // Right-subspace members are s(t) * e with e the pointwise right eigenvector.
  std::vector<double> e;
  switch (series.system) {
    case System::string: e = {1.0, 1.0}; break;
    case System::hyperbolic:
      e = {1.0, impedance_at(std::get<HyperbolicParams>(params), series.x_obs)};
      break;
    case System::acoustic: e = {1.0, 1.0, 1.0}; break;
  }
  ModeWeights w{0.0, 0.0, 0.0, fit_spline(series.times, right.components[0], 0.0, spline)};
  double s = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = w.fit(series.times[i]);
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double d = v * e[k] - right.components[k][i];
      s += d * d;
    }
  }
  w.i_value = std::sqrt(s);
  if (total > 0.0) {
    w.alpha_hat = discrete_norm(right) / total;
    w.beta_hat = discrete_norm(left) / total;
  }
  return w;
}

DiagnosticsReport diagnose(const MeasurementSeries& series, const CalibrationResult& calibration,
                           const SystemParams& params, const DiagnosticsOptions& options) {
  DiagnosticsReport rep;
  rep.detection = detect(series, calibration, options.kappa, params, options.spline);
  for (Mode m : {Mode::right, Mode::left}) {
    if (rep.detection.detected.contains(m)) {
      rep.waveforms.emplace(m, reconstruct_waveform(series, m, params, rep.detection, options.spline));
    }
  }
  const bool has_r = rep.waveforms.contains(Mode::right);
  const bool has_l = rep.waveforms.contains(Mode::left);
  if (has_r && has_l) {
    rep.primary_mode = rep.detection.alpha_hat >= rep.detection.beta_hat ? Mode::right : Mode::left;
  } else if (has_r) {
    rep.primary_mode = Mode::right;
  } else if (has_l) {
    rep.primary_mode = Mode::left;
  }
  if (rep.primary_mode) {
    const Waveform& w = rep.waveforms.at(*rep.primary_mode);
    rep.arrival_time = estimate_arrival(w.spline, options.threshold_frac);
    const Localization loc = localize_source(
        *rep.arrival_time, options.t_zero, w.speed,
        *rep.primary_mode == Mode::right ? Direction::right : Direction::left, series.x_obs,
        options.delta_speed, options.delta_arrival);
    rep.source_position = loc.position;
    rep.error_budget = loc.budget;
  }
  return rep;
}

}  // namespace wavesplit
