#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "output.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace wavesplit::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json tolerances() {
  return {{"significant_support_rel", 1e-12},
          {"calibration_purity", 1e-10},
          {"characteristic_step_factor", 0.1},
          {"discrepancy_log10_lambda", {-12.0, 8.0}},
          {"discrepancy_bisection_steps", 60},
          {"arrival_bisection_rel_knot_step", 5e-4},
          {"calibration_statistic", "mean + 3 stddev"},
          {"guard_band_widths", 2.0}};
}

json manifest(const std::string& command, const ScenarioConfig& c, json arguments) {
  json m;
  m["tool"] = "wavesplit";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["arguments"] = std::move(arguments);
  m["config"] = to_json(c);
  m["tolerances"] = tolerances();
  return m;
}

void finish(StagedOutput& out, json m) {
  m["outputs"] = out.files();
  out.write_json("manifest.json", m);
  out.commit();
}

std::vector<std::string> component_names(System s) {
  switch (s) {
    case System::string: return {"v", "w"};
    case System::hyperbolic: return {"u", "v"};
    case System::acoustic: return {"v", "p", "rho"};
  }
  return {};
}

std::string series_csv(const MeasurementSeries& s) {
  std::vector<std::string> header{"t"};
  std::vector<std::vector<double>> cols{s.times};
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    header.push_back("phi" + std::to_string(k + 1));
    cols.push_back(s.components[k]);
  }
  return format_csv(header, cols);
}

json number_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json spline_json(const Waveform& w) {
  return {{"order", w.spline.order()},           {"lambda_reg", w.spline.lambda_reg()},
          {"speed", w.speed},                    {"x_obs", w.x_obs},
          {"knots", w.spline.knots()},           {"coefficients", w.spline.coefficients()}};
}

Direction single_direction(const ScenarioConfig& c) {
  const Mode m = c.pulses.front().mode;
  for (const auto& p : c.pulses) {
    if (p.mode != m || m == Mode::entropy) {
      throw ConfigError("pulses: calibration needs a pure single-direction scenario (all right or all left)");
    }
  }
  return m == Mode::right ? Direction::right : Direction::left;
}

json calibration_json(const ScenarioConfig& c, const CalibrationResult& r) {
  return {{"system", std::string(to_string(c.system))},
          {"delta", r.delta},
          {"trials", r.trials},
          {"sigma", r.sigma_used},
          {"seed", c.observation.seed},
          {"direction", r.direction == Direction::right ? "right" : "left"},
          {"x_obs", c.observation.x_obs},
          {"sample_step", c.observation.step()},
          {"stencil", {{"dx", r.stencil.dx}, {"dt", r.stencil.dt}}}};
}

CalibrationResult run_calibration(const ScenarioConfig& c, int trials) {
  if (trials < 10) throw ConfigError("--trials: at least 10 trials are required");
  single_direction(c);
  return calibrate_delta(c.initial_state(), c.observation_setup(), trials);
}

CalibrationResult read_calibration(const fs::path& file, const ScenarioConfig& c) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read calibration file '" + file.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.contains("tool") && j.contains("calibration")) j = j["calibration"];
    CalibrationResult r;
    r.delta = j.at("delta").get<double>();
    r.trials = j.at("trials").get<int>();
    r.sigma_used = j.at("sigma").get<double>();
    r.stencil = {j.at("stencil").at("dx").get<double>(), j.at("stencil").at("dt").get<double>()};
    r.direction = j.at("direction").get<std::string>() == "left" ? Direction::left : Direction::right;
    if (j.at("system").get<std::string>() != to_string(c.system)) {
      throw PreconditionError("calibration was made for system '" + j.at("system").get<std::string>() + "'");
    }
    if (r.stencil.dx != c.observation.dx || r.stencil.dt != c.observation.dt) {
      throw PreconditionError("calibration stencil does not match the observation stencil");
    }
    if (r.sigma_used != c.observation.noise_sigma) {
      throw PreconditionError("calibration noise sigma does not match the observation noise sigma");
    }
    if (j.contains("sample_step") && j.at("sample_step").get<double>() != c.observation.step()) {
      throw PreconditionError("calibration sample step does not match the observation");
    }
    if (!(r.delta >= 0.0)) throw ConfigError(file.string() + ": delta must be >= 0");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(file.string() + ": malformed calibration file (" + e.what() + ")");
  }
}

struct Pipeline {
  MeasurementSeries series;
  DiagnosticsReport report;
  ModeWeights weights;
};

Pipeline run_pipeline(const ScenarioConfig& c, const CalibrationResult& cal) {
  const auto& ob = c.observation;
  const StateVector initial = c.initial_state();
  MeasurementSeries series = synthesize_series(initial, ob.x_obs, c.stencil(), c.observation_times(),
                                               ob.noise_sigma, ob.seed);
  DiagnosticsReport report = diagnose(series, cal, c.params(), c.diagnostics_options());
  ModeWeights weights = mode_weights_functional(series, c.params(), c.spline_options());
  return {std::move(series), std::move(report), std::move(weights)};
}

json report_json(const Pipeline& p) {
  const DetectionResult& d = p.report.detection;
  json j;
  j["norm_total"] = d.norm_total;
  j["residual_left"] = d.residual_left;
  j["residual_right"] = d.residual_right;
  if (d.residual_entropy) j["residual_entropy"] = *d.residual_entropy;
  j["delta_used"] = d.delta_used;
  j["kappa"] = d.kappa;
  j["detected"] = json::array();
  for (Mode m : d.detected) j["detected"].push_back(std::string(to_string(m)));
  j["weights"] = {{"alpha_hat", d.alpha_hat}, {"beta_hat", d.beta_hat}};
  j["i_value"] = p.weights.i_value;
  j["primary_mode"] = p.report.primary_mode ? json(std::string(to_string(*p.report.primary_mode))) : json(nullptr);
  j["waveform"] = json::object();
  for (const auto& [m, w] : p.report.waveforms) j["waveform"][std::string(to_string(m))] = spline_json(w);
  j["arrival_time"] = number_or_null(p.report.arrival_time);
  j["source_position"] = number_or_null(p.report.source_position);
  j["error_budget"] = {{"from_speed", p.report.error_budget.from_speed},
                       {"from_arrival", p.report.error_budget.from_arrival},
                       {"total", p.report.error_budget.total}};
  return j;
}

std::string waveform_csv(const Pipeline& p) {
  std::vector<std::string> header{"t"};
  std::vector<std::vector<double>> cols{p.series.times};
  for (const auto& [m, w] : p.report.waveforms) {
    header.emplace_back(to_string(m));
    std::vector<double> v;
    for (double t : p.series.times) v.push_back(w.spline(t));
    cols.push_back(std::move(v));
  }
  return format_csv(header, cols);
}

void write_plots(StagedOutput& out, const ScenarioConfig& c, const Pipeline& p) {
  const SystemParams params = c.params();
  std::vector<std::string> header{"t"};
  std::vector<std::vector<double>> cols{p.series.times};
  for (Mode m : {Mode::right, Mode::left}) {
    const MeasurementSeries proj = project_series(p.series, m, params, c.spline_options());
    for (std::size_t k = 0; k < proj.components.size(); ++k) {
      header.push_back(std::string(to_string(m)) + "_phi" + std::to_string(k + 1));
      cols.push_back(proj.components[k]);
    }
  }
  out.write("plots/series.csv", series_csv(p.series));
  out.write("plots/projections.csv", format_csv(header, cols));

  std::string script =
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set terminal pngcairo size 1000,700\n"
      "set output 'series.png'\n"
      "plot for [k=2:*] 'series.csv' using 1:k with lines\n"
      "set output 'projections.png'\n"
      "plot for [k=2:*] 'projections.csv' using 1:k with lines\n";
  if (p.report.primary_mode) {
    const Mode m = *p.report.primary_mode;
    const Waveform& w = p.report.waveforms.at(m);
    const ModeDecomposition d = mode_decompose(c.initial_state());
    const ScalarField& truth = m == Mode::right ? d.pi : d.lambda;
    const auto [lo, hi] = w.profile_range();
    std::vector<double> xi, rec, tru;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      const double x = truth.grid().x(j);
      if (x < lo || x > hi) continue;
      xi.push_back(x);
      rec.push_back(w.initial_profile(x));
      tru.push_back(truth[j]);
    }
    out.write("plots/reconstruction.csv", format_csv({"xi", "reconstructed", "truth"}, {xi, rec, tru}));
    script +=
        "set output 'reconstruction.png'\n"
        "plot 'reconstruction.csv' using 1:2 with lines, '' using 1:3 with lines dashtype 2\n";
  }
  out.write("plots/plot.gp", script);
}

}  // namespace

void cmd_simulate(const ScenarioConfig& c, const fs::path& dir) {
  const int frames = c.simulation.frames;
  std::vector<double> times(static_cast<std::size_t>(frames));
  for (int i = 0; i < frames; ++i) {
    times[static_cast<std::size_t>(i)] = frames == 1 ? 0.0 : c.simulation.t_end * i / (frames - 1);
  }
  if (frames > 1) times.back() = c.simulation.t_end;
  const EvolutionResult r = evolve(c.initial_state(), times);

  StagedOutput out(dir);
  std::vector<std::string> header{"x"};
  for (const auto& n : component_names(c.system)) header.push_back(n);
  const std::vector<double> x = c.grid().coordinates();
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    std::vector<std::vector<double>> cols{x};
    for (const auto& f : r.states[i].components()) cols.emplace_back(f.values().begin(), f.values().end());
    char name[32];
    std::snprintf(name, sizeof name, "state_%03zu.csv", i);
    out.write(name, format_csv(header, cols));
  }
  if (r.energy_parts) {
    std::vector<double> ea, es;
    for (const auto& e : *r.energy_parts) {
      ea.push_back(e.acoustic);
      es.push_back(e.entropy);
    }
    out.write("norms.csv", format_csv({"t", "norm", "E_a", "E_s"}, {r.times, r.norms, ea, es}));
    if (r.states.size() >= 3) {
      const BalanceResidual b = entropy_balance_residual(r);
      out.write("entropy_balance.csv", format_csv({"t", "residual"}, {b.times, b.values}));
    }
  } else {
    out.write("norms.csv", format_csv({"t", "norm"}, {r.times, r.norms}));
  }
  json frame_times = r.times;
  finish(out, manifest("simulate", c, {{"frame_times", frame_times}}));
}

void cmd_calibrate(const ScenarioConfig& c, const fs::path& dir, int trials) {
  const CalibrationResult r = run_calibration(c, trials);
  StagedOutput out(dir);
  const json cal = calibration_json(c, r);
  out.write_json("calibration.json", cal);
  finish(out, manifest("calibrate", c, {{"trials", trials}}));
}

void cmd_diagnose(const ScenarioConfig& c, const fs::path& dir, const fs::path& calibration_file) {
  const CalibrationResult cal = read_calibration(calibration_file, c);
  const Pipeline p = run_pipeline(c, cal);
  StagedOutput out(dir);
  out.write_json("report.json", report_json(p));
  out.write("series.csv", series_csv(p.series));
  out.write("waveform.csv", waveform_csv(p));
  if (c.output.emit_plots) write_plots(out, c, p);
  json m = manifest("diagnose", c, json::object());
  m["calibration"] = calibration_json(c, cal);
  m["calibration"]["trials"] = cal.trials;
  m["calibration"]["direction"] = cal.direction == Direction::right ? "right" : "left";
  finish(out, std::move(m));
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size()) throw ConfigError("--values: cannot read '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw ConfigError("--values: at least one value is required");
  return v;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"epsilon", "delta1",      "delta2", "beta",
                                             "noise_sigma", "dx", "dt", "points"};
  return axes;
}

namespace {

ScenarioConfig apply_axis(ScenarioConfig c, const std::string& axis, double v) {
  const auto need = [&](System s) {
    if (c.system != s) {
      throw ConfigError("--axis " + axis + ": not applicable to the " + std::string(to_string(c.system)) + " system");
    }
  };
  if (axis == "epsilon") {
    need(System::hyperbolic);
    c.hyperbolic.b.epsilon = v;
    c.hyperbolic.c.epsilon = v;
  } else if (axis == "delta1" || axis == "delta2" || axis == "beta") {
    need(System::acoustic);
    if (axis != "beta" && c.acoustic.physical) {
      throw ConfigError("--axis " + axis + ": sweeping needs dimensionless acoustic params, not 'physical'");
    }
    (axis == "delta1" ? c.acoustic.delta1 : axis == "delta2" ? c.acoustic.delta2 : c.acoustic.beta) = v;
  } else if (axis == "noise_sigma") {
    c.observation.noise_sigma = v;
  } else if (axis == "dx") {
    c.observation.dx = v;
  } else if (axis == "dt") {
    // The sampling step stays fixed so every point has the same sample count.
    c.observation.sample_step = c.observation.step();
    c.observation.dt = v;
  } else if (axis == "points") {
    if (v != std::floor(v)) throw ConfigError("--values: grid points must be integers");
    c.grid_points = static_cast<int>(v);
  } else {
    throw ConfigError("--axis: unknown axis '" + axis + "'");
  }
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError("sweep value " + format_number(v) + ": " + e.what());
  }
  return c;
}

bool structural_axis(const std::string& axis) {
  return axis == "epsilon" || axis == "delta1" || axis == "delta2" || axis == "beta";
}

using Row = std::vector<std::pair<std::string, double>>;

Row structural_row(const ScenarioConfig& c) {
  const SystemParams p = c.params();
  const Grid1D g = c.grid();
  if (c.system == System::hyperbolic) {
    return {{"commutator", commutator_norm(std::get<HyperbolicParams>(p))},
            {"idempotency", idempotency_residual(p, g)},
            {"completeness", completeness_residual(p, g)}};
  }
  return {{"commutator", acoustic_commutator_residual(std::get<AcousticParams>(p), g)},
          {"idempotency", idempotency_residual(p, g)},
          {"completeness", completeness_residual(p, g)}};
}

// Calibrates on the scenario's first directed pulse family, then diagnoses
// the full scenario.
Row pipeline_row(const ScenarioConfig& c, int trials, StagedOutput& out, const std::string& sub) {
  ScenarioConfig pure = c;
  Mode dir = Mode::right;
  for (const auto& p : c.pulses) {
    if (p.mode != Mode::entropy) {
      dir = p.mode;
      break;
    }
  }
  std::erase_if(pure.pulses, [&](const PulseConfig& p) { return p.mode != dir; });
  if (pure.pulses.empty()) throw ConfigError("pulses: the sweep pipeline needs a right or left pulse");
  const CalibrationResult cal = run_calibration(pure, trials);
  const Pipeline p = run_pipeline(c, cal);
  out.write_json(sub + "/report.json", report_json(p));
  const auto& d = p.report.detection;
  return {{"delta", cal.delta},
          {"norm_total", d.norm_total},
          {"residual_left", d.residual_left},
          {"residual_right", d.residual_right},
          {"alpha_hat", d.alpha_hat},
          {"beta_hat", d.beta_hat},
          {"detected_right", d.detected.contains(Mode::right) ? 1.0 : 0.0},
          {"detected_left", d.detected.contains(Mode::left) ? 1.0 : 0.0},
          {"arrival_time", p.report.arrival_time.value_or(kNaN)},
          {"source_position", p.report.source_position.value_or(kNaN)}};
}

}  // namespace

void cmd_sweep(const ScenarioConfig& base, const fs::path& dir, const std::string& axis,
               const std::vector<double>& values, int workers, int trials) {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end()) {
    throw ConfigError("--axis: unknown axis '" + axis + "'");
  }
  if (values.empty()) throw ConfigError("--values: at least one value is required");
  if (workers < 1) throw ConfigError("--workers: must be >= 1");
  std::vector<ScenarioConfig> configs;
  for (double v : values) configs.push_back(apply_axis(base, axis, v));

  StagedOutput out(dir);
  std::vector<Row> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next++) < values.size();) {
      try {
        char sub[32];
        std::snprintf(sub, sizeof sub, "point_%03zu", i);
        rows[i] = structural_axis(axis) ? structural_row(configs[i]) : pipeline_row(configs[i], trials, out, sub);
        json point{{"axis", axis}, {"value", values[i]}};
        for (const auto& [k, v] : rows[i]) point[k] = std::isfinite(v) ? json(v) : json(nullptr);
        out.write_json(std::string(sub) + "/row.json", point);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), values.size());
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Aggregate in input order, with successive ratios of the leading metrics.
  std::vector<std::string> header{axis};
  std::vector<std::vector<double>> cols{values};
  for (std::size_t k = 0; k < rows.front().size(); ++k) {
    header.push_back(rows.front()[k].first);
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r[k].second);
    cols.push_back(std::move(col));
  }
  const std::vector<std::string> ratio_of =
      structural_axis(axis) ? std::vector<std::string>{"commutator", "idempotency"} : std::vector<std::string>{"delta"};
  for (const auto& name : ratio_of) {
    const auto it = std::find(header.begin(), header.end(), name);
    const auto& src = cols[static_cast<std::size_t>(it - header.begin())];
    std::vector<double> ratio{kNaN};
    for (std::size_t i = 1; i < src.size(); ++i) ratio.push_back(src[i - 1] / src[i]);
    header.push_back(name + "_ratio");
    cols.push_back(std::move(ratio));
  }
  out.write("sweep.csv", format_csv(header, cols));
  finish(out, manifest("sweep", base, {{"axis", axis}, {"values", values}, {"workers", workers}, {"trials", trials}}));
}

}  // namespace wavesplit::cli
