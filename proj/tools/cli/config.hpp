#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavesplit/wavesplit.hpp"

namespace wavesplit::cli {

/// Invalid or inconsistent scenario configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PulseConfig {
  Mode mode = Mode::right;
  std::string shape = "gaussian";
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
};

struct ObservationConfig {
  double x_obs = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  /// Spacing of the recorded times; defaults to dt.
  std::optional<double> sample_step;

  double step() const { return sample_step.value_or(dt); }
};

struct DiagnosticsConfig {
  double kappa = 3.0;
  int spline_order = 3;
  double knot_spacing = 0.0;
  double threshold_frac = 0.05;
  double t_zero = 0.0;
  double delta_speed = 0.0;
  double delta_arrival = 0.0;
};

struct OutputConfig {
  std::string directory = "out";
  bool emit_plots = false;
};

struct SimulationConfig {
  double t_end = 0.0;
  int frames = 11;
};

struct HyperbolicConfig {
  ProfileSpec b;
  ProfileSpec c;
};

struct AcousticConfig {
  double gamma = 1.4;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double beta = 0.0;
  std::optional<PhysicalInputs> physical;
};

struct ScenarioConfig {
  System system = System::string;
  double grid_length = 0.0;
  int grid_points = 0;
  double string_c = 1.0;
  HyperbolicConfig hyperbolic;
  AcousticConfig acoustic;
  std::vector<PulseConfig> pulses;
  ObservationConfig observation;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  SimulationConfig simulation;

  Grid1D grid() const;
  SystemParams params() const;
  /// Sum of the configured pulses, each placed in its mode's subspace.
  StateVector initial_state() const;
  std::vector<double> observation_times() const;
  Stencil stencil() const { return {observation.dx, observation.dt}; }
  ObservationSetup observation_setup() const;
  DiagnosticsOptions diagnostics_options() const;
  SplineOptions spline_options() const;
};

/// Parses a YAML scenario (or a JSON run manifest carrying a "config" key)
/// and validates every module precondition. Throws ConfigError with the
/// offending field and line.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<config>");

/// Re-runs the full validation (after programmatic edits such as sweeps).
void validate(const ScenarioConfig& config);

/// Normalized echo with every default made explicit; parse_config accepts it.
nlohmann::ordered_json to_json(const ScenarioConfig& config);

}  // namespace wavesplit::cli
