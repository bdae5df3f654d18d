#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace wavesplit::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Per-frame state CSVs, norms.csv (and entropy_balance.csv for acoustics),
/// manifest.json.
void cmd_simulate(const ScenarioConfig& config, const std::filesystem::path& out);

/// calibration.json from `trials` seeded syntheses of a pure single-direction
/// scenario, manifest.json.
void cmd_calibrate(const ScenarioConfig& config, const std::filesystem::path& out, int trials);

/// Truth -> measurement -> detection -> reconstruction -> localization.
/// Writes report.json, series.csv, waveform.csv, manifest.json and, with
/// emit_plots, plot data plus a gnuplot script under plots/.
void cmd_diagnose(const ScenarioConfig& config, const std::filesystem::path& out,
                  const std::filesystem::path& calibration_file);

/// Axes accepted by cmd_sweep.
const std::vector<std::string>& sweep_axes();

/// "v1,v2,..." -> numbers; empty lists and malformed entries are config errors.
std::vector<double> parse_values(const std::string& text);

/// One pipeline run per value (in parallel up to `workers`), each in its own
/// point_NNN/ subdirectory; sweep.csv is assembled in input order.
void cmd_sweep(const ScenarioConfig& config, const std::filesystem::path& out,
               const std::string& axis, const std::vector<double>& values, int workers,
               int trials);

}  // namespace wavesplit::cli
