// wavesplit: simulate, calibrate, diagnose and sweep directed-wave scenarios.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime precondition
// violation, 4 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "cli/commands.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kRuntime = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
  using namespace wavesplit;
  CLI::App app{"Directed-wave decomposition and single-point diagnostics"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, axis, calibration;
  int trials = 100, workers = 1;
  std::string values_text;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario file (YAML, or a run manifest)")->required();
    sub->add_option("--out", out_dir, "Output directory (default: output.directory)");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Evolve the scenario and write frames and norms");
  common(simulate);
  CLI::App* calibrate = app.add_subcommand("calibrate", "Measure the baseline off-mode residual delta");
  common(calibrate);
  calibrate->add_option("--trials", trials, "Seeded trials")->check(CLI::PositiveNumber);
  CLI::App* diagnose = app.add_subcommand("diagnose", "Detect, reconstruct and localize");
  common(diagnose);
  diagnose->add_option("--calibration", calibration, "calibration.json from 'calibrate'")->required();
  CLI::App* sweep = app.add_subcommand("sweep", "Run the scenario over one parameter axis");
  common(sweep);
  sweep->add_option("--axis", axis, "epsilon|delta1|delta2|beta|noise_sigma|dx|dt|points")->required();
  sweep->add_option("--values", values_text, "Comma-separated axis values")->required();
  sweep->add_option("--workers", workers, "Parallel sweep points")->check(CLI::PositiveNumber);
  sweep->add_option("--trials", trials, "Calibration trials per point")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const cli::ScenarioConfig config = cli::load_config(config_path);
    const std::filesystem::path out = out_dir.empty() ? config.output.directory : out_dir;
    if (simulate->parsed()) {
      cli::cmd_simulate(config, out);
    } else if (calibrate->parsed()) {
      cli::cmd_calibrate(config, out, trials);
    } else if (diagnose->parsed()) {
      cli::cmd_diagnose(config, out, calibration);
    } else if (sweep->parsed()) {
      cli::cmd_sweep(config, out, axis, cli::parse_values(values_text), workers, trials);
    }
    std::cout << "wrote " << out.string() << "\n";
    return kOk;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const cli::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
