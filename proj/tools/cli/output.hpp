#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace wavesplit::cli {

/// Collects a run's files in a hidden sibling directory and moves them into
/// the target only on commit; an aborted run leaves the target untouched.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path target);
  ~StagedOutput();
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  void write(const std::string& relative, const std::string& content);
  void write_json(const std::string& relative, const nlohmann::ordered_json& j);
  /// Relative paths written so far, sorted.
  std::vector<std::string> files() const;
  void commit();

  const std::filesystem::path& target() const { return target_; }

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  std::vector<std::string> files_;
  mutable std::mutex mutex_;
  bool committed_ = false;
};

/// Comma-separated table with a header row and 17 significant digits.
std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

std::string format_number(double v);

}  // namespace wavesplit::cli
