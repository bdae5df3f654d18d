#include "output.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "config.hpp"

namespace fs = std::filesystem;

namespace wavesplit::cli {

StagedOutput::StagedOutput(fs::path target) : target_(std::move(target)) {
  const fs::path parent = target_.has_parent_path() ? target_.parent_path() : fs::path(".");
  staging_ = parent / ("." + target_.filename().string() + ".staging-" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(staging_, ec);
  fs::create_directories(staging_, ec);
  if (ec) throw IoError("cannot create staging directory '" + staging_.string() + "': " + ec.message());
}

StagedOutput::~StagedOutput() {
  std::error_code ec;
  fs::remove_all(staging_, ec);
}

void StagedOutput::write(const std::string& relative, const std::string& content) {
  const fs::path p = staging_ / relative;
  {
    std::lock_guard lock(mutex_);
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + p.parent_path().string() + "': " + ec.message());
    files_.push_back(relative);
  }
  std::ofstream out(p, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw IoError("cannot write '" + p.string() + "'");
}

void StagedOutput::write_json(const std::string& relative, const nlohmann::ordered_json& j) {
  write(relative, j.dump(2) + "\n");
}

std::vector<std::string> StagedOutput::files() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> f = files_;
  std::sort(f.begin(), f.end());
  return f;
}

void StagedOutput::commit() {
  std::error_code ec;
  for (const auto& rel : files()) {
    const fs::path dst = target_ / rel;
    fs::create_directories(dst.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + dst.parent_path().string() + "': " + ec.message());
    fs::rename(staging_ / rel, dst, ec);
    if (ec) throw IoError("cannot move output into '" + dst.string() + "': " + ec.message());
  }
  committed_ = true;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  std::string s;
  for (std::size_t k = 0; k < header.size(); ++k) s += (k ? "," : "") + header[k];
  s += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) s += ',';
      s += format_number(columns[k][i]);
    }
    s += '\n';
  }
  return s;
}

}  // namespace wavesplit::cli
