#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace xxring {

inline constexpr const char* kArtifactVersion = "xxring 1.0.0";

// What a run was and what it produced. Re-running a command with the same
// parameters reproduces every listed CSV byte for byte.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string artifact_version = kArtifactVersion;
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;
};

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// CSV: UTF-8, '\n' line endings, header first, shortest round-trip doubles.
void write_series(const std::string& path, std::span<const std::string> header,
                  const std::vector<std::vector<double>>& rows);

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace xxring
