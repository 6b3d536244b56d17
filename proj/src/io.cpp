#include "xxring/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace xxring {

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_series(const std::string& path, std::span<const std::string> header,
                  const std::vector<std::vector<double>>& rows) {
  for (const auto& row : rows)
    if (row.size() != header.size())
      throw std::invalid_argument("write_series: header width does not match rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_series: cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i != 0) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != 0) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write_series: failed writing " + path);
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["parameters"] = manifest.parameters;
  doc["artifact_version"] = manifest.artifact_version;
  doc["outputs"] = manifest.outputs;
  doc["wall_time_seconds"] = manifest.wall_time_seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write_manifest: failed writing " + path);
}

}  // namespace xxring
