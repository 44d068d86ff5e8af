#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "keyforge/io.hpp"

namespace keyforge::cli {

inline constexpr std::string_view kToolVersion = "keyforge 1.0.0";

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Records what a run read and wrote. Written next to the primary output as
/// <output>.manifest.json; it carries no timestamps so reruns are identical.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  std::string read_input(const std::filesystem::path& path);
  void write_output(const std::filesystem::path& path, std::string_view content);
  Json& config() { return config_; }
  Json& diagnostics() { return diagnostics_; }

  Json to_json() const;
  /// Writes the manifest beside `primary` and returns its path.
  std::filesystem::path finish(const std::filesystem::path& primary) const;

 private:
  struct Entry {
    std::string path;
    std::string sha256;
  };
  std::string command_;
  Json config_ = Json::object();
  Json diagnostics_ = Json::object();
  std::vector<Entry> inputs_;
  std::vector<Entry> outputs_;
};

}  // namespace keyforge::cli
