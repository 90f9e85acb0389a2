#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "restopo/grid_io.hpp"
#include "restopo/version.hpp"

namespace restopo {

/// Reproducibility record written next to every command's outputs. Holds enough
/// (command, full config, seeds, file lists) to re-run the command and get
/// byte-identical results.
struct RunManifest {
  std::string command;
  nlohmann::json config;  // resolved flag values
  std::vector<uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const {
    return nlohmann::json{{"command", command},
                          {"config", config},
                          {"seeds", seeds},
                          {"inputs", inputs},
                          {"outputs", outputs},
                          {"tool_version", kVersion},
                          {"wall_seconds", wall_seconds}};
  }
};

/// Writes <base>.manifest.json alongside the named output file.
inline void write_manifest(const std::filesystem::path& base,
                           const RunManifest& m) {
  detail::write_file_atomic(base.string() + ".manifest.json",
                            m.to_json().dump(2) + "\n");
}

/// Millisecond-resolution stopwatch for manifest timings.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace restopo
