#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ramlab/io.hpp"

namespace ramlab::cli {

std::string sha256_file(const std::filesystem::path& path);

/// Run record: the configuration, tool version, wall time and a checksum of
/// every output file. See docs/manifest.md.
class Manifest {
 public:
  Manifest(std::string command, Json config);

  void add_output(const std::filesystem::path& path);
  const std::vector<std::filesystem::path>& outputs() const noexcept { return outputs_; }

  /// Writes the manifest next to the outputs.
  void write(const std::filesystem::path& path, double wall_seconds) const;

 private:
  std::string command_;
  Json config_;
  std::vector<std::filesystem::path> outputs_;
};

}  // namespace ramlab::cli
