#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace roughren {

enum class Mode { exact, floating };

std::string to_string(Mode m);
/// "exact" or "float".
Mode parse_mode(const std::string& text);

/// Run parameters shared by the CLI and the acceptance suites.
struct RunConfig {
  int d = 1;
  int truncation = 4;
  double gamma = 0.24;
  int grid_depth = 6;
  Mode mode = Mode::exact;
  std::uint64_t seed = 20240611;
  std::optional<std::filesystem::path> rule_file;
  std::optional<std::filesystem::path> character_file;
  std::filesystem::path output_dir = "roughren_out";

  /// Throws std::invalid_argument unless N is the largest integer with γN ≤ 1
  /// and the remaining fields are in range.
  void validate() const;
};

/// Largest N with γN ≤ 1 (up to 1e-12).
int truncation_for(double gamma);

/// RunConfig defaults with the output directory taken from ROUGHREN_OUT if set.
RunConfig default_config();

}  // namespace roughren
