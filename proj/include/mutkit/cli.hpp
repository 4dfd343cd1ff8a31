#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mutkit {

enum class ExitCode : int { Pass = 0, CheckFailed = 1, InvalidInput = 2 };

/// One CLI job. `inputs` are the positional file arguments of the command.
struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  /// Overrides the command's main tolerance (see README).
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int max_word_length = 6;
  bool strict_sl_lift = false;
  bool force = false;
  std::optional<std::string> emit_image;
  std::string out_dir = "mutkit-reports";
  int degree = 2;        ///< cover-check without a mutation file
  int circle_steps = 0;  ///< cover-check product cycle levels; 0 means twice the circle degree
  std::optional<std::string> mutation;  ///< cover-check: take 2m and A from this file
  bool write_report = true;
};

struct RunResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
  std::string report_text;  ///< exact bytes written
  std::string report_path;  ///< empty when not written
  std::string summary;      ///< short human-readable outcome
};

const std::vector<std::string>& known_commands();

/// Runs a job and writes its report; never throws.
RunResult run(const JobConfig& config);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace mutkit
