// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/report.hpp"

namespace opalg::cli {

enum class Format { csv, json };

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> nodes;
  std::uint64_t seed = 1;
  std::optional<std::string> weights;
  std::optional<std::string> kernel;
  std::optional<unsigned> nmax;
  std::optional<std::string> out_path;
  Format format = Format::csv;
  bool timing = false;
};

enum ExitCode : int { kAllPassed = 0, kAssertionFailed = 1, kValidationError = 2, kNumericFailure = 3 };

const std::vector<std::string_view>& experiment_names();

/// Throws InputError naming the offending field. Runs no numerics.
void validate(const ExperimentConfig& config);

/// Validates, then dispatches. Deterministic for a fixed config; wall_time is
/// filled only when config.timing is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// CSV: `label,value` header, params as `param:<key>`, rows at 17
/// significant digits, flags as `pass:<name>` with 1 or 0. LF endings.
/// JSON: {experiment, params, rows, flags, wall_time}.
std::string emit_report(const ExperimentReport& report, Format format);

/// Writes to `path`, or stdout when empty. Throws InputError if the file
/// cannot be written.
void write_report(const ExperimentReport& report, Format format, const std::string& path);

/// Full command line: parse, run, write, map outcome to ExitCode.
int run(int argc, const char* const* argv);

}  // namespace opalg::cli
