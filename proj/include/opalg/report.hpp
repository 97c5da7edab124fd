// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opalg {

struct ReportRow {
  std::string label;
  double value = 0.0;
};

struct ReportFlag {
  std::string name;
  bool passed = false;
};

/// Labeled numeric output of one experiment plus the pass/fail outcome of
/// every assertion made while producing it.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ReportRow> rows;
  std::vector<ReportFlag> flags;
  std::optional<double> wall_time;  ///< seconds; only serialized on request

  void param(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
  void row(std::string label, double value) { rows.push_back({std::move(label), value}); }
  /// Records an assertion and returns its outcome.
  bool check(std::string name, bool passed) {
    flags.push_back({std::move(name), passed});
    return passed;
  }

  bool all_passed() const {
    for (const auto& f : flags)
      if (!f.passed) return false;
    return true;
  }

  std::optional<double> value(const std::string& label) const {
    for (const auto& r : rows)
      if (r.label == label) return r.value;
    return std::nullopt;
  }

  std::optional<bool> flag(const std::string& name) const {
    for (const auto& f : flags)
      if (f.name == name) return f.passed;
    return std::nullopt;
  }

  /// Appends rows and flags of `other`, prefixing labels with `prefix`.
  void merge(const ExperimentReport& other, const std::string& prefix) {
    for (const auto& r : other.rows) rows.push_back({prefix + r.label, r.value});
    for (const auto& f : other.flags) flags.push_back({prefix + f.name, f.passed});
  }
};

}  // namespace opalg
