// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "opalg/cli/cli.hpp"
#include "opalg/errors.hpp"

namespace opalg::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + '"';
}

// JSON has no literal for inf or nan; those travel as strings. "-0" would
// read back as the integer 0, so negative zero keeps a fraction part.
std::string json_number(double v) {
  if (!std::isfinite(v)) return json_string(fmt17(v));
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  return fmt17(v);
}

}  // namespace

std::string emit_report(const ExperimentReport& report, Format format) {
  std::string out;
  if (format == Format::csv) {
    out += "label,value\n";
    for (const auto& [k, v] : report.params) out += csv_field("param:" + k) + ',' + csv_field(v) + '\n';
    for (const auto& r : report.rows) out += csv_field(r.label) + ',' + fmt17(r.value) + '\n';
    for (const auto& f : report.flags) out += csv_field("pass:" + f.name) + ',' + (f.passed ? "1" : "0") + '\n';
    if (report.wall_time) out += "wall_time," + fmt17(*report.wall_time) + '\n';
    return out;
  }

  out += "{\n  \"experiment\": " + json_string(report.experiment) + ",\n  \"params\": {";
  for (std::size_t i = 0; i < report.params.size(); ++i)
    out += std::string(i ? "," : "") + "\n    " + json_string(report.params[i].first) + ": " +
           json_string(report.params[i].second);
  out += report.params.empty() ? "},\n" : "\n  },\n";
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    out += std::string(i ? "," : "") + "\n    {\"label\": " + json_string(report.rows[i].label) +
           ", \"value\": " + json_number(report.rows[i].value) + "}";
  out += report.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"flags\": [";
  for (std::size_t i = 0; i < report.flags.size(); ++i)
    out += std::string(i ? "," : "") + "\n    {\"name\": " + json_string(report.flags[i].name) +
           ", \"passed\": " + (report.flags[i].passed ? "true" : "false") + "}";
  out += report.flags.empty() ? "],\n" : "\n  ],\n";
  out += "  \"wall_time\": " + (report.wall_time ? json_number(*report.wall_time) : std::string("null")) + "\n}\n";
  return out;
}

void write_report(const ExperimentReport& report, Format format, const std::string& path) {
  const std::string bytes = emit_report(report, format);
  if (path.empty()) {
    std::cout << bytes << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("out: cannot open '" + path + "' for writing");
  f << bytes;
  f.flush();
  if (!f) throw InputError("out: failed writing '" + path + "'");
}

}  // namespace opalg::cli
