#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "knsaw/cli.hpp"

namespace knsaw::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string csv_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return csv_field(std::get<std::string>(cell));
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// JSON has no NaN/Infinity; those become null.
std::string json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? format_number(*d) : "null";
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return json_string(std::get<std::string>(cell));
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const Report& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(report.columns[i]);
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Report& report, std::ostream& out) {
  out << "{\n  \"command\": " << json_string(report.command) << ",\n  \"params\": {";
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    out << (i ? ", " : "") << json_string(report.params[i].first) << ": " << json_cell(report.params[i].second);
  }
  out << "},\n  \"rows\": [";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    const auto& row = report.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? ", " : "") << json_string(report.columns[i]) << ": " << json_cell(row[i]);
    }
    out << '}';
  }
  out << (report.rows.empty() ? "],\n" : "\n  ],\n") << "  \"warnings\": [";
  for (std::size_t i = 0; i < report.warnings.size(); ++i) {
    out << (i ? ", " : "") << json_string(report.warnings[i]);
  }
  out << "]\n}\n";
}

}  // namespace knsaw::cli
