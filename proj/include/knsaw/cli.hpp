#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "knsaw/gamma_kernel.hpp"

namespace knsaw::cli {

enum class Command { pmf, moments, asymptote, clt, sample, verify };
enum class Format { csv, json };

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation failed, or verify found mismatches
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidity = 3;

struct RunConfig {
  Command command = Command::moments;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> grid;  // strictly increasing
  std::optional<double> z;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  Format format = Format::csv;
  std::string out_path;      // empty: stdout
  std::string raw_out_path;  // sample: one drawn length per line
  GammaConfig gamma;
};

// "100,1000,10000", or "10^a..10^b xN": N log-spaced points (endpoints
// included, rounded to integers); without "xN", one point per decade.
// Throws ArgumentError on malformed or non-increasing grids.
std::vector<std::int64_t> parse_grid(const std::string& text);

// key=value lines naming GammaConfig fields; '#' starts a comment.
// Throws ArgumentError on unknown keys or unparsable values.
GammaConfig parse_config_overrides(std::istream& in, GammaConfig base = {});
GammaConfig load_config_overrides(const std::string& path, GammaConfig base = {});

using Cell = std::variant<double, std::int64_t, std::string>;

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
};

// Doubles are written with 17 significant digits in both formats, so the two
// renderings carry identical decimal strings.
void write_csv(const Report& report, std::ostream& out);
void write_json(const Report& report, std::ostream& out);
std::string format_number(double x);

struct RunResult {
  Report report;
  int status = kExitOk;
};

// Executes a validated configuration. Throws knsaw exceptions on bad inputs;
// main_entry maps them to exit statuses.
RunResult run(const RunConfig& config);

// Full command-line front end: parse, run, write. Returns the exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace knsaw::cli
