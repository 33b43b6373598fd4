#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "knsaw/cli.hpp"
#include "knsaw/errors.hpp"

namespace knsaw::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size()) throw ArgumentError("cannot parse " + what + " '" + text + "'");
  return value;
}

std::int64_t to_grid_point(double v, const std::string& source) {
  if (!std::isfinite(v) || v < 1 || v > 9.2e18 || std::floor(v) != v) {
    throw ArgumentError("grid point '" + source + "' is not a positive integer");
  }
  return static_cast<std::int64_t>(v);
}

void check_increasing(const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw ArgumentError("empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw ArgumentError("grid must be strictly increasing (" + std::to_string(grid[i - 1]) + " then " +
                          std::to_string(grid[i]) + ")");
    }
  }
}

}  // namespace

std::vector<std::int64_t> parse_grid(const std::string& text) {
  static const std::regex shorthand(R"(^\s*10\^([0-9]+(?:\.[0-9]+)?)\s*\.\.\s*10\^([0-9]+(?:\.[0-9]+)?)\s*(?:x\s*([0-9]+))?\s*$)");
  std::smatch m;
  std::vector<std::int64_t> grid;
  if (std::regex_match(text, m, shorthand)) {
    const double lo = parse_double(m[1], "grid exponent");
    const double hi = parse_double(m[2], "grid exponent");
    if (!(hi > lo)) throw ArgumentError("grid range must be increasing: '" + text + "'");
    if (hi > 18) throw ArgumentError("grid exponent too large: '" + text + "'");
    int count = 0;
    if (m[3].matched) {
      count = std::stoi(m[3]);
    } else {
      if (std::floor(lo) != lo || std::floor(hi) != hi) {
        throw ArgumentError("fractional exponents need an explicit point count 'xN'");
      }
      count = static_cast<int>(hi - lo) + 1;
    }
    if (count < 2) throw ArgumentError("grid shorthand needs at least 2 points");
    for (int i = 0; i < count; ++i) {
      const double e = lo + (hi - lo) * i / (count - 1);
      grid.push_back(static_cast<std::int64_t>(std::llround(std::pow(10.0, e))));
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      grid.push_back(to_grid_point(parse_double(item, "grid point"), item));
    }
  }
  check_increasing(grid);
  return grid;
}

GammaConfig parse_config_overrides(std::istream& in, GammaConfig base) {
  const std::map<std::string, std::function<void(double)>> setters = {
      {"exact_sum_max_a", [&](double v) { base.exact_sum_max_a = v; }},
      {"series_offset", [&](double v) { base.series_offset = v; }},
      {"temme_auto_min_a", [&](double v) { base.temme_auto_min_a = v; }},
      {"temme_min_a", [&](double v) { base.temme_min_a = v; }},
      {"temme_cancellation_threshold", [&](double v) { base.temme_cancellation_threshold = v; }},
      {"eta_taylor_threshold", [&](double v) { base.eta_taylor_threshold = v; }},
      {"tricomi_min_ratio", [&](double v) { base.tricomi_min_ratio = v; }},
      {"precision_warning", [&](double v) { base.precision_warning = v; }},
      {"max_iterations",
       [&](double v) {
         if (v < 1 || std::floor(v) != v || v > 1e9) throw ArgumentError("max_iterations must be a positive integer");
         base.max_iterations = static_cast<int>(v);
       }},
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ArgumentError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(parse_double(trim(line.substr(eq + 1)), key));
  }
  return base;
}

GammaConfig load_config_overrides(const std::string& path, GammaConfig base) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file '" + path + "'");
  return parse_config_overrides(in, base);
}

}  // namespace knsaw::cli
