#include "knsaw/cli.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "knsaw/errors.hpp"

namespace knsaw::cli {
namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "knsaw");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::multiset<std::string> numbers_in(const std::string& text) {
  static const std::regex number(R"(-?\d+(\.\d+)?(e[-+]\d+)?)");
  std::multiset<std::string> found;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), number); it != std::sregex_iterator(); ++it)
    found.insert(it->str());
  return found;
}

TEST(ParseGrid, Forms) {
  EXPECT_EQ(parse_grid("100,1000,10000"), (std::vector<std::int64_t>{100, 1000, 10000}));
  EXPECT_EQ(parse_grid("10^2..10^4"), (std::vector<std::int64_t>{100, 1000, 10000}));
  EXPECT_EQ(parse_grid("10^2..10^4 x5"), (std::vector<std::int64_t>{100, 316, 1000, 3162, 10000}));
  EXPECT_EQ(parse_grid("7"), (std::vector<std::int64_t>{7}));
  EXPECT_THROW(parse_grid("100,10"), ArgumentError);
  EXPECT_THROW(parse_grid("100,100"), ArgumentError);
  EXPECT_THROW(parse_grid("abc"), ArgumentError);
  EXPECT_THROW(parse_grid(""), ArgumentError);
  EXPECT_THROW(parse_grid("0,5"), ArgumentError);
}

TEST(ConfigOverrides, ParsesKnownKeys) {
  std::istringstream in("# thresholds\nexact_sum_max_a = 32\ntemme_auto_min_a=5000  # inline\n\n");
  const GammaConfig c = parse_config_overrides(in);
  EXPECT_EQ(c.exact_sum_max_a, 32);
  EXPECT_EQ(c.temme_auto_min_a, 5000);
  EXPECT_EQ(c.tricomi_min_ratio, GammaConfig{}.tricomi_min_ratio);
  std::istringstream bad("no_such_key = 1\n");
  EXPECT_THROW(parse_config_overrides(bad), ArgumentError);
  std::istringstream junk("exact_sum_max_a = twelve\n");
  EXPECT_THROW(parse_config_overrides(junk), ArgumentError);
}

TEST(Run, MomentsSmallCase) {
  RunConfig cfg;
  cfg.command = Command::moments;
  cfg.n = 2;
  cfg.z = 2;
  const RunResult r = run(cfg);
  ASSERT_EQ(r.report.rows.size(), 1u);
  const auto& cols = r.report.columns;
  const auto col = [&](const std::string& name) {
    return std::get<double>(r.report.rows[0][std::find(cols.begin(), cols.end(), name) - cols.begin()]);
  };
  EXPECT_NEAR(col("mean"), 0.5, 1e-15);
  EXPECT_NEAR(col("variance"), 0.25, 1e-15);
}

TEST(Output, CsvAndJsonCarryIdenticalNumbers) {
  const Outcome csv = invoke({"moments", "--n", "1000", "--z", "0.7"});
  const Outcome json = invoke({"--format", "json", "moments", "--n", "1000", "--z", "0.7"});
  ASSERT_EQ(csv.status, kExitOk) << csv.err;
  ASSERT_EQ(json.status, kExitOk) << json.err;
  const auto a = numbers_in(csv.out);
  const auto b = numbers_in(json.out);
  for (const auto& x : a) EXPECT_TRUE(b.count(x)) << x;
  EXPECT_EQ(json.out.front(), '{');
  EXPECT_NE(csv.out.find("mean"), std::string::npos);
}

TEST(Output, FormatAfterSubcommand) {
  const Outcome r = invoke({"pmf", "--n", "3", "--z", "3", "--format", "json"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(r.out.front(), '{');
}

TEST(Output, FormatNumberRoundTrips) {
  for (double x : {0.1, 1.0 / 3, 1e-300, 123456789.125, -2.5}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(ExitCodes, UsageValidityAndSuccess) {
  EXPECT_EQ(invoke({}).status, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(invoke({"pmf", "--n", "3"}).status, kExitUsage);
  EXPECT_EQ(invoke({"pmf", "--n", "0", "--z", "1"}).status, kExitUsage);
  EXPECT_EQ(invoke({"moments", "--z", "1", "--grid", "100,10"}).status, kExitUsage);
  EXPECT_EQ(invoke({"asymptote", "--alpha", "-1", "--beta", "0", "--grid", "100"}).status, kExitValidity);
  EXPECT_EQ(invoke({"--help"}).status, kExitOk);
  EXPECT_EQ(invoke({"clt", "--alpha", "0", "--beta", "1", "--grid", "1000"}).status, kExitOk);
}

TEST(Commands, SampleWritesRawDraws) {
  const std::string path = ::testing::TempDir() + "knsaw_raw.txt";
  const Outcome r = invoke({"sample", "--n", "50", "--z", "1", "--samples", "500", "--seed", "9", "--raw-out", path});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  std::ifstream in(path);
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    const long v = std::stol(line);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 50);
    ++lines;
  }
  EXPECT_EQ(lines, 500);
  std::remove(path.c_str());
  // Same seed, same output.
  EXPECT_EQ(r.out, invoke({"sample", "--n", "50", "--z", "1", "--samples", "500", "--seed", "9"}).out);
}

TEST(Commands, VerifyPasses) {
  const Outcome r = invoke({"verify", "--n", "20"});
  EXPECT_EQ(r.status, kExitOk) << r.out << r.err;
}

}  // namespace
}  // namespace knsaw::cli
