#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "knsaw/cli.hpp"
#include "knsaw/errors.hpp"

namespace knsaw::cli {
namespace {

struct RawFlags {
  std::int64_t n = 0;
  double z = 0;
  double alpha = 0;
  double beta = 0;
  std::string grid;
  std::string config_path;
};

void add_n(CLI::App* sub, RawFlags& f, const char* help = "vertex count") {
  sub->add_option("--n", f.n, help)->check(CLI::PositiveNumber);
}
void add_z(CLI::App* sub, RawFlags& f) { sub->add_option("--z", f.z, "fugacity z > 0")->check(CLI::PositiveNumber); }
void add_path(CLI::App* sub, RawFlags& f) {
  sub->add_option("--alpha", f.alpha, "path amplitude alpha in lambda_n = 1 + alpha n^-beta")->required();
  sub->add_option("--beta", f.beta, "path exponent beta >= 0")->required();
}
void add_grid(CLI::App* sub, RawFlags& f, bool required) {
  auto* opt = sub->add_option("--grid", f.grid, "n values: '100,1000' or '10^2..10^4 x5'");
  if (required) opt->required();
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walk-length statistics of the self-avoiding walk on the complete graph K_n"};
  app.require_subcommand(1);

  RunConfig config;
  RawFlags flags;
  std::string format = "csv";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out_path, "output file (default: stdout)");
  app.add_option("--config", flags.config_path, "key=value file overriding kernel thresholds");
  // --format/--out/--config may also follow the subcommand name.
  app.fallthrough();

  auto* pmf = app.add_subcommand("pmf", "full length distribution for (n, z)");
  add_n(pmf, flags);
  add_z(pmf, flags);
  pmf->get_option("--n")->required();
  pmf->get_option("--z")->required();

  auto* moments = app.add_subcommand("moments", "exact mean, variance, moments and H_n");
  add_n(moments, flags);
  add_z(moments, flags);
  add_grid(moments, flags, false);
  moments->get_option("--z")->required();

  auto* asymptote = app.add_subcommand("asymptote", "exact vs leading-order mean and variance along a path");
  add_path(asymptote, flags);
  add_grid(asymptote, flags, true);

  auto* clt = app.add_subcommand("clt", "KS distance to the limit law along a path");
  add_path(clt, flags);
  add_grid(clt, flags, true);

  auto* sample = app.add_subcommand("sample", "Monte Carlo walk lengths");
  add_n(sample, flags);
  add_z(sample, flags);
  sample->get_option("--n")->required();
  sample->get_option("--z")->required();
  sample->add_option("--samples", config.samples, "number of draws")->check(CLI::Range(std::int64_t{2}, INT64_MAX));
  sample->add_option("--seed", config.seed, "RNG seed");
  sample->add_option("--raw-out", config.raw_out_path, "also write every drawn length to this file");

  auto* verify = app.add_subcommand("verify", "compare against the high-precision reference oracle");
  add_n(verify, flags, "largest n checked (default 60)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::map<CLI::App*, Command> commands = {{pmf, Command::pmf},         {moments, Command::moments},
                                                 {asymptote, Command::asymptote}, {clt, Command::clt},
                                                 {sample, Command::sample},   {verify, Command::verify}};
  CLI::App* chosen = app.get_subcommands().front();
  config.command = commands.at(chosen);
  config.format = format == "json" ? Format::json : Format::csv;
  const auto given = [chosen](const char* name) {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--n")) config.n = flags.n;
  if (given("--z")) config.z = flags.z;
  if (given("--alpha")) config.alpha = flags.alpha;
  if (given("--beta")) config.beta = flags.beta;

  RunResult result;
  try {
    if (!flags.grid.empty()) config.grid = parse_grid(flags.grid);
    if (!flags.config_path.empty()) config.gamma = load_config_overrides(flags.config_path);
    result = run(config);
  } catch (const ValidityError& e) {
    err << "validity error: " << e.what() << '\n';
    return kExitValidity;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out_path.empty()) {
    file.open(config.out_path);
    if (!file) {
      err << "usage error: cannot open '" << config.out_path << "' for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }
  if (config.format == Format::json) {
    write_json(result.report, *sink);
  } else {
    write_csv(result.report, *sink);
    for (const auto& w : result.report.warnings) err << "warning: " << w << '\n';
  }
  return result.status;
}

}  // namespace knsaw::cli
