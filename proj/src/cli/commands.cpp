#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "knsaw/asymptotics.hpp"
#include "knsaw/cli.hpp"
#include "knsaw/errors.hpp"
#include "knsaw/limit_laws.hpp"
#include "knsaw/reference_oracle.hpp"
#include "knsaw/sampler.hpp"
#include "knsaw/saw_exact.hpp"

namespace knsaw::cli {
namespace {

std::int64_t require_n(const RunConfig& c) {
  if (!c.n) throw ArgumentError("--n is required");
  return *c.n;
}

double require_z(const RunConfig& c) {
  if (!c.z) throw ArgumentError("--z is required");
  return *c.z;
}

std::vector<std::int64_t> n_values(const RunConfig& c) {
  if (!c.grid.empty()) return c.grid;
  return {require_n(c)};
}

FugacityPath require_path(const RunConfig& c) {
  if (!c.alpha || !c.beta) throw ArgumentError("--alpha and --beta are required");
  return FugacityPath(*c.alpha, *c.beta);
}

// Evaluates f over the grid concurrently; results keep grid order.
template <class F>
auto sweep(const std::vector<std::int64_t>& grid, F f) {
  using Row = decltype(f(std::int64_t{}));
  std::vector<std::future<Row>> futures;
  futures.reserve(grid.size());
  for (std::int64_t n : grid) futures.push_back(std::async(std::launch::async, f, n));
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (auto& fut : futures) rows.push_back(fut.get());
  return rows;
}

void note_precision(const SawEnsemble& ens, std::vector<std::string>& warnings) {
  const GammaQResult q = evaluate_gamma_q(static_cast<double>(ens.n()), ens.nu(), {}, ens.config());
  if (q.precision_warning) {
    std::ostringstream msg;
    msg << "Q(" << ens.n() << ", " << format_number(ens.nu()) << ") via " << q.strategy.name()
        << ": truncation estimate " << format_number(q.truncation_estimate);
    warnings.push_back(msg.str());
  }
}

Report run_pmf(const RunConfig& c) {
  const SawEnsemble ens(require_n(c), require_z(c), c.gamma);
  Report r;
  r.params = {{"n", ens.n()}, {"z", ens.z()}, {"nu", ens.nu()}};
  r.columns = {"k", "pmf", "cdf", "tail"};
  note_precision(ens, r.warnings);
  const LengthDistribution dist = LengthDistribution::build(ens);
  for (std::int64_t k = 0; k < ens.n(); ++k) {
    const double t = tail(ens, static_cast<double>(k));
    r.rows.push_back({k, std::exp(dist.log_pmf[static_cast<std::size_t>(k)]), 1.0 - t, t});
  }
  return r;
}

Report run_moments(const RunConfig& c) {
  const double z = require_z(c);
  Report r;
  r.params = {{"z", z}};
  r.columns = {"n", "nu", "log_h_n", "mean", "variance", "moment_2", "moment_3"};
  using RowAndWarnings = std::pair<std::vector<Cell>, std::vector<std::string>>;
  const auto results = sweep(n_values(c), [&](std::int64_t n) -> RowAndWarnings {
    const SawEnsemble ens(n, z, c.gamma);
    std::vector<std::string> warnings;
    note_precision(ens, warnings);
    const bool summable = n <= kMomentMaxN;
    if (!summable) warnings.push_back("n = " + std::to_string(n) + ": higher moments skipped (summation budget)");
    const double nan = std::nan("");
    std::vector<Cell> row = {n,
                             ens.nu(),
                             log_h_n(static_cast<double>(n), ens.nu(), c.gamma),
                             exact_mean(ens),
                             exact_variance(ens),
                             summable ? exact_moment(ens, 2) : nan,
                             summable ? exact_moment(ens, 3) : nan};
    return {std::move(row), std::move(warnings)};
  });
  for (const auto& [row, warnings] : results) {
    r.rows.push_back(row);
    r.warnings.insert(r.warnings.end(), warnings.begin(), warnings.end());
  }
  return r;
}

Report run_asymptote(const RunConfig& c) {
  const FugacityPath path = require_path(c);
  if (c.grid.empty()) throw ArgumentError("--grid is required");
  for (std::int64_t n : c.grid) path.lambda(n);  // validity before any work
  Report r;
  r.params = {{"alpha", path.alpha()}, {"beta", path.beta()}, {"regime", std::string(regime_name(classify(path)))}};
  r.columns = {"n", "exact_mean", "asymptotic_mean", "mean_ratio", "exact_var", "asymptotic_var", "var_ratio"};
  r.rows = sweep(c.grid, [&](std::int64_t n) {
    const SawEnsemble ens = path.ensemble(n, c.gamma);
    const double em = exact_mean(ens);
    const double am = asymptotic_mean(path, n);
    const double ev = exact_variance(ens);
    const double av = asymptotic_variance(path, n);
    return std::vector<Cell>{n, em, am, em / am, ev, av, ev / av};
  });
  return r;
}

Report run_clt(const RunConfig& c) {
  const FugacityPath path = require_path(c);
  if (c.grid.empty()) throw ArgumentError("--grid is required");
  for (std::int64_t n : c.grid) path.lambda(n);
  Report r;
  r.params = {{"alpha", path.alpha()},
              {"beta", path.beta()},
              {"regime", std::string(regime_name(classify(path)))},
              {"limit_law", law_name(limit_law(path))}};
  r.columns = {"n", "ks_distance", "argmax_y", "grid_points", "grid"};
  r.rows = sweep(c.grid, [&](std::int64_t n) {
    const KsReport ks = ks_distance(path, n, GridSpec{}, c.gamma);
    return std::vector<Cell>{n, ks.ks_distance, ks.argmax_y, static_cast<std::int64_t>(ks.grid_points), ks.grid};
  });
  return r;
}

Report run_sample(const RunConfig& c) {
  const SawEnsemble ens(require_n(c), require_z(c), c.gamma);
  if (c.samples < 2) throw ArgumentError("--samples must be at least 2");
  // Same stream as mc_moments(ens, samples, seed).
  Rng rng(c.seed);
  const LengthSampler sampler(ens);
  SampleAccumulator acc;
  std::ofstream raw;
  if (!c.raw_out_path.empty()) {
    raw.open(c.raw_out_path);
    if (!raw) throw ArgumentError("cannot open '" + c.raw_out_path + "' for writing");
  }
  for (std::int64_t i = 0; i < c.samples; ++i) {
    const std::int64_t length = sampler(rng);
    acc.add(static_cast<double>(length));
    if (raw.is_open()) raw << length << '\n';
  }
  const SampleStats s = acc.stats();
  const double exact = exact_mean(ens);
  Report r;
  r.params = {{"n", ens.n()},
              {"z", ens.z()},
              {"seed", static_cast<std::int64_t>(c.seed)},
              {"method", std::string(sampler.method() == SamplingMethod::rejection ? "rejection" : "inverse_cdf")}};
  r.columns = {"count", "mean", "variance", "std_error_of_mean", "exact_mean", "z_score"};
  r.rows.push_back({s.count, s.mean, s.variance, s.std_error_of_mean, exact, (s.mean - exact) / s.std_error_of_mean});
  return r;
}

struct CheckTally {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t failed = 0;
  double worst = 0;

  void record(double error, double tolerance) {
    ++cases;
    if (!(error <= tolerance)) ++failed;
    worst = std::max(worst, error);
  }
};

double rel_err(double got, double want) { return want == 0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want); }

Report run_verify(const RunConfig& c) {
  const std::int64_t n_max = c.n.value_or(60);
  if (n_max < 1 || n_max > oracle::kBruteForceMaxN) {
    throw ArgumentError("verify: --n must lie in [1, " + std::to_string(oracle::kBruteForceMaxN) + "]");
  }
  CheckTally pmf_check{"pmf_vs_brute_force"};
  CheckTally mean_check{"mean_vs_exact_rational"};
  CheckTally var_check{"variance_vs_exact_rational"};
  CheckTally q_check{"q_vs_high_precision"};
  CheckTally count_check{"walk_count_vs_enumeration"};

  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (double z : {0.5, 1.0, 2.0, 5.0}) {
      const SawEnsemble ens(n, z, c.gamma);
      const oracle::ExactPmf exact = oracle::brute_force_pmf(n, z);
      const std::vector<double> want = exact.to_double();
      double worst = 0;
      for (std::int64_t k = 0; k < n; ++k) worst = std::max(worst, rel_err(pmf(ens, k), want[static_cast<std::size_t>(k)]));
      pmf_check.record(worst, 1e-12);
      if (n > 1) {
        mean_check.record(rel_err(exact_mean(ens), oracle::exact_pmf_moment(exact, 1)), 1e-10);
        var_check.record(rel_err(exact_variance(ens), oracle::exact_pmf_variance(exact)), 1e-10);
      }
    }
    for (double f : {0.5, 1.0, 2.0}) {
      const double nu = f * static_cast<double>(n);
      const double want = oracle::q_highprec(n, nu).log_value();
      q_check.record(std::fabs(std::expm1(log_reg_gamma_q(static_cast<double>(n), nu, {}, c.gamma) - want)), 1e-10);
    }
  }
  for (int n = 1; n <= std::min<std::int64_t>(n_max, 8); ++n) {
    const auto counts = oracle::enumerate_walk_counts(n);
    for (int k = 0; k < n; ++k) {
      const double got = std::round(walk_count(n, k).to_double());
      count_check.record(std::fabs(got - static_cast<double>(counts[static_cast<std::size_t>(k)])), 0.0);
    }
  }

  Report r;
  r.params = {{"n_max", n_max}};
  r.columns = {"check", "cases", "passed", "failed", "worst_error"};
  for (const CheckTally* t : {&pmf_check, &mean_check, &var_check, &q_check, &count_check}) {
    r.rows.push_back({t->name, t->cases, t->cases - t->failed, t->failed, t->worst});
  }
  return r;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::pmf: return "pmf";
    case Command::moments: return "moments";
    case Command::asymptote: return "asymptote";
    case Command::clt: return "clt";
    case Command::sample: return "sample";
    case Command::verify: return "verify";
  }
  return "unknown";
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  switch (config.command) {
    case Command::pmf: result.report = run_pmf(config); break;
    case Command::moments: result.report = run_moments(config); break;
    case Command::asymptote: result.report = run_asymptote(config); break;
    case Command::clt: result.report = run_clt(config); break;
    case Command::sample: result.report = run_sample(config); break;
    case Command::verify: {
      result.report = run_verify(config);
      for (const auto& row : result.report.rows) {
        if (std::get<std::int64_t>(row[3]) != 0) result.status = kExitFailure;
      }
      break;
    }
  }
  result.report.command = command_name(config.command);
  return result;
}

}  // namespace knsaw::cli
