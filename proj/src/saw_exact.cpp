#include "knsaw/saw_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "knsaw/errors.hpp"

namespace knsaw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_n(std::int64_t n) {
  if (n < 1) throw DomainError("vertex count n must be >= 1");
}

void check_support(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n - 1) {
    throw RangeError("walk length " + std::to_string(k) + " outside [0, " + std::to_string(n - 1) + "]");
  }
}

// For nu > n the length law is concentrated near 0 with P(L=k)/P(L=k-1) =
// (n-k)/nu, so moments follow from a short, positive series. The closed forms
// subtract two O(nu) quantities to get an O(1) answer there.
struct SeriesMoments {
  double mean;
  double variance;
};

constexpr int kMaxSeriesTerms = 8192;

bool use_series(const SawEnsemble& ens) {
  const double lambda = ens.nu() / static_cast<double>(ens.n());
  if (!(lambda > 1)) return false;
  return std::ceil(80.0 / std::log(lambda)) <= kMaxSeriesTerms;
}

SeriesMoments series_moments(const SawEnsemble& ens) {
  const std::int64_t n = ens.n();
  const double nu = ens.nu();
  std::vector<double> w{1.0};
  double s0 = 1.0;
  double s1 = 0.0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double next = w.back() * static_cast<double>(n - k) / nu;
    if (next < 1e-40 * s0) break;
    w.push_back(next);
    s0 += next;
    s1 += static_cast<double>(k) * next;
  }
  const double mean = s1 / s0;
  double m2 = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double d = static_cast<double>(k) - mean;
    m2 += d * d * w[k];
  }
  return {mean, m2 / s0};
}

// Same regime, for the pmf: log P(L=k) = log w_k - log sum(w), with
// w_k = prod_{i<=k} (n-i)/nu. Subtracting log Q from the Poisson kernel would
// cancel two O(nu) logarithms instead.
double log_series_normalizer(const SawEnsemble& ens) {
  const std::int64_t n = ens.n();
  double w = 1.0;
  double s0 = 1.0;
  for (std::int64_t k = 1; k < n; ++k) {
    w *= static_cast<double>(n - k) / ens.nu();
    if (w < 1e-40 * s0) break;
    s0 += w;
  }
  return std::log(s0);
}

constexpr std::int64_t kDirectWeightMax = 4096;

// Neumaier-compensated running sum of log((n-i)/nu), i = 1..k.
struct LogWeightSum {
  double sum = 0;
  double comp = 0;
  void add(double x) {
    const double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double log_step(const SawEnsemble& ens, std::int64_t i) {
  return std::log(static_cast<double>(ens.n() - i) / ens.nu());
}

}  // namespace

SawEnsemble::SawEnsemble(std::int64_t n, double z, double nu, const GammaConfig& config)
    : n_(n), z_(z), nu_(nu), log_q_(0), config_(config) {
  check_n(n);
  if (!(z > 0) || !std::isfinite(z)) throw DomainError("fugacity z must be positive and finite");
  if (!(nu > 0) || !std::isfinite(nu)) throw DomainError("rate nu must be positive and finite");
  log_q_ = log_reg_gamma_q(static_cast<double>(n), nu, EvalStrategy::automatic(), config_);
}

SawEnsemble::SawEnsemble(std::int64_t n, double z, const GammaConfig& config)
    : SawEnsemble(n, z, static_cast<double>(n) / z, config) {}

SawEnsemble SawEnsemble::from_rate(std::int64_t n, double nu, const GammaConfig& config) {
  return SawEnsemble(n, static_cast<double>(n) / nu, nu, config);
}

LengthDistribution LengthDistribution::build(const SawEnsemble& ens) {
  if (ens.n() > kMaxSize) throw SizeError("length distribution table limited to n <= " + std::to_string(kMaxSize));
  LengthDistribution dist;
  dist.n = ens.n();
  dist.normalizer = LogScaleValue::from_log(ens.log_q());
  dist.log_pmf.resize(static_cast<std::size_t>(ens.n()));
  if (use_series(ens)) {
    const double log_norm = log_series_normalizer(ens);
    LogWeightSum acc;
    for (std::int64_t k = 0; k < ens.n(); ++k) {
      if (k > 0) acc.add(log_step(ens, k));
      dist.log_pmf[static_cast<std::size_t>(k)] = acc.value() - log_norm;
    }
    return dist;
  }
  for (std::int64_t k = 0; k < ens.n(); ++k) {
    dist.log_pmf[static_cast<std::size_t>(k)] =
        log_poisson_kernel(static_cast<double>(ens.n() - 1 - k), ens.nu()) - ens.log_q();
  }
  return dist;
}

std::vector<double> LengthDistribution::pmf() const {
  std::vector<double> out(log_pmf.size());
  std::transform(log_pmf.begin(), log_pmf.end(), out.begin(), [](double l) { return std::exp(l); });
  return out;
}

std::vector<double> LengthDistribution::cdf() const {
  std::vector<double> out = pmf();
  double acc = 0;
  for (double& p : out) {
    acc += p;
    p = std::min(acc, 1.0);
  }
  return out;
}

LogScaleValue walk_count(std::int64_t n, std::int64_t k) {
  check_n(n);
  check_support(n, k);
  // Exact integer product while it fits in 53 bits; log-gamma difference beyond.
  std::uint64_t product = 1;
  bool exact = true;
  for (std::int64_t j = n - k; j <= n - 1 && exact; ++j) {
    const auto f = static_cast<std::uint64_t>(j);
    if (product > (std::uint64_t{1} << 53) / f) exact = false;
    else product *= f;
  }
  if (exact) return LogScaleValue::from_log(std::log(static_cast<double>(product)));
  return LogScaleValue::from_log(std::lgamma(static_cast<double>(n)) - std::lgamma(static_cast<double>(n - k)));
}

double log_pmf(const SawEnsemble& ens, std::int64_t k) {
  check_support(ens.n(), k);
  if (use_series(ens) && k <= kDirectWeightMax) {
    LogWeightSum acc;
    for (std::int64_t i = 1; i <= k; ++i) acc.add(log_step(ens, i));
    return acc.value() - log_series_normalizer(ens);
  }
  return log_poisson_kernel(static_cast<double>(ens.n() - 1 - k), ens.nu()) - ens.log_q();
}

double pmf(const SawEnsemble& ens, std::int64_t k) { return std::exp(log_pmf(ens, k)); }

double tail(const SawEnsemble& ens, double x) {
  if (std::isnan(x)) throw DomainError("tail: NaN argument");
  if (x < 0) return 1.0;
  const double last = static_cast<double>(ens.n() - 1);
  if (x >= last) return 0.0;
  const double a = last - std::floor(x);
  const double log_ratio = log_reg_gamma_q(a, ens.nu(), EvalStrategy::automatic(), ens.config()) - ens.log_q();
  return std::min(1.0, std::exp(log_ratio));
}

double log_h_n_eta_form(double n, double nu, const GammaConfig& config) {
  if (!(n >= 1) || !(nu > 0)) throw DomainError("H_n requires n >= 1 and nu > 0");
  const GammaQResult q = evaluate_gamma_q(n, nu, EvalStrategy::automatic(), config);
  return log_gamma_star(n) + q.log_scaled - std::log(n);
}

double log_h_n_direct(double n, double nu, const GammaConfig& config) {
  if (!(n >= 1) || !(nu > 0)) throw DomainError("H_n requires n >= 1 and nu > 0");
  return std::lgamma(n) + log_reg_gamma_q(n, nu, EvalStrategy::automatic(), config) - n * std::log(nu) + nu;
}

double log_h_n(double n, double nu, const GammaConfig& config) {
  if (!(n >= 1) || !(nu > 0)) throw DomainError("H_n requires n >= 1 and nu > 0");
  const double lambda = nu / n;
  if (lambda >= 0.5 && lambda <= 2.0) return log_h_n_eta_form(n, nu, config);
  return log_h_n_direct(n, nu, config);
}

double h_n(double n, double nu, const GammaConfig& config) { return std::exp(log_h_n(n, nu, config)); }

double closed_form_mean(const SawEnsemble& ens) {
  const double n = static_cast<double>(ens.n());
  const double inv_h = std::exp(-log_h_n(n, ens.nu(), ens.config()));
  return n - 1 - ens.nu() + inv_h;
}

double closed_form_variance(const SawEnsemble& ens) {
  const double n = static_cast<double>(ens.n());
  const double inv_h = std::exp(-log_h_n(n, ens.nu(), ens.config()));
  return ens.nu() + (ens.nu() - n) * inv_h - inv_h * inv_h;
}

double exact_mean(const SawEnsemble& ens) {
  if (ens.n() == 1) return 0.0;
  const double mean = use_series(ens) ? series_moments(ens).mean : closed_form_mean(ens);
  return std::clamp(mean, 0.0, static_cast<double>(ens.n() - 1));
}

double exact_variance(const SawEnsemble& ens) {
  if (ens.n() == 1) return 0.0;
  const double var = use_series(ens) ? series_moments(ens).variance : closed_form_variance(ens);
  return std::max(var, 0.0);
}

double exact_moment(const SawEnsemble& ens, int m) {
  if (m < 0) throw DomainError("moment order must be >= 0");
  if (m == 0) return 1.0;
  if (ens.n() > kMomentMaxN) throw SizeError("moment summation limited to n <= " + std::to_string(kMomentMaxN));
  const LengthDistribution dist = LengthDistribution::build(ens);
  std::vector<double> terms;
  terms.reserve(dist.log_pmf.size());
  double peak = -kInf;
  for (std::size_t k = 1; k < dist.log_pmf.size(); ++k) {
    const double t = dist.log_pmf[k] + m * std::log(static_cast<double>(k));
    terms.push_back(t);
    peak = std::max(peak, t);
  }
  if (terms.empty()) return 0.0;
  double sum = 0;
  for (double t : terms) sum += std::exp(t - peak);
  return std::exp(peak) * sum;
}

}  // namespace knsaw
