#include "knsaw/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "knsaw/errors.hpp"
#include "knsaw/gamma_kernel.hpp"

namespace knsaw {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::int64_t poisson_inversion(Rng& rng, double mu) {
  const double u = rng.uniform();
  double p = std::exp(-mu);
  double cumulative = p;
  std::int64_t k = 0;
  while (u > cumulative && p > 0) {
    ++k;
    p *= mu / static_cast<double>(k);
    cumulative += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson random
// variables", Insurance: Mathematics and Economics 12 (1993).
std::int64_t poisson_ptrs(Rng& rng, double mu) {
  const double smu = std::sqrt(mu);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2);
  const double log_mu = std::log(mu);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <= -mu + k * log_mu - std::lgamma(k + 1)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t Rng::substream(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below requires a positive bound");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

std::int64_t sample_poisson(Rng& rng, double mu) {
  if (!(mu >= 0) || !std::isfinite(mu)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mu == 0) return 0;
  return mu < 10 ? poisson_inversion(rng, mu) : poisson_ptrs(rng, mu);
}

LengthSampler::LengthSampler(const SawEnsemble& ens, SamplingMethod method)
    : n_(ens.n()), nu_(ens.nu()), method_(method) {
  if (method_ == SamplingMethod::automatic) {
    method_ = ens.log_q() >= std::log(kRejectionThreshold) ? SamplingMethod::rejection : SamplingMethod::inverse_cdf;
  }
  if (method_ != SamplingMethod::inverse_cdf) return;
  if (n_ > LengthDistribution::kMaxSize) throw SizeError("inverse-CDF table too large");
  double cumulative = 0;
  for (std::int64_t k = 0; k < n_; ++k) {
    cumulative += pmf(ens, k);
    if (cumulative >= 1.0 || k == n_ - 1) {
      cdf_.push_back(1.0);
      break;
    }
    cdf_.push_back(cumulative);
  }
}

std::int64_t LengthSampler::operator()(Rng& rng) const {
  if (n_ == 1) return 0;
  if (method_ == SamplingMethod::inverse_cdf) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::int64_t>(it - cdf_.begin(), static_cast<std::int64_t>(cdf_.size()) - 1);
  }
  for (;;) {
    const std::int64_t k = sample_poisson(rng, nu_);
    if (k < n_) return n_ - 1 - k;
  }
}

std::int64_t sample_length(const SawEnsemble& ens, std::uint64_t seed) {
  Rng rng(seed);
  return LengthSampler(ens)(rng);
}

std::vector<std::int64_t> sample_walk(const SawEnsemble& ens, std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t length = LengthSampler(ens)(rng);
  const std::int64_t n = ens.n();
  std::vector<std::int64_t> walk{0};
  walk.reserve(static_cast<std::size_t>(length) + 1);
  if (length == 0) return walk;

  if (length <= (n - 1) / 4) {
    std::unordered_set<std::int64_t> used;
    while (static_cast<std::int64_t>(walk.size()) <= length) {
      const auto v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1))) + 1;
      if (used.insert(v).second) walk.push_back(v);
    }
    return walk;
  }
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n - 1));
  std::iota(pool.begin(), pool.end(), std::int64_t{1});
  for (std::int64_t i = 0; i < length; ++i) {
    const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1 - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    walk.push_back(pool[static_cast<std::size_t>(i)]);
  }
  return walk;
}

void SampleAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void SampleAccumulator::merge(const SampleAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

SampleStats SampleAccumulator::stats() const {
  SampleStats s;
  s.count = count_;
  s.mean = mean_;
  s.variance = count_ > 1 ? std::max(0.0, m2_ / static_cast<double>(count_ - 1)) : 0.0;
  s.std_error_of_mean = count_ > 0 ? std::sqrt(s.variance / static_cast<double>(count_)) : 0.0;
  return s;
}

SampleStats mc_moments(const SawEnsemble& ens, std::int64_t samples, std::uint64_t seed) {
  if (samples < 2) throw ArgumentError("mc_moments needs at least 2 samples, got " + std::to_string(samples));
  Rng rng(seed);
  const LengthSampler sampler(ens);
  SampleAccumulator acc;
  for (std::int64_t i = 0; i < samples; ++i) acc.add(static_cast<double>(sampler(rng)));
  return acc.stats();
}

ChiSquareResult chi_square_test(std::span<const std::int64_t> observed, std::span<const double> probabilities,
                                double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw ArgumentError("chi-square test needs equally sized, non-empty inputs");
  }
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::int64_t{0}));
  std::vector<double> obs_cells;
  std::vector<double> exp_cells;
  double obs_acc = 0;
  double exp_acc = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += probabilities[i] * total;
    if (exp_acc >= min_expected) {
      obs_cells.push_back(obs_acc);
      exp_cells.push_back(exp_acc);
      obs_acc = exp_acc = 0;
    }
  }
  if (exp_acc > 0 || obs_acc > 0) {
    if (exp_cells.empty()) throw ArgumentError("chi-square test: too few expected counts");
    obs_cells.back() += obs_acc;
    exp_cells.back() += exp_acc;
  }
  ChiSquareResult r;
  for (std::size_t i = 0; i < obs_cells.size(); ++i) {
    const double d = obs_cells[i] - exp_cells[i];
    r.statistic += d * d / exp_cells[i];
  }
  r.degrees_of_freedom = static_cast<int>(obs_cells.size()) - 1;
  if (r.degrees_of_freedom < 1) throw ArgumentError("chi-square test needs at least two cells");
  r.p_value = reg_gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic);
  return r;
}

double two_sample_ks(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  if (a.empty() || b.empty()) throw ArgumentError("two-sample KS needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double two_sample_ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-std::log(alpha / 2) / 2) * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace knsaw
