#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "knsaw/saw_exact.hpp"

namespace knsaw {

// mt19937_64 with a fixed uint64 -> double map, so streams are identical on
// every platform (std::uniform_real_distribution is not specified bit-exactly).
// Parallel chains use Rng::substream(seed, i), which hashes (seed, i) through
// splitmix64 into an independent 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, bound), unbiased. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Poisson(mu) variate: inversion for mu < 10, Hormann's PTRS rejection above.
std::int64_t sample_poisson(Rng& rng, double mu);

enum class SamplingMethod { automatic, rejection, inverse_cdf };

// Draws L = n-1-K with K ~ Poisson(nu) conditioned on K < n. Automatic uses
// rejection when Q(n,nu) >= 1e-3 and inverse-CDF over the exact pmf otherwise.
class LengthSampler {
 public:
  static constexpr double kRejectionThreshold = 1e-3;

  explicit LengthSampler(const SawEnsemble& ens, SamplingMethod method = SamplingMethod::automatic);

  std::int64_t operator()(Rng& rng) const;
  SamplingMethod method() const { return method_; }

 private:
  std::int64_t n_;
  double nu_;
  SamplingMethod method_;
  std::vector<double> cdf_;  // inverse-CDF only; cdf_[k] = P(L <= k), truncated once it reaches 1
};

std::int64_t sample_length(const SawEnsemble& ens, std::uint64_t seed);

// (0, w_1, ..., w_L): L from sample_length, then a uniformly random ordered
// selection of L distinct vertices from {1, ..., n-1}.
std::vector<std::int64_t> sample_walk(const SawEnsemble& ens, std::uint64_t seed);

struct SampleStats {
  std::int64_t count = 0;
  double mean = 0;
  double variance = 0;  // unbiased sample variance
  double std_error_of_mean = 0;
};

// Welford accumulator; merge() combines partial results (Chan et al.).
class SampleAccumulator {
 public:
  void add(double x);
  void merge(const SampleAccumulator& other);
  SampleStats stats() const;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

// Throws ArgumentError for samples < 2.
SampleStats mc_moments(const SawEnsemble& ens, std::int64_t samples, std::uint64_t seed);

struct ChiSquareResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
};

// Pearson goodness of fit of observed counts against probabilities. Adjacent
// cells are pooled left to right until each expected count is at least
// min_expected.
ChiSquareResult chi_square_test(std::span<const std::int64_t> observed, std::span<const double> probabilities,
                                double min_expected = 5.0);

// sup |F_a - F_b| between the empirical CDFs of two integer samples.
double two_sample_ks(std::vector<std::int64_t> a, std::vector<std::int64_t> b);
// Asymptotic two-sample KS critical value at significance level `alpha`.
double two_sample_ks_critical(std::size_t n, std::size_t m, double alpha);

}  // namespace knsaw
