#include "knsaw/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "knsaw/errors.hpp"

namespace knsaw {
namespace {

const double kSqrt2OverPi = std::sqrt(2 / std::numbers::pi);

TEST(FugacityPath, Validation) {
  EXPECT_THROW(FugacityPath(-1, 0), ValidityError);
  EXPECT_THROW(FugacityPath(-2, 0), ValidityError);
  EXPECT_THROW(FugacityPath(1, -0.1), ValidityError);
  EXPECT_NO_THROW(FugacityPath(-0.99, 0));
  const FugacityPath p(-2, 0.25);
  EXPECT_THROW(p.lambda(10), ValidityError);  // 1 - 2/10^{1/4} < 0
  EXPECT_GT(p.lambda(10000), 0);
  EXPECT_DOUBLE_EQ(FugacityPath(1, 0.5).lambda(100), 1.1);
  EXPECT_DOUBLE_EQ(FugacityPath(1, 0.5).z(100), 1 / 1.1);
}

TEST(Classify, CaseTable) {
  EXPECT_EQ(classify(FugacityPath(-0.5, 0)), Regime::low_temp);
  EXPECT_EQ(classify(FugacityPath(-1, 0.25)), Regime::low_temp_window);
  EXPECT_EQ(classify(FugacityPath(1, 0.5)), Regime::boundary);
  EXPECT_EQ(classify(FugacityPath(-3, 0.5)), Regime::boundary);
  EXPECT_EQ(classify(FugacityPath(5, 0.7)), Regime::critical_window);
  EXPECT_EQ(classify(FugacityPath(2, 0.3)), Regime::high_temp_window);
  EXPECT_EQ(classify(FugacityPath(1, 0)), Regime::high_temp);
  // lambda_n == 1 whatever beta is.
  for (double beta : {0.0, 0.25, 0.5, 1.0}) EXPECT_EQ(classify(FugacityPath(0, beta)), Regime::critical_window);
  EXPECT_EQ(regime_name(Regime::high_temp_window), "HighTempWindow");
}

TEST(AsymptoticMoments, TableValues) {
  EXPECT_DOUBLE_EQ(asymptotic_mean(FugacityPath(-0.5, 0), 1'000'000), 500000);
  EXPECT_DOUBLE_EQ(asymptotic_variance(FugacityPath(-0.5, 0), 1'000'000), 500000);
  EXPECT_NEAR(asymptotic_mean(FugacityPath(0, 1), 10000), 79.788456080286536, 1e-12);
  EXPECT_DOUBLE_EQ(asymptotic_mean(FugacityPath(2, 0), 12345), 0.5);
  EXPECT_DOUBLE_EQ(asymptotic_variance(FugacityPath(1, 0), 777), 2);
  EXPECT_NEAR(asymptotic_mean(FugacityPath(-1, 0.25), 10000), 1000, 1e-9);
  EXPECT_DOUBLE_EQ(asymptotic_variance(FugacityPath(-1, 0.25), 10000), 10000);
  EXPECT_NEAR(asymptotic_mean(FugacityPath(2, 0.25), 10000), 5, 1e-12);
  EXPECT_NEAR(asymptotic_variance(FugacityPath(2, 0.25), 10000), 25, 1e-12);
  EXPECT_THROW(asymptotic_mean(FugacityPath(1, 0), 1), ValidityError);
}

TEST(AsymptoticMoments, BoundarySeamAtZero) {
  const std::int64_t n = 4096;
  EXPECT_DOUBLE_EQ(asymptotic_mean(FugacityPath(0, 0.5), n), asymptotic_mean(FugacityPath(0, 1), n));
  const ConditionalNormalMoments m = conditional_normal_moments(0);
  EXPECT_NEAR(m.mean, kSqrt2OverPi, 1e-15);
  EXPECT_NEAR(m.variance, 1 - 2 / std::numbers::pi, 1e-15);
  // The Boundary formula at alpha -> 0 approaches the CriticalWindow one.
  const double boundary = asymptotic_variance(FugacityPath(1e-9, 0.5), n);
  EXPECT_NEAR(boundary / asymptotic_variance(FugacityPath(0, 1), n), 1, 1e-8);
}

TEST(ConditionalNormal, FrozenValues) {
  // mpmath, 30 digits.
  struct Case {
    double alpha, mean, var;
  };
  for (const Case& c : {Case{1, 1.5251352761609812, 0.19909766557034879}, Case{2.5, 2.8227447976639073, 0.088973801421115443},
                        Case{-1, 0.28759997093917836, 0.6296862857766054}}) {
    const auto m = conditional_normal_moments(c.alpha);
    EXPECT_NEAR(m.mean, c.mean, 1e-14 * c.mean) << c.alpha;
    EXPECT_NEAR(m.variance, c.var, 1e-12) << c.alpha;
  }
  const auto far = conditional_normal_moments(-10);
  EXPECT_NEAR(far.mean, 0, 1e-3);
  EXPECT_NEAR(far.variance, 1, 1e-3);
  for (double a = -5; a < 30; a += 0.5) {
    const auto m = conditional_normal_moments(a);
    EXPECT_GT(m.mean, std::max(a, 0.0));
    EXPECT_GT(m.variance, 0);
    EXPECT_LT(m.variance, 1);
  }
}

TEST(ConditionalNormal, MonteCarloRejection) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  double sum = 0, sum2 = 0;
  int kept = 0;
  while (kept < 200000) {
    const double x = normal(rng);
    if (x <= 1) continue;
    sum += x;
    sum2 += x * x;
    ++kept;
  }
  const double mean = sum / kept;
  const double var = sum2 / kept - mean * mean;
  const auto m = conditional_normal_moments(1);
  EXPECT_LT(std::fabs(mean - m.mean), 4 * std::sqrt(var / kept));
  EXPECT_NEAR(var, m.variance, 0.01);
}

TEST(HnAsymptotic, DisplayedCorrections) {
  EXPECT_NEAR(h_n_asymptotic(FugacityPath(1, 0), 1000), 1000 * (1 + 2e-3 - 6e-6), 1e-10);
  EXPECT_NEAR(h_n_asymptotic(FugacityPath(0, 0.3), 10000), kSqrt2OverPi * 100, 1e-12);
  // beta <= 1/3 switches on the n^{beta-1}/alpha term.
  const double n = 1e4;
  const double at = h_n_asymptotic(FugacityPath(2, 1.0 / 3), 10000);
  const double b = 1.0 / 3;
  const double want = 2 * std::pow(n, 1 - b) *
                      (1 + std::pow(n, 2 * b - 1) / 4 + std::pow(n, b - 1) / 2 - 2 * std::pow(n, 4 * b - 2) / 16);
  EXPECT_NEAR(at / want, 1, 1e-14);
  const double above = h_n_asymptotic(FugacityPath(2, 0.34), 10000);
  const double want_above = 2 * std::pow(n, 0.66) * (1 + std::pow(n, -0.32) / 4 - 2 * std::pow(n, -0.64) / 16);
  EXPECT_NEAR(above / want_above, 1, 1e-14);
}

TEST(HnAsymptotic, LowTemperatureUsesEta) {
  const FugacityPath p(-0.5, 0.25);
  const std::int64_t n = 10000;
  const double lambda = 1 - 0.5 * std::pow(1e4, -0.25);
  const double e = eta(lambda);
  EXPECT_NEAR(h_n_asymptotic(p, n) / (std::sqrt(n / (2 * std::numbers::pi)) * std::exp(-n * e * e / 2)), 1, 1e-13);
  // The literal exponent differs only in the o(1) inside the exponent.
  EXPECT_NEAR(std::log(h_n_asymptotic_literal(p, n)),
              0.5 * std::log(n / (2 * std::numbers::pi)) - 0.125 * std::sqrt(1e4), 1e-12);
  EXPECT_NEAR(log_h_n_asymptotic(FugacityPath(-0.5, 0), 100000),
              0.5 * std::log(1e5 / (2 * std::numbers::pi)) - 1e5 * (-0.5 - std::log(0.5)), 1e-6);
}

TEST(HnAsymptotic, RatioToExactTendsToOne) {
  for (const FugacityPath& p : {FugacityPath(-0.5, 0), FugacityPath(-1, 0.25), FugacityPath(1, 0.5),
                                FugacityPath(0, 1), FugacityPath(1, 0.25), FugacityPath(1, 0)}) {
    double prev = INFINITY;
    for (std::int64_t n : {1000, 2000, 4000, 8000, 16000}) {
      const double log_exact = -log_h_n(static_cast<double>(n), p.nu(n));
      const double gap = std::fabs(log_h_n_asymptotic(p, n) - log_exact);
      EXPECT_LE(gap, prev * (1 + 1e-9) + 1e-13) << regime_name(classify(p)) << " n=" << n;
      prev = gap;
    }
    EXPECT_LT(prev, 0.01) << regime_name(classify(p));
  }
}

}  // namespace
}  // namespace knsaw
