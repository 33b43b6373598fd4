#include "knsaw/gamma_kernel.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "knsaw/errors.hpp"

namespace knsaw {
namespace {

// Reference values below were computed with mpmath at 40 digits.

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

TEST(RegGammaQ, PoissonTailAtIntegerA) {
  EXPECT_DOUBLE_EQ(reg_gamma_q(1, 2), std::exp(-2.0));
  EXPECT_NEAR(reg_gamma_q(2, 1), 2 * std::exp(-1.0), 1e-16);
  EXPECT_LT(rel(reg_gamma_q(10, 10), 0.45792971447185221), 1e-14);
}

TEST(RegGammaQ, FrozenValuesAcrossStrategies) {
  struct Case {
    double a, x, log_q;
  };
  const std::vector<Case> cases = {
      {100, 50, -3.2000653250971462e-10},     // lower series, Q ~ 1
      {0.5, 2, -3.0900371531220866},          // continued fraction, a < 1
      {10.5, 30, -11.268279691085614},        // continued fraction
      {2.5, 0.1, -0.00088653164188767325},    // lower series
      {64, 70, -1.5100120883374443},          // last exact sum
      {65, 70, -1.3504516804474636},          // first non-exact integer
      {200.5, 150, -4.9034392099020603e-5},   // lower series
      {1000, 2000, -311.22771100999898},      // deep upper tail
      {1e5, 1.1e5, -473.35593367376477},      // uniform expansion
      {1e6, 2e6, -306860.6461359502},         // uniform expansion, cancelled form
  };
  for (const Case& c : cases) {
    const double got = log_reg_gamma_q(c.a, c.x);
    EXPECT_LT(std::fabs(std::expm1(got - c.log_q)), 2e-13) << "a=" << c.a << " x=" << c.x;
  }
}

TEST(RegGammaQ, ForcedStrategiesAgree) {
  for (double a : {12.0, 40.0, 150.0}) {
    for (double f : {1.2, 2.0, 4.0}) {
      const double x = a * f;
      const double base = log_reg_gamma_q(a, x, EvalStrategy::exact_sum());
      EXPECT_NEAR(log_reg_gamma_q(a, x, EvalStrategy::upper_continued_fraction()), base, 1e-12 * std::fabs(base) + 1e-14);
      if (x < a + 1) EXPECT_NEAR(log_reg_gamma_q(a, x, EvalStrategy::lower_series()), base, 1e-13);
    }
  }
}

TEST(RegGammaQ, EdgeCases) {
  EXPECT_EQ(reg_gamma_q(5, 0), 1.0);
  EXPECT_EQ(reg_gamma_q(0, 3), 0.0);
  EXPECT_THROW(reg_gamma_q(0, 0), DomainError);
  EXPECT_THROW(reg_gamma_q(-1, 1), DomainError);
  EXPECT_THROW(reg_gamma_q(1, -1), DomainError);
  EXPECT_THROW(reg_gamma_q(2.5, 3, EvalStrategy::exact_sum()), StrategyError);
  EXPECT_THROW(reg_gamma_q(5, 10, EvalStrategy::temme_uniform(2)), StrategyError);
  EXPECT_THROW(reg_gamma_q(100, 101, EvalStrategy::tricomi(2)), StrategyError);
  EXPECT_THROW(EvalStrategy::temme_uniform(4), StrategyError);
  EXPECT_THROW(EvalStrategy::tricomi(0), StrategyError);
}

TEST(RegGammaQ, MonotoneInBothArguments) {
  double prev = 0;
  for (int a = 1; a <= 300; ++a) {
    const double q = reg_gamma_q(a, 150);
    EXPECT_GE(q, prev);
    prev = q;
  }
  prev = 1;
  for (double x = 0.5; x < 400; x += 0.5) {
    const double q = reg_gamma_q(150.5, x);
    EXPECT_LE(q, prev);
    prev = q;
  }
}

TEST(RegGammaQ, AutoReportsStrategy) {
  EXPECT_EQ(evaluate_gamma_q(10, 3).strategy, EvalStrategy::exact_sum());
  EXPECT_EQ(evaluate_gamma_q(10.5, 3).strategy, EvalStrategy::lower_series());
  EXPECT_EQ(evaluate_gamma_q(10.5, 30).strategy, EvalStrategy::upper_continued_fraction());
  EXPECT_EQ(evaluate_gamma_q(2e4, 2e4).strategy, EvalStrategy::temme_uniform(3));
  EXPECT_EQ(EvalStrategy::tricomi(2).name(), "tricomi(2)");
}

TEST(TemmeUniform, ErrorShrinksWithTerms) {
  // Q(100, 120): each extra term gains roughly a factor a.
  const double want = log_reg_gamma_q(100, 120, EvalStrategy::exact_sum());
  double prev_err = 1;
  for (int terms = 1; terms <= 3; ++terms) {
    const GammaQResult r = temme_uniform_q(100, 120, terms);
    const double err = std::fabs(std::expm1(r.log_q - want));
    EXPECT_LT(err, prev_err / 20) << terms;
    // The reported estimate is the size of the first omitted term.
    EXPECT_LT(err, 10 * r.truncation_estimate);
    prev_err = err;
  }
}

TEST(TemmeUniform, ContinuousAcrossTransitionPoint) {
  // Near lambda = 1 the coefficients switch to their Maclaurin series.
  const double a = 1e4;
  for (double lambda : {0.7, 0.99, 0.9999999, 1.0, 1.0000001, 1.01, 1.3, 1.6, 3.0}) {
    const double x = a * lambda;
    const double want = lambda < 1 + 1 / a ? log_reg_gamma_q(a, x, EvalStrategy::lower_series())
                                            : log_reg_gamma_q(a, x, EvalStrategy::upper_continued_fraction());
    EXPECT_LT(std::fabs(std::expm1(temme_uniform_q(a, x, 3).log_q - want)), 1e-12) << lambda;
  }
}

TEST(TemmeUniform, CoefficientSeriesMatchesKnownValues) {
  EXPECT_NEAR(temme_coefficient(0, 0, 0), -1.0 / 3, 1e-16);
  EXPECT_NEAR(temme_coefficient(1, 0, 0), -1.0 / 540, 1e-17);
  EXPECT_NEAR(temme_coefficient(2, 0, 0), 25.0 / 6048, 1e-17);
  // The series and the closed form agree just either side of the switch radius.
  for (double e : {-0.49, 0.49, -0.51, 0.51}) {
    const double lambda = [&] {
      // invert eta by bisection
      double lo = e < 0 ? 0.01 : 1.0, hi = e < 0 ? 1.0 : 5.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eta(mid) < e ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }();
    const double xi = lambda - 1;
    for (int k = 0; k <= 2; ++k) {
      const double a_k = ExpansionTables::normal_tail_a(k);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      const double closed =
          sign * (ExpansionTables::temme_q(k, xi) / std::pow(xi, 2 * k + 1) - a_k / std::pow(e, 2 * k + 1));
      EXPECT_NEAR(temme_coefficient(k, e, xi), closed, 1e-9) << "k=" << k << " eta=" << e;
    }
  }
}

TEST(Tricomi, ThreeTermsAtTwiceTheMean) {
  const GammaQResult r = evaluate_gamma_q(1e3, 2e3, EvalStrategy::tricomi(3));
  EXPECT_LT(std::fabs(std::expm1(r.log_q - -311.22771100999898)), 1e-6);
  EXPECT_THROW(tricomi_gamma_q(100, 104, 2), ValidityError);
  // At u = 0 the b_k reduce to the a-free parts of the classical coefficients
  // 1, (a-1), (a-1)(a-2) of Gamma(a,x) ~ x^{a-1} e^{-x} sum_k (...) x^{-k}.
  EXPECT_DOUBLE_EQ(ExpansionTables::tricomi_b(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(ExpansionTables::tricomi_b(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(ExpansionTables::tricomi_b(2, 0), 2.0);
}

TEST(Eta, IdentityOnGrid) {
  for (double lambda = 0.01; lambda < 50; lambda *= 1.07) {
    const double e = eta(lambda);
    const double want = lambda - 1 - std::log(lambda);
    EXPECT_LT(rel(e * e / 2, want), 1e-12) << lambda;
    EXPECT_EQ(e < 0, lambda < 1);
  }
  EXPECT_NEAR(eta(2), 0.78339366788359311, 1e-15);
  EXPECT_NEAR(eta(0.5), -0.6215258330269874, 1e-15);
  EXPECT_NEAR(eta(1.0001), 9.9996666861086581e-5, 1e-19);
  EXPECT_EQ(eta(1), 0.0);
  EXPECT_THROW(eta(0), DomainError);
}

TEST(GammaStar, FrozenValues) {
  EXPECT_LT(rel(gamma_star(1), 1.0844375514192275), 1e-15);
  EXPECT_LT(rel(gamma_star(2.5), 1.0337188909653105), 1e-15);
  EXPECT_LT(rel(gamma_star(10), 1.0083653591324002), 1e-15);
  EXPECT_LT(rel(gamma_star(100), 1.0008336778720121), 1e-15);
  EXPECT_NEAR(gamma_star(1e12), 1.0, 1e-13);
}

TEST(NormalTail, FrozenValues) {
  EXPECT_LT(rel(normal_tail(1.96), 0.024997895148220436), 1e-14);
  EXPECT_DOUBLE_EQ(normal_tail(0), 0.5);
  EXPECT_LT(rel(normal_tail(-3), 0.99865010196836991), 1e-15);
  EXPECT_LT(rel(normal_tail(10), 7.6198530241605261e-24), 1e-14);
  EXPECT_NEAR(log_normal_tail(40), -804.60844201375379, 1e-12);
  EXPECT_NEAR(log_normal_tail(-3), -0.0013508099647481938, 1e-16);
  // Mills ratio is continuous across the switch to the asymptotic series.
  EXPECT_LT(rel(normal_mills_ratio(8 - 1e-9), normal_mills_ratio(8 + 1e-9)), 1e-9);
}

TEST(LogPoissonKernel, MatchesDirectFormula) {
  for (int a = 0; a < 40; ++a) {
    for (double x : {0.5, 3.0, 17.0}) {
      const double direct = a * std::log(x) - x - std::lgamma(a + 1.0);
      EXPECT_NEAR(log_poisson_kernel(a, x), direct, 1e-12 * (1 + std::fabs(direct)));
    }
  }
}

}  // namespace
}  // namespace knsaw
