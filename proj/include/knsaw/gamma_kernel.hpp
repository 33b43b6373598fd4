#pragma once

#include <array>
#include <span>
#include <string>

#include "knsaw/log_scale.hpp"

namespace knsaw {

// Coefficient tables for the three expansions used by the kernel:
//   * Tricomi: Gamma(a) Q(a,x) ~ x^{a-1} e^{-x} sum_k b_k(a/x) x^{-k}
//   * uniform (Temme): polynomials q_k(xi) = sum_l a_{k,l} xi^l, deg q_k = 2k
//   * normal tail at large argument: A_k = 2^k Gamma(k+1/2)/Gamma(1/2) = (2k-1)!!
struct ExpansionTables {
  static constexpr int kMaxTerms = 3;

  static double tricomi_b(int k, double x);
  static std::span<const double> temme_a(int k);
  static double temme_q(int k, double xi);
  static double normal_tail_a(int k);
};

class EvalStrategy {
 public:
  enum class Kind { automatic, exact_sum, lower_series, upper_continued_fraction, temme_uniform, tricomi };

  constexpr EvalStrategy() = default;

  static EvalStrategy automatic() { return EvalStrategy(Kind::automatic, 0); }
  static EvalStrategy exact_sum() { return EvalStrategy(Kind::exact_sum, 0); }
  static EvalStrategy lower_series() { return EvalStrategy(Kind::lower_series, 0); }
  static EvalStrategy upper_continued_fraction() { return EvalStrategy(Kind::upper_continued_fraction, 0); }
  // Throws StrategyError unless terms is in [1, ExpansionTables::kMaxTerms].
  static EvalStrategy temme_uniform(int terms);
  static EvalStrategy tricomi(int terms);

  Kind kind() const { return kind_; }
  int terms() const { return terms_; }
  std::string name() const;

  friend bool operator==(const EvalStrategy&, const EvalStrategy&) = default;

 private:
  constexpr EvalStrategy(Kind kind, int terms) : kind_(kind), terms_(terms) {}
  Kind kind_ = Kind::automatic;
  int terms_ = 0;
};

// Switching thresholds and tolerances. Defaults match the documented Auto
// policy; the CLI can override any of them from a key=value file.
struct GammaConfig {
  double exact_sum_max_a = 64;             // ExactSum for integer a <= this
  double series_offset = 1;                // LowerSeries when x < a + offset
  double temme_auto_min_a = 1e4;           // Auto uses TemmeUniform(3) when a > this
  double temme_min_a = 10;                 // TemmeUniform invalid below this
  double temme_cancellation_threshold = 200;  // sqrt(a)*eta above which the cancelled form is used
  double eta_taylor_threshold = 1e-4;      // |lambda-1| below which eta uses its Taylor series
  double tricomi_min_ratio = 1.05;         // x/a must be at least this for Tricomi
  double precision_warning = 1e-6;         // flag asymptotic results with larger truncation estimates
  int max_iterations = 200000;
};

// Q(a,x) together with the scaled value sqrt(2 pi a) e^{a eta^2/2} Q(a,x).
// The scaled form stays O(1)-conditioned when Q itself underflows, and is what
// H_n(nu) is built from.
struct GammaQResult {
  double log_q = 0;
  double log_scaled = 0;
  EvalStrategy strategy;
  double truncation_estimate = 0;  // relative; asymptotic strategies only
  bool precision_warning = false;

  double value() const;
};

GammaQResult evaluate_gamma_q(double a, double x, EvalStrategy strategy = {}, const GammaConfig& config = {});

// Regularized upper incomplete gamma Q(a,x). Accepts a == 0 for x > 0 (returns 0).
double reg_gamma_q(double a, double x, EvalStrategy strategy = {}, const GammaConfig& config = {});
double log_reg_gamma_q(double a, double x, EvalStrategy strategy = {}, const GammaConfig& config = {});

// Uniform asymptotic expansion with `terms` correction terms, a >= config.temme_min_a.
GammaQResult temme_uniform_q(double a, double x, int terms, const GammaConfig& config = {});

// Gamma(a) Q(a,x) via the Tricomi expansion; requires x/a >= config.tricomi_min_ratio.
LogScaleValue tricomi_gamma_q(double a, double x, int terms, const GammaConfig& config = {});

// eta(lambda) = sign(lambda-1) sqrt(2 (lambda - 1 - log lambda)).
double eta(double lambda, const GammaConfig& config = {});
// Same function parametrized by xi = lambda - 1, for callers that have xi exactly.
double eta_from_xi(double xi, const GammaConfig& config = {});

// xi - log(1 + xi), accurate for small |xi|.
double excess_log(double xi);

// Gamma*(n) = sqrt(n/2pi) e^n n^{-n} Gamma(n).
double gamma_star(double n);
double log_gamma_star(double n);

// log(x^a e^{-x} / Gamma(a+1)): the Poisson mass at a for integer a.
double log_poisson_kernel(double a, double x);

// log of exp(-a eta^2/2) / sqrt(2 pi a) with lambda = x/a.
double log_uniform_prefactor(double a, double x);

double normal_density(double x);
// Upper tail of the standard normal.
double normal_tail(double x);
double log_normal_tail(double x);
// Mills ratio normal_tail(x) / normal_density(x).
double normal_mills_ratio(double x);

// Coefficient c_k(eta) of the uniform expansion, k in [0, 3].
double temme_coefficient(int k, double eta_value, double xi);

}  // namespace knsaw
