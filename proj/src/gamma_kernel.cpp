#include "knsaw/gamma_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "knsaw/errors.hpp"

namespace knsaw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2 pi)

bool is_integer(double a) { return std::floor(a) == a; }

void check_q_domain(double a, double x) {
  if (std::isnan(a) || std::isnan(x)) throw DomainError("Q(a,x): NaN argument");
  if (a < 0) throw DomainError("Q(a,x) requires a >= 0");
  if (x < 0) throw DomainError("Q(a,x) requires x >= 0");
  if (a == 0 && x == 0) throw DomainError("Q(0,0) is undefined");
}

GammaQResult from_log_q(double log_q, double a, double x, EvalStrategy strategy) {
  GammaQResult r;
  r.log_q = std::min(log_q, 0.0);
  r.log_scaled = r.log_q - log_uniform_prefactor(a, x);
  r.strategy = strategy;
  return r;
}

GammaQResult from_log_scaled(double log_scaled, double a, double x, EvalStrategy strategy) {
  GammaQResult r;
  r.log_scaled = log_scaled;
  r.log_q = std::min(log_scaled + log_uniform_prefactor(a, x), 0.0);
  r.strategy = strategy;
  return r;
}

GammaQResult q_exact_sum(double a, double x) {
  if (!is_integer(a)) throw StrategyError("ExactSum requires an integer first argument");
  const auto terms = static_cast<long long>(a);
  std::vector<double> logs(static_cast<std::size_t>(terms));
  double peak = -kInf;
  for (long long j = 0; j < terms; ++j) {
    logs[static_cast<std::size_t>(j)] = log_poisson_kernel(static_cast<double>(j), x);
    peak = std::max(peak, logs[static_cast<std::size_t>(j)]);
  }
  double sum = 0;
  for (double l : logs) sum += std::exp(l - peak);
  return from_log_q(peak + std::log(sum), a, x, EvalStrategy::exact_sum());
}

// Regularized lower gamma P by its power series; returns log Q = log(1 - P).
GammaQResult q_lower_series(double a, double x, const GammaConfig& config) {
  double term = 1.0;
  double sum = 1.0;
  double ap = a;
  int i = 0;
  for (; i < config.max_iterations; ++i) {
    ap += 1;
    term *= x / ap;
    sum += term;
    if (term < sum * kEps * 0.25) break;
  }
  if (i == config.max_iterations) throw StrategyError("LowerSeries did not converge");
  // P = (x^a e^{-x} / Gamma(a+1)) * sum
  const double log_p = log_poisson_kernel(a, x) + std::log(sum);
  const double p = std::exp(log_p);
  if (p >= 1.0) throw StrategyError("LowerSeries lost all precision (P >= 1); use the continued fraction");
  return from_log_q(std::log1p(-p), a, x, EvalStrategy::lower_series());
}

// Continued fraction for Gamma(a,x) (modified Lentz). The fraction h satisfies
// Q = x^a e^{-x} / Gamma(a) * h, hence scaled Q = a h / Gamma*(a).
GammaQResult q_continued_fraction(double a, double x, const GammaConfig& config) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  int i = 1;
  for (; i <= config.max_iterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  if (i > config.max_iterations || !(h > 0)) throw StrategyError("UpperContinuedFraction did not converge");
  const double log_scaled = std::log(a) + std::log(h) - log_gamma_star(a);
  return from_log_scaled(log_scaled, a, x, EvalStrategy::upper_continued_fraction());
}

GammaQResult q_tricomi(double a, double x, int terms, const GammaConfig& config) {
  const LogScaleValue gq = tricomi_gamma_q(a, x, terms, config);
  GammaQResult r = from_log_q(gq.log_magnitude() - std::lgamma(a), a, x, EvalStrategy::tricomi(terms));
  // Ratio of successive Tricomi terms is about k / (x (1-u)^2).
  const double u = a / x;
  double last = 0, sum = 0;
  for (int k = 0; k < terms; ++k) {
    last = ExpansionTables::tricomi_b(k, u) * std::pow(x, -k);
    sum += last;
  }
  r.truncation_estimate = std::fabs(last / sum) * terms / (x * (1 - u) * (1 - u));
  r.precision_warning = r.truncation_estimate > config.precision_warning;
  return r;
}

}  // namespace

EvalStrategy EvalStrategy::temme_uniform(int terms) {
  if (terms < 1 || terms > ExpansionTables::kMaxTerms) {
    throw StrategyError("TemmeUniform term count must be in {1,2,3}");
  }
  return EvalStrategy(Kind::temme_uniform, terms);
}

EvalStrategy EvalStrategy::tricomi(int terms) {
  if (terms < 1 || terms > ExpansionTables::kMaxTerms) {
    throw StrategyError("Tricomi term count must be in {1,2,3}");
  }
  return EvalStrategy(Kind::tricomi, terms);
}

std::string EvalStrategy::name() const {
  switch (kind_) {
    case Kind::automatic: return "auto";
    case Kind::exact_sum: return "exact_sum";
    case Kind::lower_series: return "lower_series";
    case Kind::upper_continued_fraction: return "upper_continued_fraction";
    case Kind::temme_uniform: return "temme_uniform(" + std::to_string(terms_) + ")";
    case Kind::tricomi: return "tricomi(" + std::to_string(terms_) + ")";
  }
  return "unknown";
}

double GammaQResult::value() const { return std::exp(log_q); }

double excess_log(double xi) {
  if (xi <= -1.0) return xi == -1.0 ? kInf : std::numeric_limits<double>::quiet_NaN();
  if (std::fabs(xi) < 0.25) {
    // sum_{k>=2} (-1)^k xi^k / k
    double power = xi * xi;
    double sum = 0;
    for (int k = 2; k < 64; ++k) {
      const double term = power / k;
      sum += (k % 2 == 0) ? term : -term;
      if (std::fabs(term) < std::fabs(sum) * kEps * 0.25) break;
      power *= xi;
    }
    return sum;
  }
  return xi - std::log1p(xi);
}

double eta_from_xi(double xi, const GammaConfig& config) {
  if (!(xi > -1.0)) throw DomainError("eta requires lambda > 0");
  if (std::fabs(xi) < config.eta_taylor_threshold) {
    return xi * (1.0 + xi * (-1.0 / 3 + xi * (7.0 / 36 + xi * (-73.0 / 540))));
  }
  const double magnitude = std::sqrt(2.0 * excess_log(xi));
  return xi < 0 ? -magnitude : magnitude;
}

double eta(double lambda, const GammaConfig& config) {
  if (!(lambda > 0)) throw DomainError("eta requires lambda > 0");
  if (std::isinf(lambda)) return kInf;
  return eta_from_xi(lambda - 1.0, config);
}

double log_gamma_star(double n) {
  if (!(n > 0)) throw DomainError("Gamma* requires n > 0");
  if (n >= 10) {
    // Stirling series: sum_k B_{2k} / (2k (2k-1) n^{2k-1})
    static constexpr std::array<double, 8> kStirling = {
        1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};
    const double inv = 1.0 / n;
    const double inv2 = inv * inv;
    double acc = 0;
    for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) acc = acc * inv2 + *it;
    return acc * inv;
  }
  return 0.5 * (std::log(n) - kLogTwoPi) + n - n * std::log(n) + std::lgamma(n);
}

double gamma_star(double n) { return std::exp(log_gamma_star(n)); }

double log_uniform_prefactor(double a, double x) {
  if (a == 0) return 0;
  const double xi = (x - a) / a;
  return -a * excess_log(xi) - 0.5 * (kLogTwoPi + std::log(a));
}

double log_poisson_kernel(double a, double x) {
  if (a < 0 || x < 0) throw DomainError("Poisson kernel requires a, x >= 0");
  if (a == 0) return -x;
  if (x == 0) return -kInf;
  return log_uniform_prefactor(a, x) - log_gamma_star(a);
}

double normal_density(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }

namespace {

// sum_k (-1)^k A_k / x^{2k}, truncated at the smallest term. x > 8.
double normal_tail_series(double x) {
  const double inv2 = 1.0 / (x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = -term * (2 * k - 1) * inv2;
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < kEps * 0.25) break;
  }
  return sum;
}

constexpr double kAsymptoticCut = 8.0;

}  // namespace

double normal_tail(double x) {
  if (std::isnan(x)) throw DomainError("normal_tail: NaN argument");
  if (x > kAsymptoticCut) return normal_density(x) / x * normal_tail_series(x);
  if (x < -kAsymptoticCut) return 1.0 - normal_tail(-x);
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double log_normal_tail(double x) {
  if (x > kAsymptoticCut) {
    return -0.5 * x * x - std::log(x) - 0.5 * kLogTwoPi + std::log(normal_tail_series(x));
  }
  if (x < -kAsymptoticCut) return std::log1p(-normal_tail(-x));
  return std::log(normal_tail(x));
}

double normal_mills_ratio(double x) {
  if (x > kAsymptoticCut) return normal_tail_series(x) / x;
  return 0.5 * std::erfc(x / std::numbers::sqrt2) * std::sqrt(2 * std::numbers::pi) * std::exp(0.5 * x * x);
}

GammaQResult temme_uniform_q(double a, double x, int terms, const GammaConfig& config) {
  if (!(a >= config.temme_min_a)) throw ValidityError("uniform expansion requires a >= " + std::to_string(config.temme_min_a));
  if (terms < 1 || terms > ExpansionTables::kMaxTerms) throw ValidityError("uniform expansion term count must be in {1,2,3}");
  if (!(x >= 0)) throw DomainError("Q(a,x) requires x >= 0");
  const EvalStrategy strategy = EvalStrategy::temme_uniform(terms);
  if (x == 0) return GammaQResult{0.0, -log_uniform_prefactor(a, x), strategy};

  const double xi = (x - a) / a;
  const double eta_value = eta_from_xi(xi, config);
  const double root_a = std::sqrt(a);
  const double t = root_a * eta_value;

  double series = 0;
  double a_power = 1;
  for (int k = 0; k < terms; ++k) {
    series += temme_coefficient(k, eta_value, xi) / a_power;
    a_power *= a;
  }
  const double omitted = std::fabs(temme_coefficient(terms, eta_value, xi)) / a_power;

  GammaQResult r;
  if (eta_value <= 0) {
    const double prefactor = std::exp(log_uniform_prefactor(a, x));
    const double q = normal_tail(t) + prefactor * series;
    r = from_log_q(std::log(q), a, x, strategy);
    r.truncation_estimate = prefactor * omitted / q;
  } else if (t >= config.temme_cancellation_threshold) {
    // Normal tail replaced by its large-argument expansion, leaving
    // sum_k (-1)^k q_k(xi) / (a^k xi^{2k+1}).
    double scaled = 0;
    double ak = 1;
    for (int k = 0; k < terms; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      scaled += sign * ExpansionTables::temme_q(k, xi) / (ak * std::pow(xi, 2 * k + 1));
      ak *= a;
    }
    const double phibar_omitted = ExpansionTables::normal_tail_a(terms) / (ak * std::pow(eta_value, 2 * terms + 1));
    r = from_log_scaled(std::log(scaled), a, x, strategy);
    r.truncation_estimate = (omitted + phibar_omitted) / scaled;
  } else {
    const double scaled = root_a * normal_mills_ratio(t) + series;
    r = from_log_scaled(std::log(scaled), a, x, strategy);
    r.truncation_estimate = omitted / scaled;
  }
  r.precision_warning = r.truncation_estimate > config.precision_warning;
  return r;
}

LogScaleValue tricomi_gamma_q(double a, double x, int terms, const GammaConfig& config) {
  if (terms < 1 || terms > ExpansionTables::kMaxTerms) throw ValidityError("Tricomi term count must be in {1,2,3}");
  if (!(a > 0) || !(x > 0)) throw DomainError("Tricomi expansion requires a, x > 0");
  if (x / a < config.tricomi_min_ratio) {
    throw ValidityError("Tricomi expansion requires x/a >= " + std::to_string(config.tricomi_min_ratio));
  }
  const double u = a / x;
  double sum = 0;
  double x_power = 1;
  for (int k = 0; k < terms; ++k) {
    sum += ExpansionTables::tricomi_b(k, u) / x_power;
    x_power *= x;
  }
  const double log_mag = (a - 1) * std::log(x) - x + std::log(std::fabs(sum));
  return LogScaleValue::from_log(log_mag, sum > 0 ? LogScaleValue::Sign::positive : LogScaleValue::Sign::negative);
}

GammaQResult evaluate_gamma_q(double a, double x, EvalStrategy strategy, const GammaConfig& config) {
  check_q_domain(a, x);
  if (a == 0) return GammaQResult{-kInf, -kInf, strategy};
  if (x == 0) return GammaQResult{0.0, -log_uniform_prefactor(a, x), strategy};

  using Kind = EvalStrategy::Kind;
  if (strategy.kind() == Kind::automatic) {
    if (is_integer(a) && a <= config.exact_sum_max_a) return q_exact_sum(a, x);
    if (a > config.temme_auto_min_a) return temme_uniform_q(a, x, ExpansionTables::kMaxTerms, config);
    if (x < a + config.series_offset) return q_lower_series(a, x, config);
    return q_continued_fraction(a, x, config);
  }
  switch (strategy.kind()) {
    case Kind::exact_sum: return q_exact_sum(a, x);
    case Kind::lower_series: return q_lower_series(a, x, config);
    case Kind::upper_continued_fraction: return q_continued_fraction(a, x, config);
    case Kind::temme_uniform:
      if (a < config.temme_min_a) throw StrategyError("TemmeUniform is invalid for a < " + std::to_string(config.temme_min_a));
      return temme_uniform_q(a, x, strategy.terms(), config);
    case Kind::tricomi:
      if (x / a < config.tricomi_min_ratio) throw StrategyError("Tricomi is invalid for x/a below the ratio threshold");
      return q_tricomi(a, x, strategy.terms(), config);
    case Kind::automatic: break;
  }
  throw StrategyError("unknown strategy");
}

double log_reg_gamma_q(double a, double x, EvalStrategy strategy, const GammaConfig& config) {
  return evaluate_gamma_q(a, x, strategy, config).log_q;
}

double reg_gamma_q(double a, double x, EvalStrategy strategy, const GammaConfig& config) {
  return evaluate_gamma_q(a, x, strategy, config).value();
}

}  // namespace knsaw
