#include "knsaw/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "knsaw/errors.hpp"
#include "knsaw/gamma_kernel.hpp"

namespace knsaw {
namespace {

void check_n(std::int64_t n) {
  if (n < 2) throw ValidityError("asymptotic formulas require n >= 2");
}

// phi(alpha) / Phibar(alpha)
double inverse_mills(double alpha) { return 1.0 / normal_mills_ratio(alpha); }

}  // namespace

FugacityPath::FugacityPath(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ValidityError("fugacity path parameters must be finite");
  if (beta < 0) throw ValidityError("fugacity path requires beta >= 0");
  if (beta == 0 && alpha <= -1) throw ValidityError("beta = 0 requires alpha > -1");
}

double FugacityPath::lambda(std::int64_t n) const {
  if (n < 1) throw ValidityError("fugacity path evaluated at n < 1");
  const double lam = 1.0 + alpha_ * std::pow(static_cast<double>(n), -beta_);
  if (!(lam > 0)) {
    throw ValidityError("lambda_n = " + std::to_string(lam) + " <= 0 at n = " + std::to_string(n));
  }
  return lam;
}

SawEnsemble FugacityPath::ensemble(std::int64_t n, const GammaConfig& config) const {
  return SawEnsemble::from_rate(n, nu(n), config);
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::low_temp: return "LowTemp";
    case Regime::low_temp_window: return "LowTempWindow";
    case Regime::boundary: return "Boundary";
    case Regime::critical_window: return "CriticalWindow";
    case Regime::high_temp_window: return "HighTempWindow";
    case Regime::high_temp: return "HighTemp";
  }
  return "unknown";
}

Regime classify(const FugacityPath& path) {
  const double a = path.alpha();
  const double b = path.beta();
  if (a == 0 || b > 0.5) return Regime::critical_window;
  if (b == 0.5) return Regime::boundary;
  if (b == 0) return a < 0 ? Regime::low_temp : Regime::high_temp;
  return a < 0 ? Regime::low_temp_window : Regime::high_temp_window;
}

ConditionalNormalMoments conditional_normal_moments(double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("conditional normal moments need finite alpha");
  const double r = inverse_mills(alpha);
  return {r, 1.0 + r * (alpha - r)};
}

double asymptotic_mean(const FugacityPath& path, std::int64_t n) {
  check_n(n);
  const double a = path.alpha();
  const double b = path.beta();
  const double nd = static_cast<double>(n);
  switch (classify(path)) {
    case Regime::low_temp: return std::fabs(a) * nd;
    case Regime::low_temp_window: return std::fabs(a) * std::pow(nd, 1 - b);
    case Regime::boundary: return (conditional_normal_moments(a).mean - a) * std::sqrt(nd);
    case Regime::critical_window: return std::sqrt(2 / std::numbers::pi) * std::sqrt(nd);
    case Regime::high_temp_window: return std::pow(nd, b) / a;
    case Regime::high_temp: return 1 / a;
  }
  return 0;
}

double asymptotic_variance(const FugacityPath& path, std::int64_t n) {
  check_n(n);
  const double a = path.alpha();
  const double b = path.beta();
  const double nd = static_cast<double>(n);
  switch (classify(path)) {
    case Regime::low_temp: return (1 + a) * nd;
    case Regime::low_temp_window: return nd;
    case Regime::boundary: return conditional_normal_moments(a).variance * nd;
    case Regime::critical_window: return (1 - 2 / std::numbers::pi) * nd;
    case Regime::high_temp_window: return std::pow(nd, 2 * b) / (a * a);
    case Regime::high_temp: return (1 + a) / (a * a);
  }
  return 0;
}

double h_n_asymptotic(const FugacityPath& path, std::int64_t n) {
  check_n(n);
  const double a = path.alpha();
  const double b = path.beta();
  const double nd = static_cast<double>(n);
  switch (classify(path)) {
    case Regime::low_temp:
    case Regime::low_temp_window: {
      const double e = eta(path.lambda(n));
      return std::sqrt(nd / (2 * std::numbers::pi)) * std::exp(-nd * e * e / 2);
    }
    case Regime::boundary: return inverse_mills(a) * std::sqrt(nd);
    case Regime::critical_window: return std::sqrt(2 / std::numbers::pi) * std::sqrt(nd);
    case Regime::high_temp_window: {
      double bracket = 1 + std::pow(nd, 2 * b - 1) / (a * a) - 2 * std::pow(nd, 4 * b - 2) / std::pow(a, 4);
      if (b <= 1.0 / 3) bracket += std::pow(nd, b - 1) / a;
      return a * std::pow(nd, 1 - b) * bracket;
    }
    case Regime::high_temp:
      return a * nd * (1 + (1 + a) / (a * a * nd) - (1 + a) * (2 + a) / (std::pow(a, 4) * nd * nd));
  }
  return 0;
}

double log_h_n_asymptotic(const FugacityPath& path, std::int64_t n) {
  check_n(n);
  const Regime regime = classify(path);
  if (regime == Regime::low_temp || regime == Regime::low_temp_window) {
    const double nd = static_cast<double>(n);
    const double e = eta(path.lambda(n));
    return 0.5 * std::log(nd / (2 * std::numbers::pi)) - nd * e * e / 2;
  }
  return std::log(h_n_asymptotic(path, n));
}

double h_n_asymptotic_literal(const FugacityPath& path, std::int64_t n) {
  check_n(n);
  const double a = path.alpha();
  const double nd = static_cast<double>(n);
  const double prefactor = std::sqrt(nd / (2 * std::numbers::pi));
  switch (classify(path)) {
    case Regime::low_temp: return prefactor * std::exp(-nd * (a - std::log1p(a)));
    case Regime::low_temp_window: return prefactor * std::exp(-a * a / 2 * std::pow(nd, 1 - 2 * path.beta()));
    default: return h_n_asymptotic(path, n);
  }
}

}  // namespace knsaw
