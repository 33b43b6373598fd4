#include "knsaw/limit_laws.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "knsaw/errors.hpp"
#include "knsaw/gamma_kernel.hpp"

namespace knsaw {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr int kMinGridPoints = 200;

double truncated_normal_cdf(double alpha, double y) {
  if (y <= alpha) return 0.0;
  // 1 - Phibar(y)/Phibar(alpha), in log space so large alpha does not underflow.
  return -std::expm1(log_normal_tail(y) - log_normal_tail(alpha));
}

// Monotone bisection; f increasing on [lo, hi] with f(lo) <= target <= f(hi).
template <class F>
double bisect(F f, double target, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1 + std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string law_name(const LimitLaw& law) {
  return std::visit(overloaded{
                        [](const StandardNormal&) { return std::string("StandardNormal"); },
                        [](const TruncatedNormal& t) { return "TruncatedNormal(" + std::to_string(t.alpha) + ")"; },
                        [](const HalfNormal&) { return std::string("HalfNormal"); },
                        [](const UnitExponential&) { return std::string("UnitExponential"); },
                        [](const ShiftedGeometric& g) { return "ShiftedGeometric(" + std::to_string(g.alpha) + ")"; },
                    },
                    law);
}

double limit_cdf(const LimitLaw& law, double y) {
  return std::visit(overloaded{
                        [y](const StandardNormal&) { return normal_tail(-y); },
                        [y](const TruncatedNormal& t) { return truncated_normal_cdf(t.alpha, y); },
                        [y](const HalfNormal&) { return truncated_normal_cdf(0.0, y); },
                        [y](const UnitExponential&) { return y < 0 ? 0.0 : -std::expm1(-y); },
                        [y](const ShiftedGeometric& g) {
                          return y < 1 ? 0.0 : -std::expm1(-std::floor(y) * std::log1p(g.alpha));
                        },
                    },
                    law);
}

double limit_quantile(const LimitLaw& law, double p) {
  if (!(p > 0 && p < 1)) throw DomainError("quantile level must lie in (0, 1)");
  return std::visit(overloaded{
                        [p](const StandardNormal&) {
                          return bisect([](double y) { return normal_tail(-y); }, p, -40.0, 40.0);
                        },
                        [p](const TruncatedNormal& t) {
                          return bisect([&](double y) { return truncated_normal_cdf(t.alpha, y); }, p, t.alpha,
                                        std::max(t.alpha, 0.0) + 40.0);
                        },
                        [p](const HalfNormal&) {
                          return bisect([](double y) { return truncated_normal_cdf(0.0, y); }, p, 0.0, 40.0);
                        },
                        [p](const UnitExponential&) { return -std::log1p(-p); },
                        [p](const ShiftedGeometric& g) {
                          // smallest integer k >= 1 with 1 - (1+alpha)^{-k} >= p
                          return std::max(1.0, std::ceil(-std::log1p(-p) / std::log1p(g.alpha) - 1e-12));
                        },
                    },
                    law);
}

LimitLaw limit_law(const FugacityPath& path) {
  switch (classify(path)) {
    case Regime::low_temp:
    case Regime::low_temp_window: return StandardNormal{};
    case Regime::boundary: return TruncatedNormal{path.alpha()};
    case Regime::critical_window: return HalfNormal{};
    case Regime::high_temp_window: return UnitExponential{};
    case Regime::high_temp: return ShiftedGeometric{path.alpha()};
  }
  return StandardNormal{};
}

double kappa(const FugacityPath& path, std::int64_t n, double y) {
  if (n < 2) throw ValidityError("kappa requires n >= 2");
  const double a = path.alpha();
  const double b = path.beta();
  const double nd = static_cast<double>(n);
  switch (classify(path)) {
    case Regime::low_temp: return std::fabs(a) * nd + y * std::sqrt((1 + a) * nd);
    case Regime::low_temp_window: return std::fabs(a) * std::pow(nd, 1 - b) + y * std::sqrt(nd);
    case Regime::boundary: return (y - a) * std::sqrt(nd);
    case Regime::critical_window: return y * std::sqrt(nd);
    case Regime::high_temp_window: return y * std::pow(nd, b) / a;
    case Regime::high_temp: return y - 1;
  }
  return 0;
}

double exact_standardized_cdf(const FugacityPath& path, const SawEnsemble& ens, double y) {
  return 1.0 - tail(ens, kappa(path, ens.n(), y));
}

double exact_standardized_cdf(const FugacityPath& path, std::int64_t n, double y) {
  return exact_standardized_cdf(path, path.ensemble(n), y);
}

KsReport ks_distance(const FugacityPath& path, std::int64_t n, const GridSpec& grid, const GammaConfig& config) {
  if (grid.points < kMinGridPoints) {
    throw ArgumentError("KS grid needs at least " + std::to_string(kMinGridPoints) + " points");
  }
  if (!(grid.lower_quantile > 0 && grid.lower_quantile < grid.upper_quantile && grid.upper_quantile < 1)) {
    throw ArgumentError("KS grid quantile range must satisfy 0 < lower < upper < 1");
  }
  const LimitLaw law = limit_law(path);
  const SawEnsemble ens = path.ensemble(n, config);

  std::vector<double> ys;
  std::ostringstream desc;
  if (std::holds_alternative<ShiftedGeometric>(law)) {
    const double last = limit_quantile(law, grid.upper_quantile);
    for (double y = 0; y <= last; y += 1) ys.push_back(y);
    desc << "integer lattice 0.." << last;
  } else {
    ys.reserve(static_cast<std::size_t>(grid.points));
    for (int i = 0; i < grid.points; ++i) {
      const double p = grid.lower_quantile + (grid.upper_quantile - grid.lower_quantile) * i / (grid.points - 1);
      ys.push_back(limit_quantile(law, p));
    }
    desc << grid.points << " quantiles of " << law_name(law) << " in [" << grid.lower_quantile << ", "
         << grid.upper_quantile << "]";
  }

  KsReport report;
  report.n = n;
  report.regime = classify(path);
  report.grid_points = ys.size();
  report.grid = desc.str();
  for (double y : ys) {
    const double d = std::fabs(exact_standardized_cdf(path, ens, y) - limit_cdf(law, y));
    if (d > report.ks_distance) {
      report.ks_distance = d;
      report.argmax_y = y;
    }
  }
  return report;
}

}  // namespace knsaw
