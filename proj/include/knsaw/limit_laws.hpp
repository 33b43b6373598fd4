#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "knsaw/asymptotics.hpp"

namespace knsaw {

struct StandardNormal {};
// X | X > alpha for standard normal X.
struct TruncatedNormal {
  double alpha;
};
struct HalfNormal {};
struct UnitExponential {};
// W with P(W > y) = (1+alpha)^{-floor(y)} for y >= 1; mean 1 + 1/alpha.
struct ShiftedGeometric {
  double alpha;
};

using LimitLaw = std::variant<StandardNormal, TruncatedNormal, HalfNormal, UnitExponential, ShiftedGeometric>;

std::string law_name(const LimitLaw& law);
double limit_cdf(const LimitLaw& law, double y);
// Smallest y with limit_cdf(law, y) >= p, for p in (0, 1).
double limit_quantile(const LimitLaw& law, double p);

// The limit of the standardized length along the path.
LimitLaw limit_law(const FugacityPath& path);

// Standardization: L_n <= kappa_n(y) converges to the limit law's CDF at y.
double kappa(const FugacityPath& path, std::int64_t n, double y);

// 1 - P(L_n > kappa_n(y)) under z_n = 1/lambda_n.
double exact_standardized_cdf(const FugacityPath& path, std::int64_t n, double y);
// Reuses an already built ensemble (must be path.ensemble(n)).
double exact_standardized_cdf(const FugacityPath& path, const SawEnsemble& ens, double y);

// Evaluation points: `points` quantiles of the limit law, evenly spaced in
// probability between lower_quantile and upper_quantile. For the discrete
// geometric law the integer lattice covering the same quantile range is used
// instead, which is where both CDFs jump.
struct GridSpec {
  int points = 256;
  double lower_quantile = 1e-3;
  double upper_quantile = 1 - 1e-3;
};

struct KsReport {
  std::int64_t n = 0;
  Regime regime = Regime::critical_window;
  double ks_distance = 0;
  double argmax_y = 0;  // grid point attaining the maximum
  std::size_t grid_points = 0;
  std::string grid;  // human-readable description
};

// Throws ArgumentError for fewer than 200 points or a degenerate quantile range.
KsReport ks_distance(const FugacityPath& path, std::int64_t n, const GridSpec& grid = {},
                     const GammaConfig& config = {});

}  // namespace knsaw
