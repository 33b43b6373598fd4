#pragma once

#include <cstdint>
#include <string_view>

#include "knsaw/saw_exact.hpp"

namespace knsaw {

// z_n = 1/lambda_n with lambda_n = 1 + alpha n^{-beta}.
class FugacityPath {
 public:
  // Throws ValidityError if beta < 0, or beta == 0 and alpha <= -1.
  FugacityPath(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  // Throws ValidityError when lambda_n <= 0 (alpha < 0, beta > 0, small n).
  double lambda(std::int64_t n) const;
  double z(std::int64_t n) const { return 1.0 / lambda(n); }
  double nu(std::int64_t n) const { return static_cast<double>(n) * lambda(n); }
  SawEnsemble ensemble(std::int64_t n, const GammaConfig& config = {}) const;

 private:
  double alpha_;
  double beta_;
};

enum class Regime { low_temp, low_temp_window, boundary, critical_window, high_temp_window, high_temp };

std::string_view regime_name(Regime regime);

// alpha == 0 is CriticalWindow for every beta: lambda_n is identically 1.
Regime classify(const FugacityPath& path);

// Leading-order mean and variance of L_n along the path.
double asymptotic_mean(const FugacityPath& path, std::int64_t n);
double asymptotic_variance(const FugacityPath& path, std::int64_t n);

// Mean and variance of X | X > alpha for standard normal X.
struct ConditionalNormalMoments {
  double mean;
  double variance;
};
ConditionalNormalMoments conditional_normal_moments(double alpha);

// Leading behaviour of 1/H_n(n lambda_n) (the reciprocal), displayed corrections included.
// For the two low-temperature regimes this uses sqrt(n/2pi) exp(-n eta^2(lambda_n)/2).
double h_n_asymptotic(const FugacityPath& path, std::int64_t n);
// log of h_n_asymptotic; finite where the value itself underflows (low temperature).
double log_h_n_asymptotic(const FugacityPath& path, std::int64_t n);
// Same, but with the literal limiting exponent in the low-temperature regimes:
// -n[alpha - log(1+alpha)] and -alpha^2 n^{1-2beta}/2. Other regimes agree with
// h_n_asymptotic.
double h_n_asymptotic_literal(const FugacityPath& path, std::int64_t n);

}  // namespace knsaw
