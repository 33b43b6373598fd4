#pragma once

#include <cstdint>
#include <vector>

#include "knsaw/gamma_kernel.hpp"
#include "knsaw/log_scale.hpp"

namespace knsaw {

// The variable-length self-avoiding walk on the complete graph K_n with
// fugacity z. The walk length L satisfies n-1-L ~ Poisson(nu) conditioned on
// being < n, where nu = n/z.
class SawEnsemble {
 public:
  SawEnsemble(std::int64_t n, double z, const GammaConfig& config = {});
  // Construct from the Poisson rate directly; avoids the n/(n/nu) round trip
  // when nu = n * lambda comes from a fugacity path.
  static SawEnsemble from_rate(std::int64_t n, double nu, const GammaConfig& config = {});

  std::int64_t n() const { return n_; }
  double z() const { return z_; }
  double nu() const { return nu_; }
  // log Q(n, nu), the normalizing constant of the length law.
  double log_q() const { return log_q_; }
  const GammaConfig& config() const { return config_; }

 private:
  SawEnsemble(std::int64_t n, double z, double nu, const GammaConfig& config);

  std::int64_t n_;
  double z_;
  double nu_;
  double log_q_;
  GammaConfig config_;
};

// Whole length law in log space, log_pmf[k] = log P(L = k).
struct LengthDistribution {
  std::int64_t n = 0;
  std::vector<double> log_pmf;
  LogScaleValue normalizer;  // Q(n, nu)

  static constexpr std::int64_t kMaxSize = 50'000'000;
  // Throws SizeError above kMaxSize.
  static LengthDistribution build(const SawEnsemble& ens);

  std::vector<double> pmf() const;
  std::vector<double> cdf() const;
};

// (n-1)!/(n-k-1)!, the number of self-avoiding walks of length k from a fixed vertex.
LogScaleValue walk_count(std::int64_t n, std::int64_t k);

double log_pmf(const SawEnsemble& ens, std::int64_t k);
double pmf(const SawEnsemble& ens, std::int64_t k);

// P(L > x); total in x.
double tail(const SawEnsemble& ens, double x);

// H_n(nu) = Gamma(n) Q(n,nu) / (nu^n e^{-nu}). log_h_n picks the eta form for
// 0.5 <= nu/n <= 2 and the direct definition otherwise.
double log_h_n(double n, double nu, const GammaConfig& config = {});
double h_n(double n, double nu, const GammaConfig& config = {});
double log_h_n_eta_form(double n, double nu, const GammaConfig& config = {});
double log_h_n_direct(double n, double nu, const GammaConfig& config = {});

double exact_mean(const SawEnsemble& ens);
double exact_variance(const SawEnsemble& ens);
// n - 1 - nu + 1/H and nu + (nu-n)/H - 1/H^2 evaluated literally. These cancel
// badly once nu >> n; exact_mean/exact_variance switch to a direct series there.
double closed_form_mean(const SawEnsemble& ens);
double closed_form_variance(const SawEnsemble& ens);

// E(L^m) by summation over the pmf. Throws SizeError for n > kMomentMaxN.
inline constexpr std::int64_t kMomentMaxN = 1'000'000;
double exact_moment(const SawEnsemble& ens, int m);

}  // namespace knsaw
