#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

// Slow, independent ground truth. Nothing here touches the incomplete gamma
// kernel: pmfs come from exact walk counts, Q from the finite Poisson sum.
namespace knsaw::oracle {

using Rational = boost::multiprecision::cpp_rational;
using Float = boost::multiprecision::cpp_bin_float_100;

struct PrecisionContext {
  static constexpr int kMinDigits = 30;
  static constexpr int kMaxDigits = 100;

  // Throws DomainError outside [kMinDigits, kMaxDigits].
  explicit PrecisionContext(int working_digits = 50);

  int working_digits() const { return digits_; }
  // Bound on the relative error of results computed under this context.
  double error_bound() const;

 private:
  int digits_;
};

struct ExactPmf {
  std::vector<Rational> probabilities;  // index k = walk length

  std::vector<double> to_double() const;
};

inline constexpr std::int64_t kBruteForceMaxN = 500;
inline constexpr std::int64_t kHighPrecMaxN = 10'000;

// P(L = k) proportional to |Omega_{n,k}| (z/n)^k with z = z_num/z_den.
// Throws SizeError for n > kBruteForceMaxN.
ExactPmf brute_force_pmf(std::int64_t n, const Rational& z);
// Convenience: z converted exactly from its binary double value.
ExactPmf brute_force_pmf(std::int64_t n, double z);

// |Omega_{n,k}| by enumerating self-avoiding walks from vertex 0 on K_n.
// Exponential in n; for n <= 9 only.
std::vector<std::uint64_t> enumerate_walk_counts(int n);

struct HighPrecValue {
  Float value;
  double error_bound;

  double to_double() const { return static_cast<double>(value); }
  // Finite where to_double() underflows.
  double log_value() const { return static_cast<double>(log(value)); }
};

// Q(n, nu) = e^{-nu} sum_{j<n} nu^j / j!. Throws SizeError for n > kHighPrecMaxN.
HighPrecValue q_highprec(std::int64_t n, const Float& nu, const PrecisionContext& ctx = PrecisionContext{});
HighPrecValue q_highprec(std::int64_t n, double nu, const PrecisionContext& ctx = PrecisionContext{});

// H_n(nu) = Gamma(n) Q(n,nu) / (nu^n e^{-nu}) = sum_{j<n} (n-1)!/j! nu^{j-n}.
HighPrecValue h_highprec(std::int64_t n, const Float& nu, const PrecisionContext& ctx = PrecisionContext{});
HighPrecValue h_highprec(std::int64_t n, double nu, const PrecisionContext& ctx = PrecisionContext{});

// Moments of an exact pmf, rounded once at the end.
double exact_pmf_moment(const ExactPmf& pmf, int m);
double exact_pmf_variance(const ExactPmf& pmf);

}  // namespace knsaw::oracle
