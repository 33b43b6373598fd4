#include "knsaw/reference_oracle.hpp"

#include <cmath>
#include <string>

#include "knsaw/errors.hpp"

namespace knsaw::oracle {
namespace {

using boost::multiprecision::cpp_int;

double rational_to_double(const Rational& r) {
  // Numerator and denominator overflow double long before the ratio does.
  const Float f = Float(boost::multiprecision::numerator(r)) / Float(boost::multiprecision::denominator(r));
  return static_cast<double>(f);
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite value to a rational");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  cpp_int scaled(static_cast<std::int64_t>(std::ldexp(mantissa, 53)));
  exponent -= 53;
  if (exponent >= 0) return Rational(scaled << exponent);
  return Rational(scaled, cpp_int(1) << -exponent);
}

void dfs(int n, int vertex, std::vector<bool>& visited, int length, std::vector<std::uint64_t>& counts) {
  ++counts[static_cast<std::size_t>(length)];
  for (int next = 0; next < n; ++next) {
    if (next == vertex || visited[static_cast<std::size_t>(next)]) continue;
    visited[static_cast<std::size_t>(next)] = true;
    dfs(n, next, visited, length + 1, counts);
    visited[static_cast<std::size_t>(next)] = false;
  }
}

}  // namespace

PrecisionContext::PrecisionContext(int working_digits) : digits_(working_digits) {
  if (working_digits < kMinDigits || working_digits > kMaxDigits) {
    throw DomainError("working digits must lie in [" + std::to_string(kMinDigits) + ", " +
                      std::to_string(kMaxDigits) + "]");
  }
}

double PrecisionContext::error_bound() const { return std::pow(10.0, -(digits_ - 10)); }

std::vector<double> ExactPmf::to_double() const {
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const Rational& p : probabilities) out.push_back(rational_to_double(p));
  return out;
}

ExactPmf brute_force_pmf(std::int64_t n, const Rational& z) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > kBruteForceMaxN) throw SizeError("brute-force pmf limited to n <= " + std::to_string(kBruteForceMaxN));
  if (z <= 0) throw DomainError("fugacity must be positive");

  // With z = p/q, multiply every weight |Omega_{n,k}| p^k / (qn)^k by (qn)^{n-1}
  // to work in integers: W_k = (n-1)!/(n-1-k)! p^k (qn)^{n-1-k}.
  const cpp_int p = boost::multiprecision::numerator(z);
  const cpp_int qn = boost::multiprecision::denominator(z) * n;
  const auto size = static_cast<std::size_t>(n);

  std::vector<cpp_int> qn_powers(size);
  qn_powers[0] = 1;
  for (std::size_t i = 1; i < size; ++i) qn_powers[i] = qn_powers[i - 1] * qn;

  std::vector<cpp_int> weights(size);
  cpp_int falling = 1;  // (n-1)(n-2)...(n-k)
  cpp_int p_power = 1;
  cpp_int total = 0;
  for (std::size_t k = 0; k < size; ++k) {
    if (k > 0) {
      falling *= static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k);
      p_power *= p;
    }
    weights[k] = falling * p_power * qn_powers[size - 1 - k];
    total += weights[k];
  }

  ExactPmf pmf;
  pmf.probabilities.reserve(size);
  for (const cpp_int& w : weights) pmf.probabilities.emplace_back(w, total);
  return pmf;
}

ExactPmf brute_force_pmf(std::int64_t n, double z) { return brute_force_pmf(n, exact_rational(z)); }

std::vector<std::uint64_t> enumerate_walk_counts(int n) {
  if (n < 1 || n > 9) throw SizeError("walk enumeration limited to 1 <= n <= 9");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  visited[0] = true;
  dfs(n, 0, visited, 0, counts);
  return counts;
}

HighPrecValue q_highprec(std::int64_t n, const Float& nu, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("Q(n, nu) needs n >= 1");
  if (n > kHighPrecMaxN) throw SizeError("high-precision Q limited to n <= " + std::to_string(kHighPrecMaxN));
  if (nu <= 0) throw DomainError("Q(n, nu) needs nu > 0");
  Float term = 1;
  Float sum = 1;
  for (std::int64_t j = 1; j < n; ++j) {
    term *= nu;
    term /= j;
    sum += term;
  }
  return {sum * exp(-nu), ctx.error_bound()};
}

HighPrecValue q_highprec(std::int64_t n, double nu, const PrecisionContext& ctx) {
  return q_highprec(n, Float(nu), ctx);
}

HighPrecValue h_highprec(std::int64_t n, const Float& nu, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("H_n(nu) needs n >= 1");
  if (n > kHighPrecMaxN) throw SizeError("high-precision H limited to n <= " + std::to_string(kHighPrecMaxN));
  if (nu <= 0) throw DomainError("H_n(nu) needs nu > 0");
  // Summed from j = n-1 downwards; each term is the previous times j/nu.
  Float term = 1 / nu;
  Float sum = term;
  for (std::int64_t j = n - 1; j >= 1; --j) {
    term *= j;
    term /= nu;
    sum += term;
  }
  return {sum, ctx.error_bound()};
}

HighPrecValue h_highprec(std::int64_t n, double nu, const PrecisionContext& ctx) {
  return h_highprec(n, Float(nu), ctx);
}

double exact_pmf_moment(const ExactPmf& pmf, int m) {
  if (m < 0) throw DomainError("moment order must be >= 0");
  Rational acc = 0;
  for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) {
    cpp_int power = boost::multiprecision::pow(cpp_int(k), static_cast<unsigned>(m));
    acc += pmf.probabilities[k] * power;
  }
  return rational_to_double(acc);
}

double exact_pmf_variance(const ExactPmf& pmf) {
  Rational mean = 0;
  Rational second = 0;
  for (std::size_t k = 0; k < pmf.probabilities.size(); ++k) {
    mean += pmf.probabilities[k] * k;
    second += pmf.probabilities[k] * k * k;
  }
  return rational_to_double(second - mean * mean);
}

}  // namespace knsaw::oracle
