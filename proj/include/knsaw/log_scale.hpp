#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "knsaw/errors.hpp"

namespace knsaw {

// A real number stored as (sign, log|value|). Used for quantities such as
// nu^n e^{-nu} or (n-1)!/(n-k-1)! that overflow a double long before the
// ratios we actually want do.
class LogScaleValue {
 public:
  enum class Sign { negative = -1, zero = 0, positive = 1 };

  constexpr LogScaleValue() = default;

  static LogScaleValue from_log(double log_magnitude, Sign sign = Sign::positive) {
    LogScaleValue v;
    if (sign == Sign::zero || log_magnitude == -std::numeric_limits<double>::infinity()) {
      return v;
    }
    v.log_magnitude_ = log_magnitude;
    v.sign_ = sign;
    return v;
  }

  static LogScaleValue from_double(double x) {
    if (x == 0.0) return {};
    return from_log(std::log(std::fabs(x)), x > 0 ? Sign::positive : Sign::negative);
  }

  static LogScaleValue zero() { return {}; }
  static LogScaleValue one() { return from_log(0.0); }

  double log_magnitude() const { return log_magnitude_; }
  Sign sign() const { return sign_; }
  bool is_zero() const { return sign_ == Sign::zero; }

  double to_double() const {
    if (is_zero()) return 0.0;
    const double mag = std::exp(log_magnitude_);
    return sign_ == Sign::negative ? -mag : mag;
  }

  LogScaleValue operator-() const {
    LogScaleValue v = *this;
    if (sign_ == Sign::positive) v.sign_ = Sign::negative;
    else if (sign_ == Sign::negative) v.sign_ = Sign::positive;
    return v;
  }

  friend LogScaleValue operator*(const LogScaleValue& a, const LogScaleValue& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const bool same = a.sign_ == b.sign_;
    return from_log(a.log_magnitude_ + b.log_magnitude_, same ? Sign::positive : Sign::negative);
  }

  friend LogScaleValue operator/(const LogScaleValue& a, const LogScaleValue& b);

  friend LogScaleValue operator+(const LogScaleValue& a, const LogScaleValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogScaleValue& big = a.log_magnitude_ >= b.log_magnitude_ ? a : b;
    const LogScaleValue& small = a.log_magnitude_ >= b.log_magnitude_ ? b : a;
    const double ratio = std::exp(small.log_magnitude_ - big.log_magnitude_);
    if (big.sign_ == small.sign_) {
      return from_log(big.log_magnitude_ + std::log1p(ratio), big.sign_);
    }
    if (ratio == 1.0) return {};
    return from_log(big.log_magnitude_ + std::log1p(-ratio), big.sign_);
  }

  friend LogScaleValue operator-(const LogScaleValue& a, const LogScaleValue& b) { return a + (-b); }

  friend bool operator==(const LogScaleValue& a, const LogScaleValue& b) {
    return a.sign_ == b.sign_ && (a.is_zero() || a.log_magnitude_ == b.log_magnitude_);
  }

 private:
  double log_magnitude_ = -std::numeric_limits<double>::infinity();
  Sign sign_ = Sign::zero;
};

inline LogScaleValue operator/(const LogScaleValue& a, const LogScaleValue& b) {
  if (b.is_zero()) throw DomainError("LogScaleValue: division by zero");
  if (a.is_zero()) return {};
  const bool same = a.sign_ == b.sign_;
  return LogScaleValue::from_log(a.log_magnitude_ - b.log_magnitude_,
                                 same ? LogScaleValue::Sign::positive : LogScaleValue::Sign::negative);
}

// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace knsaw
