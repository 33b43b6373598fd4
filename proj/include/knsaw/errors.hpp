#pragma once

#include <stdexcept>
#include <string>

namespace knsaw {

// Argument outside the mathematical domain of a function (a < 0, lambda <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index outside the support of a distribution.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An evaluation strategy was requested outside its region of validity.
class StrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid fugacity path or an expansion used outside its validity range.
class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a computation budget.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed user argument (sample counts, grids, config files).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace knsaw
