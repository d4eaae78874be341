#pragma once

#include <stdexcept>
#include <string>

namespace phantom {

/// Invalid game parameters (odd n for perfect matching, zero biases, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A strategy or caller broke an engine precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A query the library refuses to answer exactly (exponential checks beyond their size cap).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation that would exceed its resource budget.
class RefusalError : public std::runtime_error {
 public:
  RefusalError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace phantom
