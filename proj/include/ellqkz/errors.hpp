#pragma once

#include <stdexcept>
#include <string>

namespace ellqkz {

/// Argument outside the domain of a function (e.g. theta at z = 0).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A denominator factor vanished numerically. `factor()` names it.
class PoleError : public std::runtime_error {
public:
  PoleError(std::string factor, const std::string& where)
      : std::runtime_error("pole: " + factor + " vanishes (" + where + ")"),
        factor_(std::move(factor)) {}

  const std::string& factor() const noexcept { return factor_; }

private:
  std::string factor_;
};

/// Truncation would need more product factors than the configured cap.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ellqkz
