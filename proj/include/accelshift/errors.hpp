#pragma once

#include <stdexcept>
#include <string>

namespace accelshift {

/// Input outside the physical domain (non-finite, negative distance, ...).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Polarization weights that are negative or do not sum to one.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature budget exhausted before the requested tolerance was reached.
/// Carries the best available estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double err_est)
      : std::runtime_error(what), best_(best_estimate), err_(err_est) {}
  double best_estimate() const noexcept { return best_; }
  double err_est() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

/// Two algebraically equivalent evaluation routes disagreed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace accelshift
