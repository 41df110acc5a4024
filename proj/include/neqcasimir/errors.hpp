#pragma once

#include <stdexcept>
#include <string>

namespace neqc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested multipole order not covered by the chosen T-matrix provider.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Boundary-condition system too ill-conditioned to solve.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  struct Diagnostics {
    double lower = 0;        // worst subinterval
    double upper = 0;
    double worst_error = 0;  // its error estimate
    double total_error = 0;
    double tolerance = 0;
    int subintervals = 0;
  };
  NonConvergenceError(const std::string& what, Diagnostics d)
      : std::runtime_error(what), diagnostics_(d) {}
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Malformed scenario, material or data file.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tabulated data requested outside its covered range.
class InterpolationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace neqc
