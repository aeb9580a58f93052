#pragma once

#include <stdexcept>
#include <string>

namespace srisk {

/// Argument outside the domain of an operation (NaN threshold, p outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested moment lies outside the law's finite-moment strip.
class DivergentMomentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model or law construction violated its constraints.
class InvalidModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Infinite-horizon truncation cannot be justified by a moment bound.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form constant hits its singular point (E[Y^alpha] = 1).
class SingularRatioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hypotheses of a construction are not met (e.g. single-signed kernel).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data make an estimator degenerate (all ties, empty tail, ...).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration document is structurally invalid (missing field, wrong type).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace srisk
