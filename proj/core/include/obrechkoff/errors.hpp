#pragma once

#include <stdexcept>
#include <string>

namespace obrechkoff {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (precision too low, missing closures, bad flags).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Mathematical precondition violated by an argument (division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A fitted coefficient denominator vanishes to working precision at this v.
class SingularParameterError : public Error {
 public:
  using Error::Error;
};

/// |B(v)/A(v)| > 1: v lies outside the interval of periodicity.
class OutsidePeriodicityError : public Error {
 public:
  using Error::Error;
};

/// The implicit corrector did not converge.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, long step_index, int iterations, double last_update)
      : Error(what), step_index_(step_index), iterations_(iterations), last_update_(last_update) {}

  [[nodiscard]] long step_index() const noexcept { return step_index_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }
  /// Magnitude of the last corrector update (diagnostic only).
  [[nodiscard]] double last_update() const noexcept { return last_update_; }

 private:
  long step_index_;
  int iterations_;
  double last_update_;
};

}  // namespace obrechkoff
