#pragma once

#include <stdexcept>
#include <string>

namespace cube_spectral {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed data: wrong length, non-finite entries, violated spectral precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A scalar argument outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its tolerance.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// A constructed object failed its own verification (bump, plan, threshold).
class ConstructionFailure : public Error {
 public:
  ConstructionFailure(const std::string& what, double location = 0.0)
      : Error(what), location_(location) {}
  /// Where the check failed (e.g. the violating tau), when meaningful.
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace cube_spectral
