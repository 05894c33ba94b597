// Error types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace bayesrs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

class DegenerateDF : public Error {
 public:
  using Error::Error;
};

class InitialSampleTooSmall : public Error {
 public:
  using Error::Error;
};

class BudgetTooSmall : public Error {
 public:
  using Error::Error;
};

class InvalidScheme : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

// Failure inside the sequential driver, tagged with the iteration it occurred in.
class RunError : public Error {
 public:
  RunError(int iteration, const std::string& what)
      : Error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

}  // namespace bayesrs
