#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Precondition violated by caller-supplied parameters.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// A dense factorization or eigensolver did not produce a usable result.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point solver gave up; carries the residual of the last iterate.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double last_residual, long iterations)
      : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  long iterations_;
};

}  // namespace spectra
