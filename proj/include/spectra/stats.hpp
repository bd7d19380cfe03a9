#pragma once

#include <span>
#include <vector>

namespace spectra::stats {

double mean(std::span<const double> x);
/// Unbiased sample variance (divides by T - 1); 0 for fewer than two samples.
double variance(std::span<const double> x);
/// sqrt(variance / T)
double std_error(std::span<const double> x);

/// Standard error of the unbiased sample variance, from the sample fourth
/// central moment (normal approximation).
double variance_std_error(std::span<const double> x);

/// Least-squares line through (log x, log y).
struct ScalingFit {
  std::vector<double> n_values;
  std::vector<double> observed;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// False when some observation is not strictly positive (no log-log fit).
  bool valid = false;
};

ScalingFit loglog_fit(std::vector<double> n_values, std::vector<double> observed);

}  // namespace spectra::stats
