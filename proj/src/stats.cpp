#include "spectra/stats.hpp"

#include <algorithm>
#include <cmath>

#include "spectra/error.hpp"

namespace spectra::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  // shifting by the first sample keeps identical samples at exactly zero
  const double k = x[0];
  double mu = 0.0;
  for (double v : x) mu += v - k;
  mu /= static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - k - mu) * (v - k - mu);
  return s / static_cast<double>(x.size() - 1);
}

double std_error(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

double variance_std_error(std::span<const double> x) {
  const auto t = static_cast<double>(x.size());
  if (x.size() < 4) return 0.0;
  const double mu = mean(x);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = (v - mu) * (v - mu);
    m2 += d;
    m4 += d * d;
  }
  m2 /= t;
  m4 /= t;
  const double var_of_var = (m4 - m2 * m2 * (t - 3.0) / (t - 1.0)) / t;
  return std::sqrt(std::max(0.0, var_of_var));
}

ScalingFit loglog_fit(std::vector<double> n_values, std::vector<double> observed) {
  if (n_values.size() != observed.size()) throw InvalidParameter("loglog_fit: size mismatch");
  ScalingFit fit;
  fit.n_values = std::move(n_values);
  fit.observed = std::move(observed);
  const std::size_t k = fit.observed.size();
  if (k < 2) return fit;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(fit.observed[i] > 0.0) || !(fit.n_values[i] > 0.0)) return fit;
  }
  std::vector<double> lx(k);
  std::vector<double> ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    lx[i] = std::log(fit.n_values[i]);
    ly[i] = std::log(fit.observed[i]);
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.valid = true;
  return fit;
}

}  // namespace spectra::stats
