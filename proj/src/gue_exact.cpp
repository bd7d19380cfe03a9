#include "spectra/gue_exact.hpp"

#include <cmath>
#include <numbers>

#include "spectra/error.hpp"

namespace spectra::gue {

namespace {

// Σ_{k<n} ψ_k(y)² for the Hermite functions orthonormal against e^{-y²/2}/√(2π).
// Long double keeps e^{-y²/4} representable well past the spectral edge.
long double kernel_diagonal(Index n, long double y) {
  const long double p0 = std::exp(-y * y / 4.0L) / std::pow(2.0L * std::numbers::pi_v<long double>, 0.25L);
  long double prev = 0.0L;
  long double cur = p0;
  long double sum = 0.0L;
  for (Index k = 0; k < n; ++k) {
    sum += cur * cur;
    const auto kk = static_cast<long double>(k);
    const long double next = (y * cur - std::sqrt(kk) * prev) / std::sqrt(kk + 1.0L);
    prev = cur;
    cur = next;
  }
  return sum;
}

}  // namespace

double density(Index n, double x) {
  if (n < 1) throw InvalidParameter("gue::density: n must be >= 1");
  const long double rn = std::sqrt(static_cast<long double>(n));
  return static_cast<double>(kernel_diagonal(n, rn * x) * rn / static_cast<long double>(n));
}

Complex expected_trace(Index n, const std::function<Complex(double)>& f, double a0, double sigma) {
  if (n < 1) throw InvalidParameter("gue::expected_trace: n must be >= 1");
  if (sigma == 0.0) return f(a0);
  // The density decays like exp(-c n (|x|-2)^{3/2}) beyond the edge; the
  // window and node count make the truncated trapezoid sum exact to roundoff
  // for smooth f.
  const double half = 2.5 + 12.0 * std::pow(static_cast<double>(n), -2.0 / 3.0);
  const Index points = 64 * n + 4001;
  const double h = 2.0 * half / static_cast<double>(points - 1);
  Complex sum = 0.0;
  for (Index i = 0; i < points; ++i) {
    const double x = -half + h * static_cast<double>(i);
    const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    const double rho = density(n, x);
    if (rho == 0.0) continue;
    sum += w * rho * f(a0 + sigma * x);
  }
  return sum * h;
}

}  // namespace spectra::gue
