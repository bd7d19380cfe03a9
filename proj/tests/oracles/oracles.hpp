#pragma once

// Reference values computed without the library: combinatorics, closed
// forms and textbook quadrature. Tests compare library output against these.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double catalan(int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c = c * 2.0 * (2.0 * j + 1.0) / (j + 2.0);
  return c;
}

/// Number of non-crossing pair partitions of the word whose blocks join equal
/// letters. This is τ(x_{i1} ... x_{ip}) for free standard semicirculars.
inline double noncrossing_pairings(const std::vector<int>& w, std::size_t lo, std::size_t hi) {
  if (lo == hi) return 1.0;
  if ((hi - lo) % 2 != 0) return 0.0;
  double total = 0.0;
  for (std::size_t j = lo + 1; j < hi; j += 2) {
    if (w[j] != w[lo]) continue;
    total += noncrossing_pairings(w, lo + 1, j) * noncrossing_pairings(w, j + 1, hi);
  }
  return total;
}

inline double free_moment(const std::vector<int>& w) { return noncrossing_pairings(w, 0, w.size()); }

/// Harer-Zagier recursion for E tr_n X^{2k}, X in SGRM(n, 1/n):
/// (k+2) C_{k+1} = (4k+2) C_k + k (4k²-1)/n² C_{k-1}.
inline std::vector<double> gue_even_moments(int n, int kmax) {
  std::vector<double> c(static_cast<std::size_t>(kmax + 1), 0.0);
  c[0] = 1.0;
  if (kmax >= 1) c[1] = 1.0;
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (int k = 1; k < kmax; ++k) {
    c[static_cast<std::size_t>(k + 1)] =
        ((4.0 * k + 2.0) * c[static_cast<std::size_t>(k)] +
         k * (4.0 * k * k - 1.0) * inv_n2 * c[static_cast<std::size_t>(k - 1)]) /
        (k + 2.0);
  }
  return c;
}

/// Stieltjes transform of the standard semicircle, branch with g ~ 1/z.
inline std::complex<double> semicircle_g(std::complex<double> z) {
  const std::complex<double> root = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
  return (z - root) / 2.0;
}

inline double semicircle_density(double x, double variance = 1.0) {
  const double r2 = 4.0 * variance;
  return x * x >= r2 ? 0.0 : std::sqrt(r2 - x * x) / (2.0 * std::numbers::pi * variance);
}

/// ∫ f dμ for the semicircle of the given variance, by Gauss quadrature for
/// the weight sqrt(1 - t²) (Chebyshev polynomials of the second kind).
inline double semicircle_integral(const std::function<double(double)>& f, double variance = 1.0, int nodes = 4000) {
  const double radius = 2.0 * std::sqrt(variance);
  double s = 0.0;
  for (int k = 1; k <= nodes; ++k) {
    const double th = k * std::numbers::pi / (nodes + 1);
    const double w = 2.0 / (nodes + 1) * std::sin(th) * std::sin(th);
    s += w * f(radius * std::cos(th));
  }
  return s;
}

/// Norm of the truncated ℓ + ℓ* on words of length ≤ d over one letter
/// (path graph on d+1 vertices).
inline double truncated_semicircular_norm(int d) { return 2.0 * std::cos(std::numbers::pi / (d + 2)); }

/// Determinant by partial-pivot Gaussian elimination in long double. Rows are
/// given as a dense row-major vector.
inline std::complex<long double> determinant(std::vector<std::complex<long double>> a, int n) {
  std::complex<long double> det = 1.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r * n + c)]) > std::abs(a[static_cast<std::size_t>(piv * n + c)])) piv = r;
    }
    if (std::abs(a[static_cast<std::size_t>(piv * n + c)]) == 0.0L) return 0.0L;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[static_cast<std::size_t>(c * n + k)], a[static_cast<std::size_t>(piv * n + k)]);
      det = -det;
    }
    const auto p = a[static_cast<std::size_t>(c * n + c)];
    det *= p;
    for (int r = c + 1; r < n; ++r) {
      const auto f = a[static_cast<std::size_t>(r * n + c)] / p;
      for (int k = c; k < n; ++k) a[static_cast<std::size_t>(r * n + k)] -= f * a[static_cast<std::size_t>(c * n + k)];
    }
  }
  return det;
}

/// Marchenko-Pastur edges (sqrt(c) ± 1)² for aspect ratio c ≥ 1.
inline double mp_upper(double c) { return (std::sqrt(c) + 1.0) * (std::sqrt(c) + 1.0); }
inline double mp_lower(double c) { return (std::sqrt(c) - 1.0) * (std::sqrt(c) - 1.0); }

}  // namespace oracle
