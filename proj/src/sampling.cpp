#include "spectra/sampling.hpp"

#include <cmath>
#include <numbers>

#include "spectra/error.hpp"

namespace spectra {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_params(Index n, double sigma2) {
  if (n < 1) throw InvalidParameter("dimension n must be >= 1");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidParameter("variance sigma2 must be > 0");
}

// Standard draw (sigma2 = 1); callers scale by sigma so that
// sample_sgrm(n, s2) == sqrt(s2) * sample_sgrm(n, 1) exactly.
Matrix standard_hermitian(Index n, Rng& rng) {
  Matrix x(n, n);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (Index j = 0; j < n; ++j) {
    x(j, j) = Complex(rng.normal(), 0.0);
    for (Index i = 0; i < j; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      x(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
      x(j, i) = std::conj(x(i, j));
    }
  }
  return x;
}

}  // namespace

std::uint64_t derive_seed(const SeedSpec& seed) {
  std::uint64_t h = splitmix64(seed.master_seed);
  h = splitmix64(h ^ splitmix64(seed.trial_index + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(seed.stream_index + 0x2545f4914f6cdd1dULL));
  return h;
}

GaussianHermitian sample_sgrm(Index n, double sigma2, Rng& rng) {
  check_params(n, sigma2);
  Matrix x = standard_hermitian(n, rng);
  if (sigma2 != 1.0) x *= std::sqrt(sigma2);
  return {n, sigma2, std::move(x)};
}

GaussianHermitian sample_sgrm(Index n, double sigma2, const SeedSpec& seed) {
  check_params(n, sigma2);
  Rng rng(seed);
  return sample_sgrm(n, sigma2, rng);
}

GinibreMatrix sample_grm(Index n, double sigma2, Rng& rng) {
  check_params(n, sigma2);
  Matrix x1 = sample_sgrm(n, sigma2, rng).entries;
  Matrix x2 = sample_sgrm(n, sigma2, rng).entries;
  Matrix y = (x1 + Complex(0.0, 1.0) * x2) / std::numbers::sqrt2;
  return {n, sigma2, std::move(y), std::move(x1), std::move(x2)};
}

GinibreMatrix sample_grm(Index n, double sigma2, const SeedSpec& seed) {
  check_params(n, sigma2);
  Rng rng(seed);
  return sample_grm(n, sigma2, rng);
}

double phi(double t) {
  if (t <= -2.0) return -std::numbers::pi;
  if (t >= 2.0) return std::numbers::pi;
  return 0.5 * t * std::sqrt(4.0 - t * t) + 2.0 * std::asin(0.5 * t);
}

Complex psi(double t) { return std::polar(1.0, phi(t)); }

Matrix pseudo_haar_unitary(Index n, Rng& rng) {
  if (n < 1) throw InvalidParameter("dimension n must be >= 1");
  const Matrix x = sample_sgrm(n, 1.0 / static_cast<double>(n), rng).entries;
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success) throw NumericFailure("pseudo_haar_unitary: eigendecomposition failed");
  Vector d(n);
  for (Index i = 0; i < n; ++i) d(i) = psi(es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix pseudo_haar_unitary(Index n, const SeedSpec& seed) {
  Rng rng(seed);
  return pseudo_haar_unitary(n, rng);
}

Matrix haar_unitary_qr(Index n, Rng& rng) {
  if (n < 1) throw InvalidParameter("dimension n must be >= 1");
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Matrix z = sample_grm(n, 1.0, rng).entries;
    Eigen::HouseholderQR<Matrix> qr(z);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Matrix q = qr.householderQ();
    bool degenerate = false;
    for (Index i = 0; i < n; ++i) {
      const double mod = std::abs(r(i, i));
      if (!(mod > 0.0)) {
        degenerate = true;
        break;
      }
      q.col(i) *= r(i, i) / mod;
    }
    if (!degenerate) return q;
  }
  throw NumericFailure("haar_unitary_qr: degenerate Ginibre draw twice in a row");
}

Matrix haar_unitary_qr(Index n, const SeedSpec& seed) {
  Rng rng(seed);
  return haar_unitary_qr(n, rng);
}

}  // namespace spectra
