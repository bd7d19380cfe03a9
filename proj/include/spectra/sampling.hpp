#pragma once

#include <cstdint>
#include <random>

#include "spectra/linalg.hpp"

namespace spectra {

/// Coordinates of one random stream inside an experiment. Streams are
/// derived by hashing the triple, so trials can be generated in any order.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t stream_index = 0;

  SeedSpec with_trial(std::uint64_t t) const { return {master_seed, t, stream_index}; }
  SeedSpec with_stream(std::uint64_t s) const { return {master_seed, trial_index, s}; }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 finalizer chained over the three coordinates.
std::uint64_t derive_seed(const SeedSpec& seed);

/// Engine for a SeedSpec. Gaussians come from std::normal_distribution on
/// top of this engine; bit-reproducible within one build.
class Rng {
 public:
  explicit Rng(const SeedSpec& seed) : engine_(derive_seed(seed)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

struct GaussianHermitian {
  Index n = 0;
  double sigma2 = 0.0;
  Matrix entries;
};

struct GinibreMatrix {
  Index n = 0;
  double sigma2 = 0.0;
  Matrix entries;
  /// The two Hermitian draws it was assembled from: entries == (x1 + i x2) / sqrt(2).
  Matrix x1;
  Matrix x2;
};

/// Hermitian matrix with diagonal ~ N(0, sigma2) and, above the diagonal,
/// sqrt(2) Re and sqrt(2) Im ~ N(0, sigma2), all independent.
GaussianHermitian sample_sgrm(Index n, double sigma2, const SeedSpec& seed);
GaussianHermitian sample_sgrm(Index n, double sigma2, Rng& rng);

GinibreMatrix sample_grm(Index n, double sigma2, const SeedSpec& seed);
GinibreMatrix sample_grm(Index n, double sigma2, Rng& rng);

/// Semicircle cumulative angle: (t/2) sqrt(4 - t^2) + 2 asin(t/2) on [-2, 2], ±π outside.
double phi(double t);

/// e^{i phi(t)}.
Complex psi(double t);

/// psi(X) for a fresh SGRM(n, 1/n) draw X.
Matrix pseudo_haar_unitary(Index n, const SeedSpec& seed);
Matrix pseudo_haar_unitary(Index n, Rng& rng);

/// Haar unitary from the QR factorization of a Ginibre draw, with the phases
/// of diag(R) moved into Q.
Matrix haar_unitary_qr(Index n, const SeedSpec& seed);
Matrix haar_unitary_qr(Index n, Rng& rng);

}  // namespace spectra
