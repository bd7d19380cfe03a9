#pragma once

// Small helpers shared by the unit tests. Random inputs come from a local
// engine so they never share state with the library's seeded streams.

#include <cmath>
#include <random>
#include <vector>

#include "spectra/linalg.hpp"

namespace testing_support {

using spectra::Complex;
using spectra::Index;
using spectra::Matrix;

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = Complex(g(gen), g(gen));
  }
  return a;
}

inline Matrix random_hermitian(Index n, std::mt19937_64& gen) {
  const Matrix a = random_matrix(n, n, gen);
  return (a + a.adjoint()) / 2.0;
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
