#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace spectra {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace linalg {

bool is_hermitian(const Matrix& a, double tol = 1e-12);

/// Kronecker product with block (j, k) equal to a(j, k) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// (id_m ⊗ tr_n)(x) for an (m n) x (m n) matrix laid out as m x m blocks of size n,
/// with tr_n the normalized trace.
Matrix partial_trace(const Matrix& x, Index m, Index n);

/// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is read).
RealVector hermitian_eigenvalues(const Matrix& a);

/// max |eigenvalue| of a Hermitian matrix.
double hermitian_norm(const Matrix& a);

/// Largest singular value, through the Hermitian eigenproblem of a* a.
double operator_norm(const Matrix& a);

double smallest_singular_value(const Matrix& a);

/// f(a) for Hermitian a, via eigendecomposition.
Matrix apply_function(const Matrix& a, const std::function<Complex(double)>& f);

Matrix inverse(const Matrix& a);

/// Largest eigenvalue of a Hermitian operator given only through y = A x.
/// Plain three-term Lanczos; extreme Ritz values stay accurate under loss of
/// orthogonality, so no vectors beyond the current pair are stored.
struct LanczosOptions {
  int max_iterations = 3000;
  double tol = 1e-12;
  unsigned long long start_seed = 0x5eed;
};

double lanczos_max_eigenvalue(const std::function<void(const Vector&, Vector&)>& apply, Index dim,
                              const LanczosOptions& opts = {});

}  // namespace linalg
}  // namespace spectra
