#include "spectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "spectra/error.hpp"

namespace spectra::linalg {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    }
  }
  return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.rows(); ++j) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.block(j * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(j, k) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& x, Index m, Index n) {
  if (x.rows() != m * n || x.cols() != m * n) {
    throw InvalidParameter("partial_trace: matrix is not (m n) x (m n)");
  }
  Matrix out(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index k = 0; k < m; ++k) {
      out(j, k) = x.block(j * n, k * n, n, n).trace() / static_cast<double>(n);
    }
  }
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
  return es.eigenvalues();
}

double hermitian_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const RealVector ev = hermitian_eigenvalues(a);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.rows() >= a.cols() ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
  const RealVector ev = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

double smallest_singular_value(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 200) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix apply_function(const Matrix& a, const std::function<Complex(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
  const auto& v = es.eigenvectors();
  Vector fe(es.eigenvalues().size());
  for (Index i = 0; i < fe.size(); ++i) fe(i) = f(es.eigenvalues()(i));
  return v * fe.asDiagonal() * v.adjoint();
}

Matrix inverse(const Matrix& a) {
  Eigen::PartialPivLU<Matrix> lu(a);
  return lu.inverse();
}

double lanczos_max_eigenvalue(const std::function<void(const Vector&, Vector&)>& apply, Index dim,
                              const LanczosOptions& opts) {
  if (dim <= 0) return 0.0;
  std::mt19937_64 gen(opts.start_seed);
  std::normal_distribution<double> normal;
  Vector q(dim);
  for (Index i = 0; i < dim; ++i) q(i) = Complex(normal(gen), normal(gen));
  q.normalize();

  Vector q_prev = Vector::Zero(dim);
  Vector w(dim);
  std::vector<double> alpha;
  std::vector<double> beta;
  double previous = -std::numeric_limits<double>::infinity();
  int stable_checks = 0;
  double theta = 0.0;
  const int max_it = static_cast<int>(std::min<Index>(opts.max_iterations, dim));

  for (int k = 0; k < max_it; ++k) {
    apply(q, w);
    const double a = w.dot(q).real();
    alpha.push_back(a);
    w -= a * q;
    if (k > 0) w -= beta.back() * q_prev;
    const double b = w.norm();

    const bool check = (k + 1) % 10 == 0 || k + 1 == max_it || b < 1e-14;
    if (check) {
      const Index len = static_cast<Index>(alpha.size());
      RealVector diag = Eigen::Map<RealVector>(alpha.data(), len);
      RealVector sub(std::max<Index>(len - 1, 0));
      for (Index i = 0; i + 1 < len; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
      if (len == 1) {
        theta = diag(0);
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        theta = tri.eigenvalues()(len - 1);
      }
      if (std::abs(theta - previous) <= opts.tol * std::max(1.0, std::abs(theta))) {
        if (++stable_checks >= 3) break;
      } else {
        stable_checks = 0;
      }
      previous = theta;
    }
    if (b < 1e-14) break;
    beta.push_back(b);
    q_prev.swap(q);
    q = w / b;
  }
  return theta;
}

}  // namespace spectra::linalg
