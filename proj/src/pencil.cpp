#include "spectra/pencil.hpp"

#include <string>

#include "spectra/error.hpp"

namespace spectra {
namespace {

Index common_size(std::span<const Matrix> mats) {
  if (mats.empty()) return 1;
  const Index n = mats.front().rows();
  for (const auto& x : mats) {
    if (x.rows() != n || x.cols() != n) throw InvalidParameter("variable matrices must be square of equal size");
  }
  return n;
}

}  // namespace

LinearPencil::LinearPencil(std::vector<Matrix> coefficients) : a_(std::move(coefficients)) {
  if (a_.empty()) throw InvalidParameter("pencil needs at least the constant coefficient a0");
  m_ = a_.front().rows();
  if (m_ < 1) throw InvalidParameter("pencil coefficients must be at least 1 x 1");
  for (const auto& c : a_) {
    if (c.rows() != m_ || c.cols() != m_) throw InvalidParameter("pencil coefficients must all be m x m");
  }
}

Matrix LinearPencil::evaluate(std::span<const Matrix> mats) const {
  if (static_cast<int>(mats.size()) != r()) {
    throw InvalidParameter("pencil has r=" + std::to_string(r()) + " but got " + std::to_string(mats.size()) +
                           " matrices");
  }
  const Index n = mats.empty() ? 1 : common_size(mats);
  Matrix out = Matrix::Zero(m_ * n, m_ * n);
  for (Index j = 0; j < m_; ++j) {
    for (Index k = 0; k < m_; ++k) {
      auto block = out.block(j * n, k * n, n, n);
      block.diagonal().array() += a_[0](j, k);
      for (int i = 1; i <= r(); ++i) {
        const Complex c = a_[static_cast<std::size_t>(i)](j, k);
        if (c != Complex{}) block += c * mats[static_cast<std::size_t>(i - 1)];
      }
    }
  }
  return out;
}

Pencil::Pencil(std::vector<Matrix> coefficients) : base_(std::move(coefficients)) {
  for (int i = 0; i <= base_.r(); ++i) {
    if (!linalg::is_hermitian(base_.a(i), 1e-12)) {
      throw InvalidParameter("pencil coefficient a" + std::to_string(i) + " is not Hermitian");
    }
  }
}

Pencil Pencil::semicircle(Index m, int r) {
  std::vector<Matrix> a;
  a.push_back(Matrix::Zero(m, m));
  for (int i = 0; i < r; ++i) a.push_back(Matrix::Identity(m, m));
  return Pencil(std::move(a));
}

Matrix Pencil::sum_of_squares() const {
  Matrix s = Matrix::Zero(m(), m());
  for (int i = 1; i <= r(); ++i) s += a(i) * a(i);
  return s;
}

double Pencil::norm_bound() const {
  double b = linalg::hermitian_norm(a(0));
  for (int i = 1; i <= r(); ++i) b += 2.0 * linalg::hermitian_norm(a(i));
  return b;
}

Matrix pencil_evaluate(const Pencil& p, std::span<const Matrix> mats) {
  for (const auto& x : mats) {
    if (!linalg::is_hermitian(x, 1e-10)) throw InvalidParameter("pencil_evaluate: variable matrices must be Hermitian");
  }
  return p.linear().evaluate(mats);
}

Pencil selfadjoint_embed(std::span<const Matrix> b) {
  if (b.empty()) throw InvalidParameter("selfadjoint_embed: need at least b0");
  const Index m = b.front().rows();
  std::vector<Matrix> out;
  out.reserve(b.size());
  for (const auto& bi : b) {
    if (bi.rows() != m || bi.cols() != m) throw InvalidParameter("selfadjoint_embed: coefficients must be m x m");
    Matrix e = Matrix::Zero(2 * m, 2 * m);
    e.topRightCorner(m, m) = bi.adjoint();
    e.bottomLeftCorner(m, m) = bi;
    out.push_back(std::move(e));
  }
  return Pencil(std::move(out));
}

LinearPencil linearize_quadratic(std::span<const Matrix> a) {
  if (a.size() < 2) throw InvalidParameter("linearize_quadratic: need a0 and a_{r+1}");
  const int r = static_cast<int>(a.size()) - 2;
  const Index m = a.front().rows();
  for (const auto& ai : a) {
    if (ai.rows() != m || ai.cols() != m) throw InvalidParameter("linearize_quadratic: coefficients must be m x m");
  }
  const Index dim = (r + 1) * m;
  const Matrix& quad = a[static_cast<std::size_t>(r + 1)];

  std::vector<Matrix> b;
  Matrix b0 = Matrix::Zero(dim, dim);
  b0.block(0, 0, m, m) = a[0];
  for (int i = 1; i <= r; ++i) {
    b0.block(i * m, 0, m, m) = a[static_cast<std::size_t>(i)];
    b0.block(i * m, i * m, m, m) = Matrix::Identity(m, m);
  }
  b.push_back(std::move(b0));
  for (int i = 1; i <= r; ++i) {
    Matrix bi = Matrix::Zero(dim, dim);
    bi.block(0, i * m, m, m) = -Matrix::Identity(m, m);
    bi.block(i * m, 0, m, m) = quad;
    b.push_back(std::move(bi));
  }
  return LinearPencil(std::move(b));
}

Matrix quadratic_evaluate(std::span<const Matrix> a, std::span<const Matrix> mats) {
  if (a.size() != mats.size() + 2) throw InvalidParameter("quadratic_evaluate: need r+2 coefficients for r matrices");
  const Index n = common_size(mats);
  std::vector<Matrix> lin(a.begin(), a.end() - 1);
  Matrix out = LinearPencil(std::move(lin)).evaluate(mats);
  Matrix squares = Matrix::Zero(n, n);
  for (const auto& x : mats) squares += x * x;
  out += linalg::kron(a.back(), squares);
  return out;
}

}  // namespace spectra
