#include "spectra/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/error.hpp"

namespace spectra::fock {

FockBasis::FockBasis(int num_gens, int depth) : r_(num_gens), d_(depth) {
  if (num_gens < 1) throw InvalidParameter("Fock basis needs at least one generator");
  if (depth < 0) throw InvalidParameter("Fock depth must be >= 0");
  offsets_.reserve(static_cast<std::size_t>(depth) + 2);
  Index total = 0;
  Index layer = 1;
  for (int k = 0; k <= depth; ++k) {
    offsets_.push_back(total);
    total += layer;
    if (total > kMaxWords) {
      throw InvalidParameter("Fock basis with r=" + std::to_string(num_gens) + ", d=" + std::to_string(depth) +
                             " exceeds " + std::to_string(kMaxWords) + " words");
    }
    layer *= num_gens;
  }
  offsets_.push_back(total);
  size_ = total;
}

Index FockBasis::index_of(const Word& w) const {
  if (static_cast<int>(w.size()) > d_) throw InvalidParameter("word longer than Fock depth");
  Index rank = 0;
  for (int letter : w) {
    if (letter < 0 || letter >= r_) throw InvalidParameter("word letter out of range");
    rank = rank * r_ + letter;
  }
  return offset(static_cast<int>(w.size())) + rank;
}

int FockBasis::length_of(Index idx) const {
  int k = 0;
  while (offsets_[static_cast<std::size_t>(k) + 1] <= idx) ++k;
  return k;
}

Word FockBasis::word(Index idx) const {
  if (idx < 0 || idx >= size_) throw InvalidParameter("Fock index out of range");
  const int len = length_of(idx);
  Index rank = idx - offset(len);
  Word w(static_cast<std::size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = static_cast<int>(rank % r_);
    rank /= r_;
  }
  return w;
}

std::vector<Word> FockBasis::words() const {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (Index i = 0; i < size_; ++i) out.push_back(word(i));
  return out;
}

FockOperator::FockOperator(std::shared_ptr<const FockBasis> basis, SparseMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (!basis_) throw InvalidParameter("FockOperator needs a basis");
  if (matrix_.rows() != basis_->size() || matrix_.cols() != basis_->size()) {
    throw InvalidParameter("FockOperator matrix does not match basis size");
  }
  matrix_.makeCompressed();
}

FockOperator FockOperator::adjoint() const { return {basis_, SparseMatrix(matrix_.adjoint())}; }

namespace {
void require_same_basis(const FockOperator& a, const FockOperator& b) {
  if (!(a.basis() == b.basis())) throw InvalidParameter("Fock operators live on different bases");
}
}  // namespace

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  require_same_basis(a, b);
  return {a.basis_, SparseMatrix(a.matrix_ + b.matrix_)};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  require_same_basis(a, b);
  return {a.basis_, SparseMatrix(a.matrix_ - b.matrix_)};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same_basis(a, b);
  return {a.basis_, SparseMatrix(a.matrix_ * b.matrix_)};
}

FockOperator operator*(Complex c, const FockOperator& a) { return {a.basis_, SparseMatrix(c * a.matrix_)}; }

std::shared_ptr<const FockBasis> make_basis(int num_gens, int depth) {
  return std::make_shared<const FockBasis>(num_gens, depth);
}

FockOperator identity(const std::shared_ptr<const FockBasis>& basis) {
  SparseMatrix id(basis->size(), basis->size());
  id.setIdentity();
  return {basis, std::move(id)};
}

FockOperator creation(const std::shared_ptr<const FockBasis>& basis, int i) {
  const int r = basis->num_gens();
  if (i < 1 || i > r) throw InvalidParameter("creation index " + std::to_string(i) + " outside 1.." + std::to_string(r));
  const Index n = basis->size();
  std::vector<Eigen::Triplet<Complex>> trips;
  const int d = basis->depth();
  Index layer = 1;
  for (int k = 0; k < d; ++k) {
    // words of length k map to words of length k+1 whose first letter is i-1
    const Index src0 = basis->offset(k);
    const Index dst0 = basis->offset(k + 1) + static_cast<Index>(i - 1) * layer;
    for (Index rank = 0; rank < layer; ++rank) trips.emplace_back(dst0 + rank, src0 + rank, 1.0);
    layer *= r;
  }
  SparseMatrix l(n, n);
  l.setFromTriplets(trips.begin(), trips.end());
  return {basis, std::move(l)};
}

FockOperator semicircular_op(const std::shared_ptr<const FockBasis>& basis, int i) {
  const FockOperator l = creation(basis, i);
  return l + l.adjoint();
}

FockOperator circular_op(const std::shared_ptr<const FockBasis>& basis, int i) {
  if (i < 1 || 2 * i > basis->num_gens()) throw InvalidParameter("circular_op needs at least 2i generators");
  return creation(basis, 2 * i - 1) + creation(basis, 2 * i).adjoint();
}

Complex vacuum_expectation(const FockOperator& op) { return op.matrix().coeff(0, 0); }

Complex polynomial_moment(const NCPolynomial& p, const std::shared_ptr<const FockBasis>& basis) {
  if (p.num_vars() > basis->num_gens()) throw InvalidParameter("polynomial has more variables than Fock generators");
  std::vector<SparseMatrix> x;
  for (int i = 1; i <= p.num_vars(); ++i) x.push_back(semicircular_op(basis, i).matrix());
  Complex total{};
  for (const auto& [w, c] : p.terms()) {
    Vector v = Vector::Zero(basis->size());
    v(0) = 1.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = x[static_cast<std::size_t>(*it)] * v;
    total += c * v(0);
  }
  return total;
}

FockOperator evaluate_semicircular(const NCPolynomial& p, const std::shared_ptr<const FockBasis>& basis) {
  if (p.num_vars() > basis->num_gens()) throw InvalidParameter("polynomial has more variables than Fock generators");
  std::vector<SparseMatrix> x;
  for (int i = 1; i <= p.num_vars(); ++i) x.push_back(semicircular_op(basis, i).matrix());
  SparseMatrix out(basis->size(), basis->size());
  SparseMatrix id(basis->size(), basis->size());
  id.setIdentity();
  for (const auto& [w, c] : p.terms()) {
    SparseMatrix prod = id;
    for (int letter : w) prod = SparseMatrix(prod * x[static_cast<std::size_t>(letter)]);
    out += c * prod;
  }
  return {basis, std::move(out)};
}

double sparse_operator_norm(const SparseMatrix& a) {
  if (a.rows() == 0) return 0.0;
  if (a.rows() < 2048 && a.cols() < 2048) {
    const Matrix d(a);
    if (linalg::is_hermitian(d, 0.0)) return linalg::hermitian_norm(d);
    return linalg::operator_norm(d);
  }
  const SparseMatrix adj = a.adjoint();
  Vector tmp(a.rows());
  const double top = linalg::lanczos_max_eigenvalue(
      [&](const Vector& x, Vector& y) {
        tmp.noalias() = a * x;
        y.noalias() = adj * tmp;
      },
      a.cols());
  return std::sqrt(std::max(0.0, top));
}

FockNorm fock_norm(const FockOperator& op) { return {sparse_operator_norm(op.matrix()), op.basis().depth()}; }

SparseMatrix tensor(const Matrix& a, const SparseMatrix& t) {
  const Index n = t.rows();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Index j = 0; j < a.rows(); ++j) {
    for (Index k = 0; k < a.cols(); ++k) {
      const Complex c = a(j, k);
      if (c == Complex{}) continue;
      for (Index col = 0; col < t.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(t, col); it; ++it) {
          trips.emplace_back(j * n + it.row(), k * n + it.col(), c * it.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * n, a.cols() * t.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace spectra::fock
