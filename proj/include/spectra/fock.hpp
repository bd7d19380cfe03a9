#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "spectra/linalg.hpp"
#include "spectra/ncpoly.hpp"

namespace spectra::fock {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Words of length ≤ depth over r letters, length-lexicographic. Index 0 is
/// the vacuum (empty word).
class FockBasis {
 public:
  /// Largest supported basis (operators are stored sparse).
  static constexpr Index kMaxWords = Index{1} << 20;

  FockBasis(int num_gens, int depth);

  int num_gens() const { return r_; }
  int depth() const { return d_; }
  Index size() const { return size_; }

  /// Position of the first word of the given length.
  Index offset(int length) const { return offsets_[static_cast<std::size_t>(length)]; }
  Index index_of(const Word& w) const;
  Word word(Index idx) const;
  int length_of(Index idx) const;
  std::vector<Word> words() const;

  friend bool operator==(const FockBasis& a, const FockBasis& b) { return a.r_ == b.r_ && a.d_ == b.d_; }

 private:
  int r_;
  int d_;
  Index size_ = 0;
  std::vector<Index> offsets_;
};

class FockOperator {
 public:
  FockOperator(std::shared_ptr<const FockBasis> basis, SparseMatrix matrix);

  const FockBasis& basis() const { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
  const SparseMatrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  FockOperator adjoint() const;
  Matrix dense() const { return Matrix(matrix_); }

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(Complex c, const FockOperator& a);

 private:
  std::shared_ptr<const FockBasis> basis_;
  SparseMatrix matrix_;
};

std::shared_ptr<const FockBasis> make_basis(int num_gens, int depth);

FockOperator identity(const std::shared_ptr<const FockBasis>& basis);

/// ℓ_i: w ↦ i w for |w| < depth, top-level words are killed. i is 1-based.
FockOperator creation(const std::shared_ptr<const FockBasis>& basis, int i);

/// x_i = ℓ_i + ℓ_i*
FockOperator semicircular_op(const std::shared_ptr<const FockBasis>& basis, int i);

/// y_i = ℓ_{2i-1} + ℓ_{2i}*
FockOperator circular_op(const std::shared_ptr<const FockBasis>& basis, int i);

/// ⟨T Ω, Ω⟩
Complex vacuum_expectation(const FockOperator& op);

/// τ(p(x_1, ..., x_r)) with x_i the semicircular operators, computed by
/// applying each word to the vacuum vector.
Complex polynomial_moment(const NCPolynomial& p, const std::shared_ptr<const FockBasis>& basis);

/// p(x_1, ..., x_r) as a Fock operator.
FockOperator evaluate_semicircular(const NCPolynomial& p, const std::shared_ptr<const FockBasis>& basis);

/// Truncated norm. Only a lower bound for the norm on the full space, so it
/// is reported together with the depth that produced it.
struct FockNorm {
  double value = 0.0;
  int depth = 0;
};

FockNorm fock_norm(const FockOperator& op);

/// Largest singular value of a sparse matrix: dense below 2048 rows, Lanczos
/// on A* A above.
double sparse_operator_norm(const SparseMatrix& a);

/// a ⊗ T as an (m dim) x (m dim) sparse matrix.
SparseMatrix tensor(const Matrix& a, const SparseMatrix& t);

}  // namespace spectra::fock
