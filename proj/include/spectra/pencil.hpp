#pragma once

#include <span>
#include <vector>

#include "spectra/linalg.hpp"

namespace spectra {

/// Coefficient tuple (a0, a1, ..., ar) of m x m matrices, no symmetry required.
/// Evaluates to a0 ⊗ 1 + Σ ai ⊗ xi.
class LinearPencil {
 public:
  LinearPencil() = default;
  explicit LinearPencil(std::vector<Matrix> coefficients);

  Index m() const { return m_; }
  int r() const { return static_cast<int>(a_.size()) - 1; }
  const Matrix& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& coefficients() const { return a_; }

  /// a0 ⊗ 1_n + Σ ai ⊗ mats[i-1]; mats must be square of a common size n.
  Matrix evaluate(std::span<const Matrix> mats) const;

 private:
  Index m_ = 0;
  std::vector<Matrix> a_;
};

/// Self-adjoint pencil: every coefficient Hermitian within 1e-12 (checked).
class Pencil {
 public:
  Pencil() = default;
  explicit Pencil(std::vector<Matrix> coefficients);

  /// a0 = 0 and r copies of a1 = 1_m.
  static Pencil semicircle(Index m = 1, int r = 1);

  Index m() const { return base_.m(); }
  int r() const { return base_.r(); }
  const Matrix& a(int i) const { return base_.a(i); }
  const std::vector<Matrix>& coefficients() const { return base_.coefficients(); }
  const LinearPencil& linear() const { return base_; }

  /// Σ_{i>=1} ai^2
  Matrix sum_of_squares() const;

  /// ||a0|| + 2 Σ ||ai||, an a-priori bound on ||s||.
  double norm_bound() const;

 private:
  LinearPencil base_;
};

/// S_n = a0 ⊗ 1_n + Σ ai ⊗ X_i for Hermitian X_i (checked). Result is Hermitian.
Matrix pencil_evaluate(const Pencil& p, std::span<const Matrix> mats);

/// b_i ↦ [[0, b_i*], [b_i, 0]]; the 2m pencil is invertible on a tuple exactly
/// when the original combination is.
Pencil selfadjoint_embed(std::span<const Matrix> b);

/// For a = (a0, ..., a_r, a_{r+1}) builds the (r+1)m block pencil whose Schur
/// complement onto the top-left block is a0 ⊗ 1 + Σ ai ⊗ xi + a_{r+1} ⊗ Σ xi^2.
/// b0 carries a0 at (0,0), a_i at (i,0) and identities on the remaining diagonal;
/// b_i carries -1 at (0,i) and a_{r+1} at (i,0).
LinearPencil linearize_quadratic(std::span<const Matrix> a);

/// a0 ⊗ 1 + Σ ai ⊗ xi + a_{r+1} ⊗ Σ xi^2, evaluated directly.
Matrix quadratic_evaluate(std::span<const Matrix> a, std::span<const Matrix> mats);

}  // namespace spectra
