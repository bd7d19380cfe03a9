#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "spectra/linalg.hpp"

namespace spectra {

/// A word x_{i1} x_{i2} ... x_{ik} stored as zero-based variable indices.
/// The empty word is the unit.
using Word = std::vector<int>;

/// Length-lexicographic order: shorter words first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Formal *-polynomial in noncommuting self-adjoint indeterminates x_1..x_r.
/// Zero coefficients are never stored (exact comparison, no epsilon).
class NCPolynomial {
 public:
  using Terms = std::map<Word, Complex, WordOrder>;

  NCPolynomial() = default;
  explicit NCPolynomial(int num_vars) : num_vars_(num_vars) {}

  static NCPolynomial constant(int num_vars, Complex c);
  /// The indeterminate x_{index+1}.
  static NCPolynomial variable(int num_vars, int index);
  static NCPolynomial monomial(int num_vars, Word word, Complex c = 1.0);

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Word& w) const;

  /// Adds c to the coefficient of w, dropping the term if it becomes exactly zero.
  void add_term(const Word& w, Complex c);

  /// Highest word length; -1 for the zero polynomial.
  int degree() const;
  bool is_selfadjoint() const;

  NCPolynomial& operator+=(const NCPolynomial& other);
  NCPolynomial& operator-=(const NCPolynomial& other);
  NCPolynomial& operator*=(Complex c);

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(Complex c, NCPolynomial a) { return a *= c; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Canonical text, e.g. "(2+1i)*x1*x2 + x2 + (-1+0i)". Parses back to *this.
  std::string to_string() const;

 private:
  int num_vars_ = 0;
  Terms terms_;
};

/// Conjugates coefficients and reverses words.
NCPolynomial star(const NCPolynomial& p);

/// Word-by-word product-and-sum on a tuple of equal-size square matrices.
Matrix evaluate(const NCPolynomial& p, std::span<const Matrix> mats);

}  // namespace spectra
