#include "spectra/ncpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spectra/error.hpp"

namespace spectra {
namespace {

void check_vars(int num_vars, const Word& w) {
  for (int v : w) {
    if (v < 0 || v >= num_vars) throw InvalidParameter("word uses a variable outside x1..x" + std::to_string(num_vars));
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

NCPolynomial NCPolynomial::constant(int num_vars, Complex c) {
  NCPolynomial p(num_vars);
  p.add_term({}, c);
  return p;
}

NCPolynomial NCPolynomial::variable(int num_vars, int index) { return monomial(num_vars, {index}); }

NCPolynomial NCPolynomial::monomial(int num_vars, Word word, Complex c) {
  check_vars(num_vars, word);
  NCPolynomial p(num_vars);
  p.add_term(word, c);
  return p;
}

Complex NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

void NCPolynomial::add_term(const Word& w, Complex c) {
  check_vars(num_vars_, w);
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

int NCPolynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.size());
}

bool NCPolynomial::is_selfadjoint() const { return star(*this) == *this; }

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& other) {
  num_vars_ = std::max(num_vars_, other.num_vars_);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& other) {
  num_vars_ = std::max(num_vars_, other.num_vars_);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second == Complex{} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out(std::max(a.num_vars(), b.num_vars()));
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    const bool unit_coeff = c == Complex(1.0, 0.0) && !w.empty();
    if (!unit_coeff) {
      out += "(" + format_double(c.real());
      out += (std::signbit(c.imag()) ? "-" : "+") + format_double(std::abs(c.imag())) + "i)";
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k > 0 || !unit_coeff) out += "*";
      out += "x" + std::to_string(w[k] + 1);
    }
  }
  return out;
}

NCPolynomial star(const NCPolynomial& p) {
  NCPolynomial out(p.num_vars());
  for (const auto& [w, c] : p.terms()) {
    out.add_term(Word(w.rbegin(), w.rend()), std::conj(c));
  }
  return out;
}

Matrix evaluate(const NCPolynomial& p, std::span<const Matrix> mats) {
  if (static_cast<int>(mats.size()) != p.num_vars()) {
    throw InvalidParameter("evaluate: expected " + std::to_string(p.num_vars()) + " matrices, got " +
                           std::to_string(mats.size()));
  }
  if (mats.empty()) {
    return Matrix::Constant(1, 1, p.coefficient({}));
  }
  const Index k = mats.front().rows();
  for (const auto& x : mats) {
    if (x.rows() != k || x.cols() != k) throw InvalidParameter("evaluate: matrices must be square of equal size");
  }
  Matrix out = Matrix::Zero(k, k);
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) {
      out.diagonal().array() += c;
      continue;
    }
    Matrix prod = mats[static_cast<std::size_t>(w[0])];
    for (std::size_t j = 1; j < w.size(); ++j) prod = prod * mats[static_cast<std::size_t>(w[j])];
    out += c * prod;
  }
  return out;
}

}  // namespace spectra
