#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "spectra/error.hpp"
#include "spectra/ncpoly.hpp"

namespace spectra {

/// Syntax error with the 0-based byte offset where parsing stopped.
class ParseError : public InvalidParameter {
 public:
  ParseError(const std::string& message, std::size_t position, std::string_view text);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses sums of terms such as "(2+1i)*x1*x2 - 0.5*x2 + 3". A term is an
/// optional coefficient followed by variables x1, x2, ... with optional '*'
/// separators. Coefficients are real literals, imaginary literals like 2i, or
/// parenthesised complex literals (a+bi). Variables are numbered from 1. The
/// number of variables is the largest index used, or `num_vars` when that is
/// larger. Accepts everything NCPolynomial::to_string prints.
NCPolynomial parse_polynomial(std::string_view text, int num_vars = 0);

}  // namespace spectra
