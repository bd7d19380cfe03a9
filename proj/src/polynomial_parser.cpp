#include "spectra/polynomial_parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>
#include <vector>

namespace spectra {

namespace {

std::string annotate(const std::string& message, std::size_t position, std::string_view text) {
  std::string out = "parse error at column " + std::to_string(position + 1) + ": " + message + "\n  ";
  out.append(text);
  out += "\n  " + std::string(position, ' ') + "^";
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<std::pair<Word, Complex>> parse() {
    std::vector<std::pair<Word, Complex>> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1.0 : 1.0;
      skip_ws();
    }
    while (true) {
      auto term = parse_term();
      term.second *= sign;
      terms.push_back(std::move(term));
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+', '-' or end of input");
      sign = take() == '-' ? -1.0 : 1.0;
      skip_ws();
    }
    return terms;
  }

 private:
  std::pair<Word, Complex> parse_term() {
    Complex coeff = 1.0;
    bool have_coeff = false;
    if (peek() == '(') {
      coeff = parse_parenthesised();
      have_coeff = true;
    } else if (is_number_start(peek())) {
      coeff = parse_bare_literal();
      have_coeff = true;
    }
    Word word;
    while (true) {
      skip_ws();
      const std::size_t save = pos_;
      if (peek() == '*') {
        take();
        skip_ws();
        if (peek() != 'x') fail("expected variable 'x<k>' after '*'");
      }
      if (peek() != 'x') {
        pos_ = save;
        break;
      }
      word.push_back(parse_variable());
    }
    if (!have_coeff && word.empty()) fail("expected a coefficient or a variable 'x<k>'");
    return {std::move(word), coeff};
  }

  int parse_variable() {
    const std::size_t start = pos_;
    take();  // 'x'
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits after 'x'");
    int index = 0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc()) fail_at("variable index out of range", start);
    pos_ += static_cast<std::size_t>(ptr - first);
    if (index < 1) fail_at("variables are numbered from x1", start);
    return index - 1;
  }

  Complex parse_parenthesised() {
    take();  // '('
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
    const double a = sign * parse_number();
    skip_ws();
    Complex value;
    if (peek() == 'i') {
      take();
      value = Complex(0.0, a);
    } else if (peek() == '+' || peek() == '-') {
      const double s = take() == '-' ? -1.0 : 1.0;
      skip_ws();
      const double b = s * parse_number();
      if (peek() != 'i') fail("expected 'i' after the imaginary part");
      take();
      value = Complex(a, b);
    } else {
      value = Complex(a, 0.0);
    }
    skip_ws();
    if (peek() != ')') fail("expected ')'");
    take();
    return value;
  }

  Complex parse_bare_literal() {
    const double v = parse_number();
    if (peek() == 'i') {
      take();
      return Complex(0.0, v);
    }
    return Complex(v, 0.0);
  }

  double parse_number() {
    if (!is_number_start(peek())) fail("expected a number");
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + text_.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  static bool is_number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at, text_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position, std::string_view text)
    : InvalidParameter(annotate(message, position, text)), position_(position) {}

NCPolynomial parse_polynomial(std::string_view text, int num_vars) {
  const auto terms = Parser(text).parse();
  int needed = std::max(num_vars, 0);
  for (const auto& [word, coeff] : terms) {
    for (int v : word) needed = std::max(needed, v + 1);
  }
  NCPolynomial p(needed);
  for (const auto& [word, coeff] : terms) p.add_term(word, coeff);
  return p;
}

}  // namespace spectra
