#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "indexlab/toeplitz/laurent.hpp"

namespace indexlab {

namespace detail {

// Recursive-descent reader for the symbol mini-language:
//   "2*z^-1 + 1 + (3/2)*z^2",  "[[z,0],[0,z^-1]]"
class SymbolReader {
 public:
  explicit SymbolReader(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  LaurentMatrixPoly read() {
    LaurentMatrixPoly out = peek() == '[' ? matrix() : LaurentMatrixPoly(scalar_poly_as_matrix(poly()));
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  using Scalar = std::map<int, GaussRat>;

  static LaurentMatrixPoly scalar_poly_as_matrix(const Scalar& p) {
    LaurentMatrixPoly out(1);
    for (const auto& [d, c] : p) out.set(d, ExactMatrix::diag({c}));
    return out;
  }

  LaurentMatrixPoly matrix() {
    expect('[');
    std::vector<std::vector<Scalar>> rows;
    do {
      expect('[');
      std::vector<Scalar> row;
      do row.push_back(poly());
      while (accept(','));
      expect(']');
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    const std::size_t n = rows.size();
    LaurentMatrixPoly out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) fail("matrix symbol must be square");
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [d, c] : rows[i][j]) {
          ExactMatrix m = out.coeff(d);
          m.set(i, j, GradedScalar(c));
          out.set(d, m);
        }
    }
    return out;
  }

  Scalar poly() {
    Scalar p;
    bool first = true;
    while (true) {
      int sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      auto [deg, c] = term();
      if (sign < 0) c = -c;
      p[deg] += c;
      if (p[deg].is_zero()) p.erase(deg);
      first = false;
      if (peek() != '+' && peek() != '-') break;
    }
    return p;
  }

  std::pair<int, GaussRat> term() {
    GaussRat c(1);
    if (peek() != 'z') {
      c = coefficient();
      if (!accept('*')) return {0, c};
    }
    expect('z');
    int deg = 1;
    if (accept('^')) deg = integer();
    return {deg, c};
  }

  GaussRat coefficient() {
    if (accept('(')) {
      std::size_t start = pos_;
      int depth = 1;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth != 0) fail("unbalanced parenthesis");
      return parse_gauss(s_.substr(start, pos_ - 1 - start));
    }
    if (accept('i')) return GaussRat::i();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected a coefficient");
    GaussRat c(parse_rational(s_.substr(start, pos_ - start)));
    if (peek() == 'i') {
      ++pos_;
      c = c * GaussRat::i();
    } else if (peek() == '*' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'i') {
      pos_ += 2;
      c = c * GaussRat::i();
    }
    return c;
  }

  int integer() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected an integer exponent");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in symbol '" + s_ + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the CLI symbol mini-language into a Laurent matrix polynomial.
inline LaurentMatrixPoly parse_symbol(std::string_view text) { return detail::SymbolReader(text).read(); }

}  // namespace indexlab
