#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "indexlab/errors.hpp"

namespace indexlab {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// Element of Q(i): re + im*i with arbitrary-precision rational parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRat conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  GaussRat inverse() const {
    if (is_zero()) throw NotInvertible("inverse of zero");
    Rational n = norm2();
    return {re_ / n, -im_ / n};
  }

  GaussRat operator-() const { return {-re_, -im_}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_real()) {
      if (sgn(o.re_) == 0) throw NotInvertible("division by zero");
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  std::string to_string() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    std::string s = "(" + re_.get_str();
    s += sgn(im_) < 0 ? "-" : "+";
    s += Rational(abs(im_)).get_str() + "i)";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& x) { return os << x.to_string(); }

  std::size_t hash() const {
    std::hash<std::string> h;
    return h(re_.get_str()) * 31u + h(im_.get_str());
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parses "p/q", "p/q*i", "i", "-i", "(a+bi)" style literals.
inline GaussRat parse_gauss(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw ParseError("empty scalar literal");
  // split into signed terms
  GaussRat out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos + 1;
    while (next < s.size() &&
           !((s[next] == '+' || s[next] == '-') && s[next - 1] != '/' && s[next - 1] != '*'))
      ++next;
    std::string term = s.substr(pos, next - pos);
    bool imag = !term.empty() && term.back() == 'i';
    if (imag) {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term == "+") term = "1";
      if (term == "-") term = "-1";
      out += GaussRat(Rational(0), parse_rational(term));
    } else {
      out += GaussRat(parse_rational(term));
    }
    pos = next;
  }
  return out;
}

}  // namespace indexlab
