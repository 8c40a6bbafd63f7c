#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>

#include "indexlab/exact/gaussian_rational.hpp"

namespace indexlab {

/// Finite sum  sum_m c_m (2 pi i)^m  with Gaussian-rational c_m.
///
/// The constant 2 pi i stays formal so identities involving the index
/// normalizations can be checked for exact zero. Terms with zero
/// coefficient are never stored.
class GradedScalar {
 public:
  using Terms = std::map<int, GaussRat>;

  GradedScalar() = default;
  GradedScalar(long v) : GradedScalar(GaussRat(v)) {}  // NOLINT
  GradedScalar(GaussRat c, int grade = 0) {             // NOLINT
    if (!c.is_zero()) terms_.emplace(grade, std::move(c));
  }

  /// (2 pi i)^grade
  static GradedScalar two_pi_i(int grade = 1) { return GradedScalar(GaussRat(1), grade); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_grade() const { return terms_.size() == 1; }
  bool is_grade0() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Coefficient of (2 pi i)^grade.
  GaussRat coeff(int grade) const {
    auto it = terms_.find(grade);
    return it == terms_.end() ? GaussRat() : it->second;
  }

  GradedScalar operator-() const {
    GradedScalar r;
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
    return r;
  }

  GradedScalar& operator+=(const GradedScalar& o) {
    for (const auto& [g, c] : o.terms_) {
      auto [it, inserted] = terms_.emplace(g, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  GradedScalar& operator-=(const GradedScalar& o) { return *this += -o; }

  friend GradedScalar operator+(GradedScalar a, const GradedScalar& b) { return a += b; }
  friend GradedScalar operator-(GradedScalar a, const GradedScalar& b) { return a -= b; }

  friend GradedScalar operator*(const GradedScalar& a, const GradedScalar& b) {
    GradedScalar r;
    for (const auto& [ga, ca] : a.terms_)
      for (const auto& [gb, cb] : b.terms_) r += GradedScalar(ca * cb, ga + gb);
    return r;
  }
  GradedScalar& operator*=(const GradedScalar& o) { return *this = *this * o; }

  /// Inverse of a single-term scalar; sums of several grades are not units here.
  GradedScalar inverse() const {
    if (terms_.size() != 1) throw NotInvertible("only single-grade nonzero scalars are invertible");
    const auto& [g, c] = *terms_.begin();
    return GradedScalar(c.inverse(), -g);
  }

  friend bool operator==(const GradedScalar& a, const GradedScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const GradedScalar& a, const GradedScalar& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.to_string();
      if (g != 0) s += "*(2pi i)^" + std::to_string(g);
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Substitutes 2 pi i numerically.
inline std::complex<double> numeric_eval(const GradedScalar& x) {
  const std::complex<double> base(0.0, 2.0 * std::numbers::pi);
  std::complex<double> out = 0.0;
  for (const auto& [g, c] : x.terms()) out += c.to_complex() * std::pow(base, g);
  return out;
}

/// n! as an exact rational.
inline Rational factorial(unsigned n) {
  mpz_class r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return Rational(r);
}

}  // namespace indexlab
