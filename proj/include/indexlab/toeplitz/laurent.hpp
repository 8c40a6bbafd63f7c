#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "indexlab/exact/exact_matrix.hpp"

namespace indexlab {

/// Laurent polynomial in z with n x n exact matrix coefficients.
/// Degrees with a zero coefficient are not stored.
class LaurentMatrixPoly {
 public:
  using Coeffs = std::map<int, ExactMatrix>;

  explicit LaurentMatrixPoly(std::size_t n = 1) : n_(n) {}

  static LaurentMatrixPoly constant(const ExactMatrix& c) {
    LaurentMatrixPoly p(c.rows());
    p.set(0, c);
    return p;
  }
  static LaurentMatrixPoly identity(std::size_t n) { return constant(ExactMatrix::identity(n)); }

  /// c * z^k * Id_n
  static LaurentMatrixPoly monomial(int k, std::size_t n = 1, const GaussRat& c = GaussRat(1)) {
    LaurentMatrixPoly p(n);
    p.set(k, GradedScalar(c) * ExactMatrix::identity(n));
    return p;
  }

  /// Block-diagonal symbol from scalar symbols.
  static LaurentMatrixPoly diag(const std::vector<LaurentMatrixPoly>& entries) {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.size();
    LaurentMatrixPoly out(n);
    std::size_t off = 0;
    for (const auto& e : entries) {
      for (const auto& [d, m] : e.coeffs_) {
        ExactMatrix big = out.coeff(d);
        big.add_block(off, off, m);
        out.set(d, big);
      }
      off += e.size();
    }
    return out;
  }

  std::size_t size() const { return n_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  ExactMatrix coeff(int d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? ExactMatrix(n_, n_) : it->second;
  }
  const ExactMatrix* coeff_ptr(int d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? nullptr : &it->second;
  }

  void set(int d, ExactMatrix m) {
    if (m.rows() != n_ || m.cols() != n_) throw ShapeError("coefficient size differs from fiber dimension");
    for (const auto& [ij, v] : m.entries())
      if (!v.is_grade0()) throw GradeMismatch("symbol coefficients must be grade 0");
    if (m.is_zero())
      coeffs_.erase(d);
    else
      coeffs_[d] = std::move(m);
  }

  int min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  LaurentMatrixPoly operator-() const {
    LaurentMatrixPoly r(n_);
    for (const auto& [d, m] : coeffs_) r.coeffs_.emplace(d, -m);
    return r;
  }
  LaurentMatrixPoly& operator+=(const LaurentMatrixPoly& o) {
    if (o.n_ != n_) throw ShapeError("fiber dimensions differ");
    for (const auto& [d, m] : o.coeffs_) set(d, coeff(d) + m);
    return *this;
  }
  LaurentMatrixPoly& operator-=(const LaurentMatrixPoly& o) { return *this += -o; }
  friend LaurentMatrixPoly operator+(LaurentMatrixPoly a, const LaurentMatrixPoly& b) { return a += b; }
  friend LaurentMatrixPoly operator-(LaurentMatrixPoly a, const LaurentMatrixPoly& b) { return a -= b; }

  friend LaurentMatrixPoly operator*(const LaurentMatrixPoly& a, const LaurentMatrixPoly& b) {
    if (a.n_ != b.n_) throw ShapeError("fiber dimensions differ");
    LaurentMatrixPoly r(a.n_);
    for (const auto& [da, ma] : a.coeffs_)
      for (const auto& [db, mb] : b.coeffs_) r.set(da + db, r.coeff(da + db) + ma * mb);
    return r;
  }

  friend bool operator==(const LaurentMatrixPoly& a, const LaurentMatrixPoly& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentMatrixPoly& a, const LaurentMatrixPoly& b) { return !(a == b); }

  /// Numeric value at a complex point.
  Eigen::MatrixXcd evaluate(std::complex<double> z) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
    for (const auto& [d, m] : coeffs_) {
      std::complex<double> zd = std::pow(z, d);
      for (const auto& [ij, v] : m.entries()) out(ij.first, ij.second) += zd * numeric_eval(v);
    }
    return out;
  }

  std::complex<double> det_at(std::complex<double> z) const { return evaluate(z).determinant(); }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [d, m] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += (n_ == 1 ? m.at(0, 0).to_string() : m.to_string()) + "*z^" + std::to_string(d);
    }
    return s;
  }

 private:
  std::size_t n_;
  Coeffs coeffs_;
};

}  // namespace indexlab
