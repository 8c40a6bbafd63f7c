#pragma once

#include <map>
#include <utility>

#include "indexlab/exact/rank_kernel.hpp"
#include "indexlab/toeplitz/laurent.hpp"

namespace indexlab {

/// Semi-infinite block matrix  T[i,j] = a_{i-j} + C(i,j),  i, j >= 0,
/// where a is a Laurent matrix polynomial and C has finite support.
///
/// Elements with zero symbol form the smoothing ideal; products are exact
/// because the half-line defect of a Toeplitz product is finite.
class ToeplitzElement {
 public:
  using Site = std::pair<long, long>;
  using Correction = std::map<Site, ExactMatrix>;

  explicit ToeplitzElement(std::size_t n = 1) : symbol_(n) {}
  explicit ToeplitzElement(LaurentMatrixPoly symbol) : symbol_(std::move(symbol)) {}

  static ToeplitzElement identity(std::size_t n = 1) { return ToeplitzElement(LaurentMatrixPoly::identity(n)); }
  static ToeplitzElement zero(std::size_t n = 1) { return ToeplitzElement(n); }
  static ToeplitzElement of_symbol(const LaurentMatrixPoly& a) { return ToeplitzElement(a); }

  /// Rank-one site projector E_ii (times Id_n).
  static ToeplitzElement site_projector(long i, std::size_t n = 1) {
    ToeplitzElement t(n);
    t.set_correction(i, i, ExactMatrix::identity(n));
    return t;
  }

  std::size_t size() const { return symbol_.size(); }
  const LaurentMatrixPoly& symbol() const { return symbol_; }
  const Correction& correction() const { return corr_; }
  bool in_ideal() const { return symbol_.is_zero(); }

  void set_correction(long i, long j, ExactMatrix m) {
    if (i < 0 || j < 0) throw ShapeError("site indices must be nonnegative");
    if (m.rows() != size() || m.cols() != size()) throw ShapeError("block size differs from fiber dimension");
    if (m.is_zero())
      corr_.erase({i, j});
    else
      corr_[{i, j}] = std::move(m);
  }
  void add_correction(long i, long j, const ExactMatrix& m) {
    auto it = corr_.find({i, j});
    set_correction(i, j, it == corr_.end() ? m : it->second + m);
  }

  /// Block T[i,j].
  ExactMatrix block(long i, long j) const {
    ExactMatrix b = symbol_.coeff(static_cast<int>(i - j));
    auto it = corr_.find({i, j});
    if (it != corr_.end()) b += it->second;
    return b;
  }

  /// Largest site index touched by the correction, or -1.
  long correction_extent() const {
    long m = -1;
    for (const auto& [ij, b] : corr_) m = std::max({m, ij.first, ij.second});
    return m;
  }

  /// Top-left K x K block truncation as an (nK) x (nK) exact matrix.
  ExactMatrix truncate(long K) const {
    const std::size_t n = size();
    ExactMatrix out(n * K, n * K);
    for (const auto& [d, m] : symbol_.coeffs())
      for (long j = 0; j < K; ++j) {
        long i = j + d;
        if (i >= 0 && i < K) out.add_block(n * i, n * j, m);
      }
    for (const auto& [ij, b] : corr_)
      if (ij.first < K && ij.second < K) out.add_block(n * ij.first, n * ij.second, b);
    return out;
  }

  ToeplitzElement operator-() const {
    ToeplitzElement r(-symbol_);
    for (const auto& [ij, b] : corr_) r.corr_.emplace(ij, -b);
    return r;
  }
  ToeplitzElement& operator+=(const ToeplitzElement& o) {
    if (o.size() != size()) throw ShapeError("fiber dimensions differ");
    symbol_ += o.symbol_;
    for (const auto& [ij, b] : o.corr_) add_correction(ij.first, ij.second, b);
    return *this;
  }
  ToeplitzElement& operator-=(const ToeplitzElement& o) { return *this += -o; }
  friend ToeplitzElement operator+(ToeplitzElement a, const ToeplitzElement& b) { return a += b; }
  friend ToeplitzElement operator-(ToeplitzElement a, const ToeplitzElement& b) { return a -= b; }

  friend ToeplitzElement operator*(const ToeplitzElement& x, const ToeplitzElement& y) {
    if (x.size() != y.size()) throw ShapeError("fiber dimensions differ in Toeplitz product");
    const auto& a = x.symbol_;
    const auto& b = y.symbol_;
    ToeplitzElement r(a * b);

    // T_a T_b = T_{ab} - sum_{k<0} a_{i-k} b_{k-j}
    for (const auto& [da, ma] : a.coeffs())
      for (const auto& [db, mb] : b.coeffs())
        for (long k = -1; k >= -static_cast<long>(std::max(0, da)); --k) {
          long i = k + da;  // a_{i-k}: i - k = da
          long j = k - db;  // b_{k-j}: k - j = db
          if (i >= 0 && j >= 0) r.add_correction(i, j, -(ma * mb));
        }
    // T_a D
    for (const auto& [kj, d] : y.corr_)
      for (const auto& [da, ma] : a.coeffs()) {
        long i = kj.first + da;
        if (i >= 0) r.add_correction(i, kj.second, ma * d);
      }
    // C T_b
    for (const auto& [ik, c] : x.corr_)
      for (const auto& [db, mb] : b.coeffs()) {
        long j = ik.second - db;
        if (j >= 0) r.add_correction(ik.first, j, c * mb);
      }
    // C D
    std::map<long, std::vector<std::pair<long, const ExactMatrix*>>> yrows;
    for (const auto& [kj, d] : y.corr_) yrows[kj.first].emplace_back(kj.second, &d);
    for (const auto& [ik, c] : x.corr_) {
      auto it = yrows.find(ik.second);
      if (it == yrows.end()) continue;
      for (const auto& [j, d] : it->second) r.add_correction(ik.first, j, c * *d);
    }
    return r;
  }

  friend bool operator==(const ToeplitzElement& a, const ToeplitzElement& b) {
    return a.symbol_ == b.symbol_ && a.corr_ == b.corr_;
  }
  friend bool operator!=(const ToeplitzElement& a, const ToeplitzElement& b) { return !(a == b); }

 private:
  LaurentMatrixPoly symbol_;
  Correction corr_;
};

/// The quotient map onto symbols; an algebra homomorphism whose kernel is
/// the smoothing ideal.
inline LaurentMatrixPoly symbol_map(const ToeplitzElement& x) { return x.symbol(); }

/// Trace on the smoothing ideal: sum of traces of the diagonal blocks.
inline GradedScalar trace_smoothing(const ToeplitzElement& x) {
  if (!x.in_ideal()) throw NotTraceClass("element has nonzero symbol");
  GradedScalar t;
  for (const auto& [ij, b] : x.correction())
    if (ij.first == ij.second) t += b.trace();
  return t;
}

}  // namespace indexlab
