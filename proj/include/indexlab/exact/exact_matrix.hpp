#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "indexlab/exact/graded_scalar.hpp"

namespace indexlab {

/// Sparse rows x cols matrix of GradedScalar. Only nonzero entries are stored.
class ExactMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;
  using Entries = std::map<Index, GradedScalar>;

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, GradedScalar(1));
    return m;
  }

  static ExactMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    ExactMatrix m(n, n);
    m.set(i, j, GradedScalar(1));
    return m;
  }

  /// Builds from row-major GaussRat values.
  static ExactMatrix from_rows(const std::vector<std::vector<GaussRat>>& rows) {
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ShapeError("ragged rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, GradedScalar(rows[i][j]));
    }
    return m;
  }

  static ExactMatrix diag(const std::vector<GaussRat>& d) {
    ExactMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, GradedScalar(d[i]));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Entries& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  GradedScalar at(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? GradedScalar() : it->second;
  }

  void set(std::size_t i, std::size_t j, GradedScalar v) {
    if (i >= rows_ || j >= cols_) throw ShapeError("index out of bounds");
    if (v.is_zero())
      entries_.erase({i, j});
    else
      entries_[{i, j}] = std::move(v);
  }

  void add_to(std::size_t i, std::size_t j, const GradedScalar& v) {
    if (i >= rows_ || j >= cols_) throw ShapeError("index out of bounds");
    auto [it, inserted] = entries_.emplace(Index{i, j}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  ExactMatrix operator-() const {
    ExactMatrix r(rows_, cols_);
    for (const auto& [ij, v] : entries_) r.entries_.emplace(ij, -v);
    return r;
  }

  ExactMatrix& operator+=(const ExactMatrix& o) {
    require_same_shape(o);
    for (const auto& [ij, v] : o.entries_) add_to(ij.first, ij.second, v);
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    require_same_shape(o);
    for (const auto& [ij, v] : o.entries_) add_to(ij.first, ij.second, -v);
    return *this;
  }
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("inner dimensions differ in matrix product");
    ExactMatrix r(a.rows_, b.cols_);
    // row-wise access to b
    std::vector<std::vector<std::pair<std::size_t, const GradedScalar*>>> brow(b.rows_);
    for (const auto& [ij, v] : b.entries_) brow[ij.first].emplace_back(ij.second, &v);
    for (const auto& [ij, v] : a.entries_)
      for (const auto& [k, w] : brow[ij.second]) r.add_to(ij.first, k, v * *w);
    return r;
  }

  friend ExactMatrix operator*(const GradedScalar& s, const ExactMatrix& m) {
    ExactMatrix r(m.rows_, m.cols_);
    if (s.is_zero()) return r;
    for (const auto& [ij, v] : m.entries_) r.set(ij.first, ij.second, s * v);
    return r;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  ExactMatrix transpose() const {
    ExactMatrix r(cols_, rows_);
    for (const auto& [ij, v] : entries_) r.entries_.emplace(Index{ij.second, ij.first}, v);
    return r;
  }

  GradedScalar trace() const {
    if (!is_square()) throw ShapeError("trace of a non-square matrix");
    GradedScalar t;
    for (const auto& [ij, v] : entries_)
      if (ij.first == ij.second) t += v;
    return t;
  }

  /// Applies the matrix to a dense exact vector.
  std::vector<GradedScalar> apply(const std::vector<GradedScalar>& v) const {
    if (v.size() != cols_) throw ShapeError("vector length differs from column count");
    std::vector<GradedScalar> out(rows_);
    for (const auto& [ij, a] : entries_) out[ij.first] += a * v[ij.second];
    return out;
  }

  /// Copies the block [r0, r0+nr) x [c0, c0+nc).
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    ExactMatrix out(nr, nc);
    for (const auto& [ij, v] : entries_)
      if (ij.first >= r0 && ij.first < r0 + nr && ij.second >= c0 && ij.second < c0 + nc)
        out.entries_.emplace(Index{ij.first - r0, ij.second - c0}, v);
    return out;
  }

  /// Writes `m` with its top-left corner at (r0, c0), adding to existing entries.
  void add_block(std::size_t r0, std::size_t c0, const ExactMatrix& m) {
    for (const auto& [ij, v] : m.entries_) add_to(r0 + ij.first, c0 + ij.second, v);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + at(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  void require_same_shape(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Entries entries_;
};

}  // namespace indexlab
