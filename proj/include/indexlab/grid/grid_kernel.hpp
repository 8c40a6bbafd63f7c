#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <type_traits>
#include <vector>

#include "indexlab/exact/exact_matrix.hpp"
#include "indexlab/grid/grid.hpp"

namespace indexlab {

/// Operator on a grid with n x n fiber blocks.
///
/// The stored matrix is the operator matrix M[x, y] = K(x, y) * spacing^dim,
/// so composition is plain matrix multiplication. Row/column index of
/// (point p, fiber a) is p * n + a. `Matrix` is ExactMatrix (exact mode)
/// or Eigen::MatrixXcd (float mode).
template <class Matrix>
class GridKernel {
 public:
  static constexpr bool exact = std::is_same_v<Matrix, ExactMatrix>;

  GridKernel(Grid grid, std::size_t n) : grid_(grid), n_(n), m_(zero_matrix(grid.size() * n)) {}
  GridKernel(Grid grid, std::size_t n, Matrix m) : grid_(grid), n_(n), m_(std::move(m)) {
    if (std::size_t(m_.rows()) != dim() || std::size_t(m_.cols()) != dim())
      throw ShapeError("kernel matrix does not match grid and fiber size");
  }

  static GridKernel identity(Grid grid, std::size_t n = 1) {
    if constexpr (exact)
      return GridKernel(grid, n, ExactMatrix::identity(grid.size() * n));
    else
      return GridKernel(grid, n, Eigen::MatrixXcd::Identity(grid.size() * n, grid.size() * n));
  }

  const Grid& grid() const { return grid_; }
  std::size_t fiber() const { return n_; }
  std::size_t dim() const { return grid_.size() * n_; }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  GridKernel operator+(const GridKernel& o) const { return {grid_, n_, Matrix(m_ + o.check(*this).m_)}; }
  GridKernel operator-(const GridKernel& o) const { return {grid_, n_, Matrix(m_ - o.check(*this).m_)}; }
  GridKernel operator*(const GridKernel& o) const { return {grid_, n_, Matrix(m_ * o.check(*this).m_)}; }
  GridKernel operator-() const { return {grid_, n_, Matrix(-m_)}; }

  bool operator==(const GridKernel& o) const
    requires exact
  {
    return grid_.N() == o.grid_.N() && grid_.kind() == o.grid_.kind() && n_ == o.n_ && m_ == o.m_;
  }

 private:
  static Matrix zero_matrix(std::size_t d) {
    if constexpr (exact)
      return ExactMatrix(d, d);
    else
      return Eigen::MatrixXcd::Zero(d, d);
  }

  const GridKernel& check(const GridKernel& o) const {
    if (grid_.N() != o.grid_.N() || grid_.kind() != o.grid_.kind() || n_ != o.n_)
      throw ShapeError("kernels live on different grids");
    return *this;
  }

  Grid grid_;
  std::size_t n_;
  Matrix m_;
};

using ExactKernel = GridKernel<ExactMatrix>;
using FloatKernel = GridKernel<Eigen::MatrixXcd>;

/// Kernel value K(x, y) of a float-mode operator entry.
inline std::complex<double> kernel_value(const FloatKernel& k, std::size_t row, std::size_t col) {
  return k.matrix()(row, col) / std::pow(k.grid().spacing(), k.grid().dim());
}

/// Kernel value of an exact-mode entry. spacing^{-1} = N i / (2 pi i), so
/// the value carries grade -dim.
inline GradedScalar kernel_value(const ExactKernel& k, std::size_t row, std::size_t col) {
  GradedScalar inv_spacing(GaussRat(Rational(0), Rational(k.grid().N())), -1);
  GradedScalar s = k.matrix().at(row, col);
  for (int d = 0; d < k.grid().dim(); ++d) s = s * inv_spacing;
  return s;
}

/// Float-mode kernel from a block-valued function K(p, q).
inline FloatKernel kernel_from_function(const Grid& g, std::size_t n,
                                        const std::function<Eigen::MatrixXcd(std::size_t, std::size_t)>& K) {
  const double w = std::pow(g.spacing(), g.dim());
  Eigen::MatrixXcd m(g.size() * n, g.size() * n);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t q = 0; q < g.size(); ++q) m.block(p * n, q * n, n, n) = K(p, q) * w;
  return FloatKernel(g, n, std::move(m));
}

/// Pairs (x, y) whose block is nonzero (exact mode) or has Frobenius norm
/// above `threshold` (float mode).
inline SupportRelation kernel_support(const ExactKernel& k, double = 0.0) {
  SupportRelation r;
  const std::size_t n = k.fiber();
  for (const auto& [ij, v] : k.matrix().entries()) r.insert(ij.first / n, ij.second / n);
  return r;
}

inline SupportRelation kernel_support(const FloatKernel& k, double threshold) {
  SupportRelation r;
  const std::size_t n = k.fiber();
  const auto& m = k.matrix();
  for (std::size_t p = 0; p < k.grid().size(); ++p)
    for (std::size_t q = 0; q < k.grid().size(); ++q)
      if (m.block(p * n, q * n, n, n).norm() > threshold) r.insert(p, q);
  return r;
}

/// Zeroes every block farther than `radius` lattice steps from the diagonal.
inline ExactKernel truncate_support(const ExactKernel& k, long radius) {
  if (radius < 0) throw BadParameter("negative truncation radius");
  const std::size_t n = k.fiber();
  ExactMatrix m(k.dim(), k.dim());
  for (const auto& [ij, v] : k.matrix().entries())
    if (k.grid().steps(ij.first / n, ij.second / n) <= radius) m.set(ij.first, ij.second, v);
  return ExactKernel(k.grid(), n, std::move(m));
}

inline FloatKernel truncate_support(const FloatKernel& k, long radius) {
  if (radius < 0) throw BadParameter("negative truncation radius");
  const std::size_t n = k.fiber();
  Eigen::MatrixXcd m = k.matrix();
  for (std::size_t p = 0; p < k.grid().size(); ++p)
    for (std::size_t q = 0; q < k.grid().size(); ++q)
      if (k.grid().steps(p, q) > radius) m.block(p * n, q * n, n, n).setZero();
  return FloatKernel(k.grid(), n, std::move(m));
}

/// Random exact kernel with small rational entries inside band w.
inline ExactKernel random_smoothing(const Grid& g, long w, std::uint64_t seed, std::size_t n = 1,
                                    double density = 0.6) {
  if (w < 0) throw BadParameter("negative band width");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-3, 3), den(1, 4);
  std::bernoulli_distribution keep(density);
  ExactMatrix m(g.size() * n, g.size() * n);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t q = 0; q < g.size(); ++q) {
      if (g.steps(p, q) > w) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (!keep(rng)) continue;
          Rational v(num(rng), den(rng));
          v.canonicalize();
          if (sgn(v) != 0) m.set(p * n + a, q * n + b, GradedScalar(GaussRat(v)));
        }
    }
  return ExactKernel(g, n, std::move(m));
}

/// Largest block norm at each lattice distance 0..diameter.
inline std::vector<double> decay_profile(const FloatKernel& k) {
  const std::size_t n = k.fiber();
  std::vector<double> prof(k.grid().diameter() + 1, 0.0);
  for (std::size_t p = 0; p < k.grid().size(); ++p)
    for (std::size_t q = 0; q < k.grid().size(); ++q) {
      auto d = std::size_t(k.grid().steps(p, q));
      prof[d] = std::max(prof[d], k.matrix().block(p * n, q * n, n, n).norm());
    }
  return prof;
}

/// Least-squares rate r in log(profile[d]) ~ c - r d over d = 1..end with
/// positive values.
inline double fit_decay_rate(const std::vector<double>& prof) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t d = 1; d < prof.size(); ++d) {
    if (prof[d] <= 1e-300) continue;
    double x = double(d), y = std::log(prof[d]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  return -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

/// Exact grid kernels as an algebra; every kernel on a finite grid is smoothing.
struct GridKernelContext {
  using element_type = ExactKernel;
  Grid grid;
  std::size_t n = 1;

  ExactKernel add(const ExactKernel& a, const ExactKernel& b) const { return a + b; }
  ExactKernel sub(const ExactKernel& a, const ExactKernel& b) const { return a - b; }
  ExactKernel mul(const ExactKernel& a, const ExactKernel& b) const { return a * b; }
  ExactKernel neg(const ExactKernel& a) const { return -a; }
  ExactKernel one() const { return ExactKernel::identity(grid, n); }
  ExactKernel zero() const { return ExactKernel(grid, n); }
  bool equal(const ExactKernel& a, const ExactKernel& b) const { return a == b; }
  GradedScalar trace(const ExactKernel& a) const { return a.matrix().trace(); }
};

}  // namespace indexlab
