#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "indexlab/exact/graded_scalar.hpp"
#include "indexlab/grid/grid.hpp"

namespace indexlab {

using Points = std::vector<std::size_t>;

/// Alexander-Spanier cochain of degree q on a grid, evaluated on demand.
///
/// With radius >= 0 the cochain vanishes on every tuple having two points
/// more than `radius` lattice steps apart; radius < 0 means unrestricted.
/// `normalization` is a formal graded multiplier applied by the pairings.
class ASCochain {
 public:
  using Evaluator = std::function<GaussRat(const Points&)>;

  ASCochain(Grid grid, int degree, long radius, Evaluator f, bool antisymmetric,
            GradedScalar normalization = GradedScalar(1))
      : grid_(grid),
        degree_(degree),
        radius_(radius),
        f_(std::move(f)),
        antisymmetric_(antisymmetric),
        normalization_(std::move(normalization)) {
    if (degree < 0) throw DegreeError("negative cochain degree");
  }

  const Grid& grid() const { return grid_; }
  int degree() const { return degree_; }
  long radius() const { return radius_; }
  bool antisymmetric() const { return antisymmetric_; }
  const GradedScalar& normalization() const { return normalization_; }

  bool within_radius(const Points& x) const {
    if (radius_ < 0) return true;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (grid_.steps(x[i], x[j]) > radius_) return false;
    return true;
  }

  GaussRat operator()(const Points& x) const {
    if (int(x.size()) != degree_ + 1) throw DegreeError("cochain evaluated on a tuple of the wrong length");
    if (!within_radius(x)) return GaussRat(0);
    return f_(x);
  }

 private:
  Grid grid_;
  int degree_;
  long radius_;
  Evaluator f_;
  bool antisymmetric_;
  GradedScalar normalization_;
};

/// Constant q-cochain (not antisymmetric for q > 0).
inline ASCochain constant_cochain(const Grid& g, int q, const GaussRat& c) {
  return ASCochain(g, q, -1, [c](const Points&) { return c; }, q == 0);
}

/// 0-cochain x -> f(x).
inline ASCochain function_cochain(const Grid& g, std::vector<GaussRat> f) {
  if (f.size() != g.size()) throw ShapeError("function has the wrong number of values");
  return ASCochain(g, 0, -1, [f = std::move(f)](const Points& x) { return f[x[0]]; }, true);
}

/// eta(x_0, ..., x_k) = f_0(x_0) ... f_k(x_k).
inline ASCochain product_cochain(const Grid& g, std::vector<std::vector<GaussRat>> fs) {
  if (fs.empty()) throw DegreeError("empty product cochain");
  for (const auto& f : fs)
    if (f.size() != g.size()) throw ShapeError("function has the wrong number of values");
  const int q = int(fs.size()) - 1;
  return ASCochain(
      g, q, -1,
      [fs = std::move(fs)](const Points& x) {
        GaussRat v(1);
        for (std::size_t i = 0; i < x.size() && !v.is_zero(); ++i) v *= fs[i][x[i]];
        return v;
      },
      q == 0);
}

/// (1/(q+1)!) sum_sigma sign(sigma) f(x o sigma).
inline ASCochain antisymmetrize(const ASCochain& f) {
  const int q = f.degree();
  const GaussRat scale(Rational(1) / factorial(q + 1));
  return ASCochain(
      f.grid(), q, f.radius(),
      [f, scale, q](const Points& x) {
        std::vector<int> perm(q + 1);
        std::iota(perm.begin(), perm.end(), 0);
        GaussRat acc(0);
        Points y(x.size());
        do {
          int inversions = 0;
          for (int i = 0; i <= q; ++i)
            for (int j = i + 1; j <= q; ++j)
              if (perm[i] > perm[j]) ++inversions;
          for (int i = 0; i <= q; ++i) y[i] = x[perm[i]];
          const GaussRat v = f(y);
          if (inversions % 2)
            acc -= v;
          else
            acc += v;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return acc * scale;
      },
      true, f.normalization());
}

/// (delta eta)(x_0, ..., x_{q+1}) = sum_i (-1)^i eta(x_0, ..., ^x_i, ..., x_{q+1}).
/// The result is not clipped: its declared radius is unrestricted.
inline ASCochain coboundary(const ASCochain& eta) {
  const int q = eta.degree();
  return ASCochain(
      eta.grid(), q + 1, -1,
      [eta](const Points& x) {
        GaussRat acc(0);
        Points y(x.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
          std::size_t m = 0;
          for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i) y[m++] = x[j];
          const GaussRat v = eta(y);
          if (i % 2)
            acc -= v;
          else
            acc += v;
        }
        return acc;
      },
      eta.antisymmetric(), eta.normalization());
}

inline ASCochain operator+(const ASCochain& a, const ASCochain& b) {
  if (a.degree() != b.degree()) throw DegreeError("adding cochains of different degrees");
  if (!(a.normalization() == b.normalization())) throw GradeMismatch("cochains carry different normalizations");
  const long r = (a.radius() < 0 || b.radius() < 0) ? -1 : std::max(a.radius(), b.radius());
  return ASCochain(
      a.grid(), a.degree(), r, [a, b](const Points& x) { return a(x) + b(x); },
      a.antisymmetric() && b.antisymmetric(), a.normalization());
}

/// Random rational cochain (entries p/q with |p| <= 3, q <= 4) from a hash of
/// the tuple, reproducible from the seed; antisymmetrized when requested.
inline ASCochain random_cochain(const Grid& g, int q, long radius, std::uint64_t seed, bool antisym = true) {
  auto raw = ASCochain(
      g, q, radius,
      [seed](const Points& x) {
        std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
        for (auto p : x) {
          h ^= p + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
          h *= 0xBF58476D1CE4E5B9ULL;
          h ^= h >> 31;
        }
        const long num = long(h % 7) - 3;
        const long den = long((h >> 8) % 4) + 1;
        Rational v(num, den);
        v.canonicalize();
        return GaussRat(v);
      },
      false);
  return antisym ? antisymmetrize(raw) : raw;
}

/// Signed area of the triangle x_0 -> x_1 -> x_2 in lattice units, using
/// shortest-wrap displacements from x_0; zero beyond radius rho.
/// Requires rho < N/4. Carries the normalization 2 (2 pi i) / N^2.
inline ASCochain area_cocycle(const Grid& g, long rho) {
  if (g.kind() != GridKind::torus) throw BadParameter("area cocycle needs a torus grid");
  if (rho < 0 || 4 * rho >= g.N()) throw BadParameter("area cocycle radius must satisfy 0 <= rho < N/4");
  Rational c(2, g.N() * g.N());
  c.canonicalize();
  const GradedScalar norm(GaussRat(c), 1);
  return ASCochain(
      g, 2, rho,
      [g](const Points& x) {
        auto [x0, y0] = g.coords(x[0]);
        auto [x1, y1] = g.coords(x[1]);
        auto [x2, y2] = g.coords(x[2]);
        const long ax = g.displacement(x0, x1), ay = g.displacement(y0, y1);
        const long bx = g.displacement(x0, x2), by = g.displacement(y0, y2);
        Rational a(ax * by - ay * bx, 2);
        a.canonicalize();
        return GaussRat(a);
      },
      true, norm);
}

}  // namespace indexlab
