#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "indexlab/exact/rank_kernel.hpp"
#include "indexlab/residue/residue.hpp"

namespace indexlab {

/// One point of the cotangent circle: angle sample u = e^{i theta} (exact,
/// unimodular) and covector xi.
struct CotangentPoint {
  GaussRat u;
  Rational xi;
};

/// Fiber data at one point: the symbol value and the cutoff.
struct FiberDatum {
  CotangentPoint point;
  ExactMatrix a;
  Rational lambda;
};

struct FiberResult {
  CotangentPoint point;
  Rational lambda;
  ExactMatrix l, l_inv, p, r;  // 2n x 2n
};

/// Cutoff vanishing for |xi| <= 1/4, equal to 1 for |xi| >= 1, linear between.
inline Rational default_cutoff(const Rational& xi) {
  Rational x = abs(xi);
  if (x <= Rational(1, 4)) return Rational(0);
  if (x >= 1) return Rational(1);
  Rational r = (4 * x - 1) / 3;
  r.canonicalize();
  return r;
}

/// Exact unimodular approximation of e^{2 pi i j / n} through the rational
/// parametrisation ((1 - t^2) + 2ti) / (1 + t^2), t ~ tan(pi j / n).
inline GaussRat unit_circle_point(long j, long n) {
  j = ((j % n) + n) % n;
  if (2 * j == n) return GaussRat(-1);
  const double t = std::tan(M_PI * double(j) / double(n));
  Rational tq(static_cast<long>(std::lround(t * 1000)), 1000);
  tq.canonicalize();
  const Rational den = 1 + tq * tq;
  return GaussRat(Rational((1 - tq * tq) / den), Rational(2 * tq / den));
}

/// n_theta angles times the given covectors.
inline std::vector<CotangentPoint> cotangent_circle_grid(long n_theta, const std::vector<Rational>& xis) {
  if (n_theta < 1 || xis.empty()) throw BadParameter("empty cotangent grid");
  std::vector<CotangentPoint> pts;
  for (long j = 0; j < n_theta; ++j)
    for (const auto& xi : xis) pts.push_back({unit_circle_point(j, n_theta), xi});
  return pts;
}

/// The default 32-point grid: 8 angles times xi in {-2, -1/2, 1/8, 2}.
inline std::vector<CotangentPoint> cotangent_circle_grid() {
  return cotangent_circle_grid(8, {Rational(-2), Rational(-1, 2), Rational(1, 8), Rational(2)});
}

/// a(theta, xi) = e^{i theta sgn xi} as a 1 x 1 fiber.
inline ExactMatrix angular_symbol(const CotangentPoint& pt) {
  const int s = sgn(pt.xi);
  GaussRat v = s > 0 ? pt.u : s < 0 ? pt.u.conj() : GaussRat(1);
  return ExactMatrix::diag({v});
}

namespace detail {

inline ExactMatrix assemble(const Block2<ExactMatrix>& b) {
  const std::size_t n = b.a11.rows();
  ExactMatrix m(2 * n, 2 * n);
  m.add_block(0, 0, b.a11);
  m.add_block(0, n, b.a12);
  m.add_block(n, 0, b.a21);
  m.add_block(n, n, b.a22);
  return m;
}

}  // namespace detail

/// Fiberwise residue: a~ = lambda a, b~ = lambda a^{-1}, then the residue
/// construction in each fiber.
inline std::vector<FiberResult> fiber_residue(const std::vector<FiberDatum>& field) {
  std::vector<FiberResult> out;
  out.reserve(field.size());
  for (const auto& fd : field) {
    if (!fd.a.is_square()) throw ShapeError("fiber symbol must be square");
    if (fd.lambda < 0 || fd.lambda > 1) throw BadParameter("cutoff outside [0,1]");
    const std::size_t n = fd.a.rows();
    ExactMatrixContext ctx{n};
    const GradedScalar lam{GaussRat(fd.lambda)};
    ExactMatrix at = lam * fd.a, bt(n, n);
    if (sgn(fd.lambda) != 0) {
      try {
        bt = lam * exact_inverse(fd.a);
      } catch (const NotInvertible&) {
        throw SymbolNotElliptic("fiber symbol is singular where the cutoff is nonzero");
      }
    }
    const auto rs = build_residue(ctx, at, bt);
    out.push_back({fd.point, fd.lambda, detail::assemble(rs.L), detail::assemble(rs.Linv), detail::assemble(rs.P),
                   detail::assemble(rs.R)});
  }
  return out;
}

/// Convenience: evaluate a symbol and the cutoff on a grid.
inline std::vector<FiberDatum> sample_fibers(const std::vector<CotangentPoint>& grid,
                                             const std::function<ExactMatrix(const CotangentPoint&)>& symbol,
                                             const std::function<Rational(const Rational&)>& cutoff = default_cutoff) {
  std::vector<FiberDatum> field;
  field.reserve(grid.size());
  for (const auto& pt : grid) field.push_back({pt, symbol(pt), cutoff(pt.xi)});
  return field;
}

}  // namespace indexlab
