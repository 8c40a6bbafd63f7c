#pragma once

#include <Eigen/Eigenvalues>

#include "indexlab/exact/gaussian_rational.hpp"
#include "indexlab/grid/grid_kernel.hpp"

namespace indexlab {

/// Real-space two-band Hamiltonian on the N x N torus with Bloch form
/// d(k) = (sin kx, sin ky, m + cos kx + cos ky).
inline Eigen::MatrixXcd qwz_hamiltonian(long N, double m) {
  using C = std::complex<double>;
  const Grid g(GridKind::torus, N);
  const C I(0, 1);
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd tx = (sz + I * sx) / 2.0, ty = (sz + I * sy) / 2.0;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * g.size(), 2 * g.size());
  for (long y = 0; y < N; ++y)
    for (long x = 0; x < N; ++x) {
      const std::size_t r = g.index(x, y), rx = g.index(x + 1, y), ry = g.index(x, y + 1);
      h.block<2, 2>(2 * r, 2 * r) += m * sz;
      h.block<2, 2>(2 * rx, 2 * r) += tx;
      h.block<2, 2>(2 * r, 2 * rx) += tx.adjoint();
      h.block<2, 2>(2 * ry, 2 * r) += ty;
      h.block<2, 2>(2 * r, 2 * ry) += ty.adjoint();
    }
  return h;
}

/// Spectral projector onto the lower band. The gap closes for m in {0, +-2}.
inline FloatKernel qwz_projector(long N, const Rational& mass) {
  if (sgn(mass) == 0 || abs(mass) == 2) throw GapClosed("two-band gap closes at mass " + mass.get_str());
  const Grid g(GridKind::torus, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(qwz_hamiltonian(N, mass.get_d()));
  const auto& ev = es.eigenvalues();
  long below = 0;
  while (below < ev.size() && ev(below) < 0) ++below;
  if (below == 0 || below == ev.size()) throw GapClosed("no gap at zero energy");
  const Eigen::MatrixXcd v = es.eigenvectors().leftCols(below);
  return FloatKernel(g, 2, v * v.adjoint());
}

}  // namespace indexlab
