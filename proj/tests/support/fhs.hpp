#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

// Lattice Chern number of the lower band of d(k) = (sin kx, sin ky, m + cos kx + cos ky)
// from plaquette Berry phases on an N x N Brillouin-zone mesh.
inline double fhs_chern(long N, double m) {
  using C = std::complex<double>;
  auto lower = [&](long i, long j) {
    const double kx = 2 * M_PI * double(i) / double(N), ky = 2 * M_PI * double(j) / double(N);
    const double dx = std::sin(kx), dy = std::sin(ky), dz = m + std::cos(kx) + std::cos(ky);
    Eigen::Matrix2cd h;
    h << dz, C(dx, -dy), C(dx, dy), -dz;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    return Eigen::Vector2cd(es.eigenvectors().col(0));
  };
  double total = 0;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      const auto a = lower(i, j), b = lower(i + 1, j), c = lower(i + 1, j + 1), d = lower(i, j + 1);
      total += std::arg(a.dot(b) * b.dot(c) * c.dot(d) * d.dot(a));
    }
  return total / (2 * M_PI);
}
