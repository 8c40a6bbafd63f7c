#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>

namespace indexlab {

/// Lower-band Chern number of the two-band model from link variables on an
/// N x N Brillouin-zone mesh.
inline double berry_chern(long N, double m) {
  using C = std::complex<double>;
  const double step = 2 * std::numbers::pi / double(N);
  auto lower = [&](long i, long j) {
    const double kx = step * double(i), ky = step * double(j);
    const double dx = std::sin(kx), dy = std::sin(ky), dz = m + std::cos(kx) + std::cos(ky);
    Eigen::Matrix2cd h;
    h << dz, C(dx, -dy), C(dx, dy), -dz;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
    return Eigen::Vector2cd(es.eigenvectors().col(0));
  };
  double flux = 0;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      const auto u00 = lower(i, j), u10 = lower(i + 1, j), u11 = lower(i + 1, j + 1), u01 = lower(i, j + 1);
      flux += std::arg(u00.dot(u10) * u10.dot(u11) * u11.dot(u01) * u01.dot(u00));
    }
  return flux / (2 * std::numbers::pi);
}

}  // namespace indexlab
