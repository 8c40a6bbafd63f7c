#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "indexlab/toeplitz/laurent.hpp"

namespace indexlab {

struct WindingOptions {
  std::size_t initial_samples = 256;
  std::size_t max_samples = std::size_t{1} << 20;
  double snap_tolerance = 0.01;
  double ellipticity_margin = 1e-8;
};

/// Winding number of t -> det p(e^{it}) about the origin.
///
/// Accumulates the phase increments on a uniform sample and doubles the
/// sample count until every increment is below pi/4 and the total is within
/// the snap tolerance of an integer.
inline long winding(const LaurentMatrixPoly& p, const WindingOptions& opt = {}) {
  for (std::size_t m = opt.initial_samples; m <= opt.max_samples; m *= 2) {
    double total = 0.0;
    double max_step = 0.0;
    std::complex<double> first = p.det_at(1.0);
    std::complex<double> prev = first;
    for (std::size_t j = 1; j <= m; ++j) {
      std::complex<double> cur = j == m ? first : p.det_at(std::polar(1.0, 2.0 * std::numbers::pi * j / m));
      if (std::abs(cur) < opt.ellipticity_margin)
        throw SymbolNotElliptic("determinant of the symbol nearly vanishes on the unit circle");
      double step = std::arg(cur / prev);
      total += step;
      max_step = std::max(max_step, std::abs(step));
      prev = cur;
    }
    double turns = total / (2.0 * std::numbers::pi);
    double snapped = std::round(turns);
    if (max_step < std::numbers::pi / 4 && std::abs(turns - snapped) < opt.snap_tolerance)
      return static_cast<long>(snapped);
  }
  throw SymbolNotElliptic("winding number did not settle within the sample cap");
}

}  // namespace indexlab
