#pragma once

// Seeded generators shared by the property tests and the experiment runner.

#include <random>
#include <vector>

#include "indexlab/exact/exact_matrix.hpp"
#include "indexlab/toeplitz/toeplitz.hpp"

namespace indexlab::testing {

inline Rational random_rational(std::mt19937_64& rng, long range = 5, long max_den = 4) {
  std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline GaussRat random_gauss(std::mt19937_64& rng, bool complex = true) {
  if (!complex) return GaussRat(random_rational(rng));
  return {random_rational(rng), random_rational(rng)};
}

inline GaussRat random_nonzero_gauss(std::mt19937_64& rng, bool complex = true) {
  GaussRat g;
  do g = random_gauss(rng, complex);
  while (g.is_zero());
  return g;
}

/// Dense random exact matrix; `density` is the probability of a nonzero entry.
inline ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.7,
                                 bool complex = false, long range = 3) {
  std::bernoulli_distribution keep(density);
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) {
        GaussRat v = complex ? GaussRat(random_rational(rng, range), random_rational(rng, range))
                             : GaussRat(random_rational(rng, range));
        m.set(i, j, GradedScalar(v));
      }
  return m;
}

/// Random invertible matrix: unit lower times unit upper triangular.
inline ExactMatrix random_invertible(std::mt19937_64& rng, std::size_t n, long range = 2) {
  ExactMatrix lo = ExactMatrix::identity(n), up = ExactMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo.set(i, j, GradedScalar(GaussRat(random_rational(rng, range, 1))));
      up.set(j, i, GradedScalar(GaussRat(random_rational(rng, range, 1))));
    }
  return lo * up;
}


inline LaurentMatrixPoly random_symbol(std::mt19937_64& rng, std::size_t n, int min_deg = -2, int max_deg = 2,
                                       double density = 0.5) {
  LaurentMatrixPoly p(n);
  for (int d = min_deg; d <= max_deg; ++d) p.set(d, random_matrix(rng, n, n, density));
  return p;
}

inline ToeplitzElement random_toeplitz(std::mt19937_64& rng, std::size_t n, bool with_symbol = true,
                                       long sites = 4) {
  ToeplitzElement t = with_symbol ? ToeplitzElement::of_symbol(random_symbol(rng, n)) : ToeplitzElement(n);
  std::bernoulli_distribution keep(0.3);
  for (long i = 0; i < sites; ++i)
    for (long j = 0; j < sites; ++j)
      if (keep(rng)) t.set_correction(i, j, random_matrix(rng, n, n, 0.6));
  return t;
}

/// Bandwidth plus correction extent: any truncation beyond this sees the
/// whole finite part of the element.
inline long reach(const ToeplitzElement& t) {
  long bw = 0;
  for (const auto& [d, m] : t.symbol().coeffs()) bw = std::max<long>(bw, std::abs(d));
  return bw + t.correction_extent() + 1;
}

/// Elliptic symbol of the supported kind: z^k times an invertible constant.
inline LaurentMatrixPoly random_supported_symbol(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> deg(-3, 3);
  LaurentMatrixPoly a(n);
  a.set(deg(rng), random_invertible(rng, n));
  return a;
}

}  // namespace indexlab::testing
