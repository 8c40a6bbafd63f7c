#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "indexlab/toeplitz/toeplitz.hpp"

namespace indexlab {

/// An operator A with symbol a together with a parametrix B (symbol a^{-1}).
struct ParametrixPair {
  ToeplitzElement A;
  ToeplitzElement B;
};

namespace detail {

// z^k * C with C invertible: inverse is z^{-k} C^{-1}.
inline std::optional<LaurentMatrixPoly> invert_single_degree(const LaurentMatrixPoly& a) {
  if (a.coeffs().size() != 1) return std::nullopt;
  const auto& [k, c] = *a.coeffs().begin();
  try {
    LaurentMatrixPoly inv(a.size());
    inv.set(-k, exact_inverse(c));
    return inv;
  } catch (const NotInvertible&) {
    return std::nullopt;
  }
}

// Generalized permutation matrix whose nonzero entries are Laurent monomials.
inline std::optional<LaurentMatrixPoly> invert_monomial_matrix(const LaurentMatrixPoly& a) {
  const std::size_t n = a.size();
  std::vector<std::optional<std::pair<std::size_t, int>>> row_hit(n), col_hit(n);
  std::vector<GaussRat> value(n);
  for (const auto& [d, m] : a.coeffs()) {
    for (const auto& [ij, v] : m.entries()) {
      auto [i, j] = ij;
      if (row_hit[i] || col_hit[j]) return std::nullopt;
      row_hit[i] = std::pair{j, d};
      col_hit[j] = std::pair{i, d};
      value[i] = v.coeff(0);
    }
  }
  LaurentMatrixPoly inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!row_hit[i]) return std::nullopt;
    auto [j, d] = *row_hit[i];
    ExactMatrix c = inv.coeff(-d);
    c.set(j, i, GradedScalar(value[i].inverse()));
    inv.set(-d, c);
  }
  return inv;
}

}  // namespace detail

/// Exact inverse of a symbol in the supported class (z^k times a constant
/// invertible matrix, or a monomial matrix). Throws UnsupportedSymbol.
inline LaurentMatrixPoly invert_symbol(const LaurentMatrixPoly& a) {
  if (auto inv = detail::invert_single_degree(a)) return *inv;
  if (auto inv = detail::invert_monomial_matrix(a)) return *inv;
  throw UnsupportedSymbol("symbol is outside the exactly invertible class: " + a.to_string());
}

/// A = T_a, B = T_{a^{-1}}; the defects 1 - BA and 1 - AB have zero symbol.
inline ParametrixPair parametrix(const LaurentMatrixPoly& a) {
  return {ToeplitzElement::of_symbol(a), ToeplitzElement::of_symbol(invert_symbol(a))};
}

/// Parametrix of a product a_1 a_2 ... a_r of supported factors:
/// A = A_1 ... A_r and B = B_r ... B_1.
inline ParametrixPair parametrix(const std::vector<LaurentMatrixPoly>& factors) {
  if (factors.empty()) throw UnsupportedSymbol("empty factor list");
  ParametrixPair out = parametrix(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    ParametrixPair f = parametrix(factors[i]);
    out.A = out.A * f.A;
    out.B = f.B * out.B;
  }
  return out;
}

/// Conjugates a parametrix pair by an invertible G whose inverse is supplied:
/// (G A G^{-1}, G B G^{-1}). The inverse is checked exactly.
inline ParametrixPair conjugate(const ParametrixPair& p, const ToeplitzElement& g, const ToeplitzElement& g_inv) {
  const auto one = ToeplitzElement::identity(g.size());
  if (g * g_inv != one || g_inv * g != one) throw UnsupportedSymbol("conjugator inverse is not exact");
  return {g * p.A * g_inv, g * p.B * g_inv};
}

}  // namespace indexlab
