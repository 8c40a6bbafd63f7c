#pragma once

#include <concepts>

#include "indexlab/exact/exact_matrix.hpp"
#include "indexlab/toeplitz/toeplitz.hpp"

namespace indexlab {

/// A unital associative algebra presented by an operation table.
///
/// Contexts may additionally provide `trace(x)` and `in_ideal(x)`; the
/// residue construction uses them when present.
template <class Ctx>
concept AlgebraContext = requires(const Ctx& ctx, const typename Ctx::element_type& x) {
  typename Ctx::element_type;
  { ctx.add(x, x) } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.sub(x, x) } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.mul(x, x) } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.neg(x) } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.one() } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.zero() } -> std::convertible_to<typename Ctx::element_type>;
  { ctx.equal(x, x) } -> std::convertible_to<bool>;
};

template <class Ctx>
concept TracedContext = AlgebraContext<Ctx> && requires(const Ctx& ctx, const typename Ctx::element_type& x) {
  ctx.trace(x);
};

template <class Ctx>
concept IdealContext = AlgebraContext<Ctx> && requires(const Ctx& ctx, const typename Ctx::element_type& x) {
  { ctx.in_ideal(x) } -> std::convertible_to<bool>;
};

/// Square exact matrices of a fixed size.
struct ExactMatrixContext {
  using element_type = ExactMatrix;
  std::size_t n = 1;

  ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) const { return a + b; }
  ExactMatrix sub(const ExactMatrix& a, const ExactMatrix& b) const { return a - b; }
  ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b) const { return a * b; }
  ExactMatrix neg(const ExactMatrix& a) const { return -a; }
  ExactMatrix one() const { return ExactMatrix::identity(n); }
  ExactMatrix zero() const { return ExactMatrix(n, n); }
  bool equal(const ExactMatrix& a, const ExactMatrix& b) const { return a == b; }
  GradedScalar trace(const ExactMatrix& a) const { return a.trace(); }
};

/// Half-line Toeplitz algebra; the ideal is the kernel of the symbol map.
struct ToeplitzContext {
  using element_type = ToeplitzElement;
  std::size_t n = 1;

  ToeplitzElement add(const ToeplitzElement& a, const ToeplitzElement& b) const { return a + b; }
  ToeplitzElement sub(const ToeplitzElement& a, const ToeplitzElement& b) const { return a - b; }
  ToeplitzElement mul(const ToeplitzElement& a, const ToeplitzElement& b) const { return a * b; }
  ToeplitzElement neg(const ToeplitzElement& a) const { return -a; }
  ToeplitzElement one() const { return ToeplitzElement::identity(n); }
  ToeplitzElement zero() const { return ToeplitzElement::zero(n); }
  bool equal(const ToeplitzElement& a, const ToeplitzElement& b) const { return a == b; }
  bool in_ideal(const ToeplitzElement& a) const { return a.in_ideal(); }
  GradedScalar trace(const ToeplitzElement& a) const { return trace_smoothing(a); }
};

}  // namespace indexlab
