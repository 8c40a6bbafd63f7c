#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "indexlab/residue/algebra_context.hpp"

namespace indexlab {

/// 2 x 2 block element over an algebra context.
template <class E>
struct Block2 {
  E a11, a12, a21, a22;
};

template <AlgebraContext Ctx>
Block2<typename Ctx::element_type> block_mul(const Ctx& c, const Block2<typename Ctx::element_type>& x,
                                             const Block2<typename Ctx::element_type>& y) {
  return {c.add(c.mul(x.a11, y.a11), c.mul(x.a12, y.a21)), c.add(c.mul(x.a11, y.a12), c.mul(x.a12, y.a22)),
          c.add(c.mul(x.a21, y.a11), c.mul(x.a22, y.a21)), c.add(c.mul(x.a21, y.a12), c.mul(x.a22, y.a22))};
}

template <AlgebraContext Ctx>
Block2<typename Ctx::element_type> block_add(const Ctx& c, const Block2<typename Ctx::element_type>& x,
                                             const Block2<typename Ctx::element_type>& y) {
  return {c.add(x.a11, y.a11), c.add(x.a12, y.a12), c.add(x.a21, y.a21), c.add(x.a22, y.a22)};
}

template <AlgebraContext Ctx>
Block2<typename Ctx::element_type> block_sub(const Ctx& c, const Block2<typename Ctx::element_type>& x,
                                             const Block2<typename Ctx::element_type>& y) {
  return {c.sub(x.a11, y.a11), c.sub(x.a12, y.a12), c.sub(x.a21, y.a21), c.sub(x.a22, y.a22)};
}

template <AlgebraContext Ctx>
bool block_equal(const Ctx& c, const Block2<typename Ctx::element_type>& x,
                 const Block2<typename Ctx::element_type>& y) {
  return c.equal(x.a11, y.a11) && c.equal(x.a12, y.a12) && c.equal(x.a21, y.a21) && c.equal(x.a22, y.a22);
}

template <AlgebraContext Ctx>
Block2<typename Ctx::element_type> block_identity(const Ctx& c) {
  return {c.one(), c.zero(), c.zero(), c.one()};
}

/// Sum of the traces of the diagonal blocks.
template <TracedContext Ctx>
auto block_trace(const Ctx& c, const Block2<typename Ctx::element_type>& x) {
  return c.trace(x.a11) + c.trace(x.a22);
}

/// The operators built from an operator A and a parametrix B:
///   S0 = 1 - BA, S1 = 1 - AB,
///   L  = [[S0, -(1+S0)B], [A, S1]],   L^{-1} = [[S0, (1+S0)B], [-A, S1]],
///   P  = L diag(1,0) L^{-1},  e = diag(0,1),  R = P - e.
template <class E>
struct ResidueSet {
  E A, B, S0, S1;
  Block2<E> L, Linv, P, e, R;
};

struct ResidueReport {
  bool l_linv = false;       // L L^{-1} = 1
  bool linv_l = false;       // L^{-1} L = 1
  bool p_idempotent = false;  // P^2 = P
  bool r_difference = false;  // R = P - e
  bool r_square = false;      // R^2 = R - (eR + Re)

  bool all() const { return l_linv && linv_l && p_idempotent && r_difference && r_square; }

  std::vector<std::pair<std::string, bool>> entries() const {
    return {{"L*Linv=1", l_linv},
            {"Linv*L=1", linv_l},
            {"P^2=P", p_idempotent},
            {"R=P-e", r_difference},
            {"R^2=R-(eR+Re)", r_square}};
  }
};

/// Checks the five identities exactly. Failures are reported, not thrown.
template <AlgebraContext Ctx>
ResidueReport verify_residue_identities(const Ctx& c, const ResidueSet<typename Ctx::element_type>& rs) {
  const auto id = block_identity(c);
  ResidueReport rep;
  rep.l_linv = block_equal(c, block_mul(c, rs.L, rs.Linv), id);
  rep.linv_l = block_equal(c, block_mul(c, rs.Linv, rs.L), id);
  rep.p_idempotent = block_equal(c, block_mul(c, rs.P, rs.P), rs.P);
  rep.r_difference = block_equal(c, block_sub(c, rs.P, rs.e), rs.R);
  const auto er_re = block_add(c, block_mul(c, rs.e, rs.R), block_mul(c, rs.R, rs.e));
  rep.r_square = block_equal(c, block_mul(c, rs.R, rs.R), block_sub(c, rs.R, er_re));
  return rep;
}

/// The closed block form  R = [[S0^2, S0(1+S0)B], [S1 A, -S1^2]].
template <AlgebraContext Ctx>
Block2<typename Ctx::element_type> residue_closed_form(const Ctx& c, const ResidueSet<typename Ctx::element_type>& rs) {
  const auto one_s0 = c.add(c.one(), rs.S0);
  return {c.mul(rs.S0, rs.S0), c.mul(c.mul(rs.S0, one_s0), rs.B), c.mul(rs.S1, rs.A), c.neg(c.mul(rs.S1, rs.S1))};
}

/// Builds L, L^{-1}, P, e and R from (A, B) and certifies them.
///
/// When the context declares an ideal, S0 and S1 must lie in it. Throws
/// AlgebraViolation if any identity fails, which only happens when the
/// context is not an associative unital algebra.
template <AlgebraContext Ctx>
ResidueSet<typename Ctx::element_type> build_residue(const Ctx& c, const typename Ctx::element_type& A,
                                                     const typename Ctx::element_type& B) {
  using E = typename Ctx::element_type;
  const E S0 = c.sub(c.one(), c.mul(B, A));
  const E S1 = c.sub(c.one(), c.mul(A, B));
  if constexpr (IdealContext<Ctx>) {
    if (!c.in_ideal(S0) || !c.in_ideal(S1)) throw AlgebraViolation("1 - BA or 1 - AB is outside the smoothing ideal");
  }
  const E one_s0_b = c.mul(c.add(c.one(), S0), B);
  const Block2<E> L{S0, c.neg(one_s0_b), A, S1};
  const Block2<E> Linv{S0, one_s0_b, c.neg(A), S1};
  const Block2<E> p1{c.one(), c.zero(), c.zero(), c.zero()};
  const Block2<E> P = block_mul(c, block_mul(c, L, p1), Linv);
  const Block2<E> e{c.zero(), c.zero(), c.zero(), c.one()};
  const ResidueSet<E> rs{A, B, S0, S1, L, Linv, P, e, block_sub(c, P, e)};

  const auto rep = verify_residue_identities(c, rs);
  if (!rep.all()) throw AlgebraViolation("residue identities failed; check the context operations");
  if (!block_equal(c, rs.R, residue_closed_form(c, rs)))
    throw AlgebraViolation("R differs from its closed block form");
  return rs;
}

}  // namespace indexlab
