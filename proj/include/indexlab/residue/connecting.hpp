#pragma once

#include "indexlab/residue/residue.hpp"
#include "indexlab/toeplitz/parametrix.hpp"

namespace indexlab {

/// Representative pair (P, e) for the boundary of the class of a symbol.
struct ConnectingClass {
  ResidueSet<ToeplitzElement> residue;
  GradedScalar trace_difference;  // block trace of R = P - e

  const Block2<ToeplitzElement>& P() const { return residue.P; }
  const Block2<ToeplitzElement>& e() const { return residue.e; }
};

inline ConnectingClass connecting_class(const LaurentMatrixPoly& a) {
  const auto [A, B] = parametrix(a);
  ToeplitzContext ctx{a.size()};
  ConnectingClass out{build_residue(ctx, A, B), {}};
  out.trace_difference = block_trace(ctx, out.residue.R);
  return out;
}

}  // namespace indexlab
