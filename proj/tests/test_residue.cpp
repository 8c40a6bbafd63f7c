#include <catch2/catch_amalgamated.hpp>

#include "indexlab/residue/connecting.hpp"
#include "indexlab/residue/fiber_residue.hpp"
#include "indexlab/toeplitz/symbol_parser.hpp"
#include "support/toeplitz_gen.hpp"

using namespace indexlab;
using indexlab::testing::random_matrix;
using indexlab::testing::random_toeplitz;
using indexlab::testing::random_supported_symbol;
using indexlab::testing::reach;

namespace {

ToeplitzElement T(const char* symbol) { return ToeplitzElement::of_symbol(parse_symbol(symbol)); }

// Wrong unit: the construction must notice.
struct BrokenContext : ExactMatrixContext {
  ExactMatrix one() const { return GradedScalar(2) * ExactMatrix::identity(n); }
};

}  // namespace

TEST_CASE("residue of an exact inverse pair") {
  ExactMatrixContext ctx{1};
  auto one = ExactMatrix::identity(1);
  auto rs = build_residue(ctx, one, one);
  CHECK(rs.S0.is_zero());
  CHECK(rs.S1.is_zero());
  CHECK(rs.L.a11.is_zero());
  CHECK(rs.L.a12 == -one);
  CHECK(rs.L.a21 == one);
  CHECK(rs.L.a22.is_zero());
  CHECK(rs.P.a11.is_zero());
  CHECK(rs.P.a22 == one);
  CHECK(rs.R.a11.is_zero());
  CHECK(rs.R.a12.is_zero());
  CHECK(rs.R.a21.is_zero());
  CHECK(rs.R.a22.is_zero());
  CHECK(verify_residue_identities(ctx, rs).all());
}

TEST_CASE("residue of the unilateral shift") {
  ToeplitzContext ctx{1};
  auto rs = build_residue(ctx, T("z"), T("z^-1"));
  const auto e00 = ToeplitzElement::site_projector(0);
  CHECK(rs.S0 == ToeplitzElement::zero());
  CHECK(rs.S1 == e00);
  CHECK(rs.R.a11 == ToeplitzElement::zero());
  CHECK(rs.R.a12 == ToeplitzElement::zero());
  CHECK(rs.R.a21 == e00 * T("z"));
  CHECK(rs.R.a22 == -e00);
  CHECK(block_trace(ctx, rs.R) == GradedScalar(-1));

  // 64-site truncation oracle: S1 = 1 - T_z T_{z^-1} on the window
  const long K = 64;
  ExactMatrix shift_up(K, K), shift_down(K, K);
  for (long i = 0; i + 1 < K; ++i) {
    shift_up.set(i + 1, i, GradedScalar(1));
    shift_down.set(i, i + 1, GradedScalar(1));
  }
  ExactMatrix s1 = ExactMatrix::identity(K) - shift_up * shift_down;
  CHECK(rs.S1.truncate(K) == s1);
  CHECK((s1 * s1).trace() == GradedScalar(1));
  CHECK(rs.R.a21.truncate(K) == (s1 * shift_up));
}

TEST_CASE("residue over 2 x 2 rationals") {
  ExactMatrixContext ctx{2};
  auto A = ExactMatrix::diag({GaussRat(1), GaussRat(2)});
  auto B = ExactMatrix::identity(2);
  auto rs = build_residue(ctx, A, B);
  CHECK(rs.S0 == ExactMatrix::diag({GaussRat(0), GaussRat(-1)}));
  CHECK(rs.S1 == ExactMatrix::diag({GaussRat(0), GaussRat(-1)}));
  CHECK(block_mul(ctx, rs.P, rs.P).a11 == rs.P.a11);
  CHECK(block_trace(ctx, rs.R) == GradedScalar(0));
}

TEST_CASE("identities hold for random exact matrix pairs") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = dim(rng);
    ExactMatrixContext ctx{n};
    auto A = random_matrix(rng, n, n, 0.7, trial % 2 == 0);
    auto B = random_matrix(rng, n, n, 0.7, trial % 3 == 0);
    auto rs = build_residue(ctx, A, B);
    auto rep = verify_residue_identities(ctx, rs);
    for (const auto& [name, ok] : rep.entries()) {
      CAPTURE(trial, name);
      REQUIRE(ok);
    }
    REQUIRE(block_equal(ctx, block_sub(ctx, rs.P, rs.e), residue_closed_form(ctx, rs)));
    REQUIRE(block_trace(ctx, rs.R) == (rs.S0 * rs.S0).trace() - (rs.S1 * rs.S1).trace());
  }
}

TEST_CASE("identities, ideal membership and traces for random Toeplitz pairs") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = trial % 3 == 0 ? 2 : 1;
    auto a = random_supported_symbol(rng, n);
    auto [A, B] = parametrix(a);
    // finite-rank perturbations keep 1 - BA and 1 - AB in the ideal
    A = A + random_toeplitz(rng, n, false, 3);
    B = B + random_toeplitz(rng, n, false, 3);
    ToeplitzContext ctx{n};
    auto rs = build_residue(ctx, A, B);
    CAPTURE(trial, a.to_string());
    auto rep = verify_residue_identities(ctx, rs);
    for (const auto& [name, ok] : rep.entries()) {
      CAPTURE(name);
      REQUIRE(ok);
    }
    REQUIRE(block_equal(ctx, rs.R, residue_closed_form(ctx, rs)));
    for (const auto* blk : {&rs.R.a11, &rs.R.a12, &rs.R.a21, &rs.R.a22}) REQUIRE(blk->in_ideal());
    REQUIRE(block_trace(ctx, rs.R) == trace_smoothing(rs.S0 * rs.S0) - trace_smoothing(rs.S1 * rs.S1));

    // truncation oracle for the trace of S0^2 - S1^2
    const long K = 2 * (reach(A) + reach(B)) + 4;
    const auto one = ExactMatrix::identity(n * K);
    const long big = K + reach(A) + reach(B);
    auto ba = (B.truncate(big) * A.truncate(big)).block(0, 0, n * K, n * K);
    auto ab = (A.truncate(big) * B.truncate(big)).block(0, 0, n * K, n * K);
    auto s0 = one - ba, s1 = one - ab;
    REQUIRE(rs.S0.truncate(K) == s0);
    REQUIRE(rs.S1.truncate(K) == s1);
  }
}

TEST_CASE("verification is separate from construction") {
  ToeplitzContext ctx{1};
  auto rs = build_residue(ctx, T("z^3"), T("z^-3"));
  CHECK(verify_residue_identities(ctx, rs).all());

  auto bad = rs;
  ToeplitzElement bump = ToeplitzElement::site_projector(5) + ToeplitzElement::site_projector(5);
  bad.P.a11 = bad.P.a11 + bump;
  auto rep = verify_residue_identities(ctx, bad);
  CHECK_FALSE(rep.p_idempotent);
  CHECK_FALSE(rep.r_difference);
  CHECK(rep.l_linv);
  CHECK(rep.linv_l);
}

TEST_CASE("misconfigured contexts are rejected") {
  BrokenContext ctx;
  ctx.n = 2;
  auto A = ExactMatrix::diag({GaussRat(1), GaussRat(3)});
  CHECK_THROWS_AS(build_residue(ctx, A, A), AlgebraViolation);

  ToeplitzContext tctx{1};
  CHECK_THROWS_AS(build_residue(tctx, T("z"), T("z")), AlgebraViolation);
}

TEST_CASE("connecting class representatives") {
  auto unit = connecting_class(parse_symbol("1"));
  CHECK(unit.P().a11 == ToeplitzElement::zero());
  CHECK(unit.P().a22 == ToeplitzElement::identity());
  CHECK(unit.trace_difference == GradedScalar(0));

  CHECK(connecting_class(parse_symbol("z")).trace_difference == GradedScalar(-1));
  CHECK(connecting_class(parse_symbol("z^-2")).trace_difference == GradedScalar(2));
  CHECK(connecting_class(parse_symbol("[[z,0],[0,z^2]]")).trace_difference == GradedScalar(-3));

  // oracle for z^-2: S0 = 0 and S1 vanish except for a rank-2 window
  auto cc = connecting_class(parse_symbol("z^-2"));
  CHECK(rank_kernel(cc.residue.S0.truncate(16)).rank == 2);
  CHECK(cc.residue.S1 == ToeplitzElement::zero());
  CHECK_THROWS_AS(connecting_class(parse_symbol("1 + z")), UnsupportedSymbol);
}

TEST_CASE("cutoff and circle samples") {
  CHECK(default_cutoff(Rational(0)) == 0);
  CHECK(default_cutoff(Rational(1, 4)) == 0);
  CHECK(default_cutoff(Rational(-1, 2)) == Rational(1, 3));
  CHECK(default_cutoff(Rational(1)) == 1);
  CHECK(default_cutoff(Rational(-7)) == 1);
  for (long j = 0; j < 16; ++j) {
    auto u = unit_circle_point(j, 16);
    CHECK(u.norm2() == 1);
    auto z = u.to_complex();
    CHECK(std::abs(z - std::polar(1.0, 2 * M_PI * j / 16)) < 2e-3);
  }
  CHECK(cotangent_circle_grid().size() == 32);
}

TEST_CASE("fiber residue on the cotangent circle") {
  auto grid = cotangent_circle_grid();
  auto field = sample_fibers(grid, angular_symbol);
  auto res = fiber_residue(field);
  REQUIRE(res.size() == 32);
  const auto e = ExactMatrix::diag({GaussRat(0), GaussRat(1)});
  const auto p1 = ExactMatrix::diag({GaussRat(1), GaussRat(0)});
  int full = 0, zero_section = 0;
  for (std::size_t k = 0; k < res.size(); ++k) {
    const auto& f = res[k];
    CAPTURE(k, f.lambda.get_str());
    REQUIRE(f.l * f.l_inv == ExactMatrix::identity(2));
    REQUIRE(f.p * f.p == f.p);
    REQUIRE(f.r == f.p - e);
    if (f.lambda == 1) {
      ++full;
      // l_inf = [[0, -a^{-1}], [a, 0]] computed independently
      const GaussRat a = field[k].a.at(0, 0).coeff(0);
      ExactMatrix l_inf(2, 2);
      l_inf.set(0, 1, GradedScalar(-a.inverse()));
      l_inf.set(1, 0, GradedScalar(a));
      REQUIRE(f.l == l_inf);
      REQUIRE(l_inf * p1 * exact_inverse(l_inf) == e);
      REQUIRE(f.p == e);
      REQUIRE(f.r.is_zero());
    } else {
      REQUIRE_FALSE(f.r.is_zero());
    }
    if (f.lambda == 0) {
      ++zero_section;
      REQUIRE(f.l == ExactMatrix::identity(2));
      REQUIRE(f.p == p1);
    }
  }
  CHECK(full == 16);
  CHECK(zero_section == 8);
}

TEST_CASE("singular fibers are rejected where the cutoff is on") {
  CotangentPoint pt{GaussRat(1), Rational(3)};
  std::vector<FiberDatum> field{{pt, ExactMatrix::from_rows({{1, 1}, {1, 1}}), Rational(1)}};
  CHECK_THROWS_AS(fiber_residue(field), SymbolNotElliptic);
  field[0].lambda = 0;
  CHECK_NOTHROW(fiber_residue(field));
}
