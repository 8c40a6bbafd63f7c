#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "indexlab/toeplitz/parametrix.hpp"
#include "indexlab/toeplitz/symbol_parser.hpp"
#include "indexlab/toeplitz/winding.hpp"
#include "support/toeplitz_gen.hpp"

using namespace indexlab;
using indexlab::testing::random_symbol;
using indexlab::testing::random_toeplitz;
using indexlab::testing::reach;

namespace {

ToeplitzElement T(const char* symbol) { return ToeplitzElement::of_symbol(parse_symbol(symbol)); }

// Truncation oracle: the top-left K x K block of x*y from a plain product of
// larger truncations.
ExactMatrix oracle_product(const ToeplitzElement& x, const ToeplitzElement& y, long K) {
  const long big = K + reach(x) + reach(y);
  const std::size_t n = x.size();
  return (x.truncate(big) * y.truncate(big)).block(0, 0, n * K, n * K);
}

// Phase accumulation at a fixed sample count, independent of the adaptive routine.
double argument_sum(const LaurentMatrixPoly& p, int samples) {
  double total = 0;
  auto prev = p.det_at(1.0);
  for (int j = 1; j <= samples; ++j) {
    auto cur = p.det_at(std::polar(1.0, 2 * std::numbers::pi * j / samples));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / (2 * std::numbers::pi);
}

}  // namespace

TEST_CASE("products of shifts") {
  const auto one = ToeplitzElement::identity();
  const auto e00 = ToeplitzElement::site_projector(0);

  auto down_up = T("z^-1") * T("z");
  CHECK(down_up == one);
  CHECK(down_up.truncate(64) == oracle_product(T("z^-1"), T("z"), 64));

  auto up_down = T("z") * T("z^-1");
  CHECK(up_down.symbol() == LaurentMatrixPoly::identity(1));
  CHECK(up_down == one - e00);
  CHECK(up_down.truncate(64) == oracle_product(T("z"), T("z^-1"), 64));

  CHECK(e00 * e00 == e00);
}

TEST_CASE("Toeplitz product matches the truncation oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = trial % 3 == 0 ? 2 : 1;
    auto x = random_toeplitz(rng, n), y = random_toeplitz(rng, n);
    const long K = 10;
    REQUIRE((x * y).truncate(K) == oracle_product(x, y, K));
  }
}

TEST_CASE("symbol map") {
  CHECK(symbol_map(ToeplitzElement::identity()) == LaurentMatrixPoly::identity(1));
  CHECK(symbol_map(ToeplitzElement::site_projector(0)).is_zero());

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_toeplitz(rng, 1), y = random_toeplitz(rng, 1);
    auto s = symbol_map(x * y);
    // independent check: pointwise product of the evaluated symbols
    for (int k = 0; k < 5; ++k) {
      auto z = std::polar(1.3, angle(rng));
      auto expected = x.symbol().evaluate(z)(0, 0) * y.symbol().evaluate(z)(0, 0);
      REQUIRE(std::abs(s.evaluate(z)(0, 0) - expected) < 1e-9 * (1 + std::abs(expected)));
    }
    REQUIRE(s == x.symbol() * y.symbol());
  }
}

TEST_CASE("smoothing ideal is two-sided and the symbol is multiplicative") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = trial % 2 ? 2 : 1;
    auto x = random_toeplitz(rng, n), y = random_toeplitz(rng, n);
    auto s = random_toeplitz(rng, n, false);
    REQUIRE(symbol_map(x * y) == symbol_map(x) * symbol_map(y));
    REQUIRE((x * s).in_ideal());
    REQUIRE((s * y).in_ideal());
    REQUIRE((x * s * y).in_ideal());
  }
}

TEST_CASE("truncation consistency") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_toeplitz(rng, 1), y = random_toeplitz(rng, 1);
    const long K = reach(x) + reach(y) + 2;
    const long bw = 2;  // random symbols have degrees in [-2, 2]
    ExactMatrix lhs = (x * y).truncate(K);
    ExactMatrix rhs = (x.truncate(K + bw) * y.truncate(K + bw)).block(0, 0, K, K);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("trace on the smoothing ideal") {
  auto s1 = ToeplitzElement::identity() - T("z") * T("z^-1");
  CHECK(trace_smoothing(s1) == GradedScalar(1));
  CHECK(trace_smoothing(ToeplitzElement::zero()) == GradedScalar(0));

  auto s1_cubed = ToeplitzElement::identity() - T("z^3") * T("z^-3");
  CHECK(trace_smoothing(s1_cubed) == GradedScalar(3));
  // truncation oracle: the 64-site window carries the whole defect
  auto window = ExactMatrix::identity(64) - oracle_product(T("z^3"), T("z^-3"), 64);
  CHECK(window.trace() == GradedScalar(3));

  CHECK_THROWS_AS(trace_smoothing(T("z")), NotTraceClass);
}

TEST_CASE("winding numbers") {
  CHECK(winding(parse_symbol("z^-2")) == -2);
  CHECK(winding(parse_symbol("z + 2")) == 0);
  CHECK(winding(parse_symbol("2*z + 1")) == 1);
  CHECK(std::round(argument_sum(parse_symbol("z + 2"), 4096)) == 0);
  CHECK(std::round(argument_sum(parse_symbol("2*z + 1"), 4096)) == 1);
  CHECK(winding(parse_symbol("[[z,0],[0,z^2]]")) == 3);
  CHECK_THROWS_AS(winding(parse_symbol("z - 1")), SymbolNotElliptic);
}

TEST_CASE("winding is additive under symbol products") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> lead(-3, 3);
  auto dominated = [&](int k) {
    // c z^k plus terms whose total modulus stays below |c|/2
    LaurentMatrixPoly p = LaurentMatrixPoly::monomial(k, 1, GaussRat(4));
    for (int d = -2; d <= 2; ++d)
      if (d != k) p += LaurentMatrixPoly::monomial(d, 1, GaussRat(indexlab::testing::random_rational(rng, 1, 3)) / GaussRat(2));
    return std::pair{p, k};
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto [p, kp] = dominated(lead(rng));
    auto [q, kq] = dominated(lead(rng));
    REQUIRE(winding(p) == kp);
    REQUIRE(winding(p * q) == winding(p) + winding(q));
    REQUIRE(std::round(argument_sum(p * q, 4096)) == kp + kq);
  }
}

TEST_CASE("parametrix of supported symbols") {
  const auto one = ToeplitzElement::identity();
  SECTION("shift") {
    auto [A, B] = parametrix(parse_symbol("z"));
    CHECK(A == T("z"));
    CHECK(B == T("z^-1"));
    CHECK((one - B * A) == ToeplitzElement::zero());
    CHECK((one - A * B) == ToeplitzElement::site_projector(0));
    CHECK((one - A * B).truncate(64) == ExactMatrix::identity(64) - oracle_product(A, B, 64));
  }
  SECTION("unit") {
    auto [A, B] = parametrix(parse_symbol("1"));
    CHECK(A == one);
    CHECK(B == one);
  }
  SECTION("diag(z, z^-1)") {
    auto a = parse_symbol("[[z,0],[0,z^-1]]");
    auto [A, B] = parametrix(a);
    auto one2 = ToeplitzElement::identity(2);
    auto s0 = one2 - B * A, s1 = one2 - A * B;
    CHECK(s0.in_ideal());
    CHECK(s1.in_ideal());
    CHECK(rank_kernel(s0.truncate(8)).rank == 1);
    CHECK(rank_kernel(s1.truncate(8)).rank == 1);
    CHECK(winding(a) == 0);
  }
  SECTION("constant times monomial and monomial matrices") {
    auto a = parse_symbol("[[0,2*z^2],[(1/3)*z^-1,0]]");
    auto [A, B] = parametrix(a);
    CHECK(symbol_map(B) * a == LaurentMatrixPoly::identity(2));
    auto c = parse_symbol("[[z,2*z],[z,3*z]]");
    auto [C, D] = parametrix(c);
    CHECK(symbol_map(D) * c == LaurentMatrixPoly::identity(2));
  }
  SECTION("unsupported") {
    CHECK_THROWS_AS(parametrix(parse_symbol("1 + z")), UnsupportedSymbol);
    CHECK_THROWS_AS(parametrix(parse_symbol("[[z,z],[z,z]]")), UnsupportedSymbol);
  }
  SECTION("products and conjugation") {
    auto [A, B] = parametrix(std::vector{parse_symbol("z^2"), parse_symbol("3*z^-1")});
    CHECK(symbol_map(A) == parse_symbol("3*z"));
    CHECK((one - B * A).in_ideal());
    CHECK((one - A * B).in_ideal());

    // G = 1 + E01 has inverse 1 - E01
    ToeplitzElement g = one, g_inv = one;
    g.set_correction(0, 1, ExactMatrix::diag({GaussRat(1)}));
    g_inv.set_correction(0, 1, ExactMatrix::diag({GaussRat(-1)}));
    auto conj = conjugate(parametrix(parse_symbol("z")), g, g_inv);
    CHECK(symbol_map(conj.A) == parse_symbol("z"));
    CHECK((one - conj.A * conj.B).in_ideal());
    CHECK_THROWS_AS(conjugate(parametrix(parse_symbol("z")), g, g), UnsupportedSymbol);
  }
}

TEST_CASE("Fedosov traces are independent of the power") {
  const char* symbols[] = {"z", "z^-2", "z^3", "[[z,0],[0,z^2]]", "[[z^-1,0],[0,z^-1]]", "2*z^-1",
                           "[[0,z],[1,0]]"};
  for (const char* s : symbols) {
    auto a = parse_symbol(s);
    auto [A, B] = parametrix(a);
    auto one = ToeplitzElement::identity(a.size());
    auto s0 = one - B * A, s1 = one - A * B;
    auto p0 = s0, p1 = s1;
    GradedScalar first;
    for (int k = 1; k <= 3; ++k) {
      GradedScalar d = trace_smoothing(p0) - trace_smoothing(p1);
      if (k == 1) first = d;
      CAPTURE(s, k);
      REQUIRE(d == first);
      REQUIRE(d == GradedScalar(-winding(a)));
      p0 = p0 * s0;
      p1 = p1 * s1;
    }
  }
}

TEST_CASE("symbol mini-language") {
  auto p = parse_symbol("2*z^-1 + 1 + (3/2)*z^2");
  CHECK(p.coeff(-1).at(0, 0) == GradedScalar(2));
  CHECK(p.coeff(0).at(0, 0) == GradedScalar(1));
  CHECK(p.coeff(2).at(0, 0) == GradedScalar(GaussRat(Rational(3, 2))));
  CHECK(parse_symbol("-z^-2") == LaurentMatrixPoly::monomial(-2, 1, GaussRat(-1)));
  CHECK(parse_symbol("(1+2i)*z") == LaurentMatrixPoly::monomial(1, 1, GaussRat(Rational(1), Rational(2))));
  CHECK(parse_symbol("z - z").is_zero());
  auto m = parse_symbol("[[z,0],[0,z^-1]]");
  CHECK(m.size() == 2);
  CHECK(m == LaurentMatrixPoly::diag({LaurentMatrixPoly::monomial(1), LaurentMatrixPoly::monomial(-1)}));
  CHECK_THROWS_AS(parse_symbol("z^"), ParseError);
  CHECK_THROWS_AS(parse_symbol("[[z],[0,1]]"), ParseError);
  CHECK_THROWS_AS(parse_symbol("y"), ParseError);
}
