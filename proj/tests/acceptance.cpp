// Acceptance runner: `acceptance <n>` evaluates criterion n (1-10), `acceptance all` every one.
// Prints one PASS/FAIL line per criterion; exit status is nonzero iff a criterion failed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "indexlab/cyclic/homology.hpp"
#include "indexlab/grid/qwz.hpp"
#include "indexlab/pairing/pairing.hpp"
#include "indexlab/random.hpp"
#include "indexlab/residue/connecting.hpp"
#include "indexlab/residue/fiber_residue.hpp"
#include "indexlab/toeplitz/parametrix.hpp"
#include "indexlab/toeplitz/symbol_parser.hpp"
#include "indexlab/toeplitz/winding.hpp"
#include "support/cyclic_oracle.hpp"
#include "support/fhs.hpp"

using namespace indexlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

Vec matrix_to_vec(const ExactMatrix& m) {
  Vec v(m.rows() * m.cols());
  for (const auto& [ij, x] : m.entries()) v[ij.first * m.cols() + ij.second] = x.coeff(0);
  return v;
}

Outcome toeplitz_index() {
  Outcome o;
  for (int k = -3; k <= 3; ++k) {
    const std::string s = k == 0 ? "1" : "z^" + std::to_string(k);
    const auto a = parse_symbol(s);
    const auto tr = connecting_class(a).trace_difference;
    o.require(tr == GradedScalar(-k), s + ": trace " + tr.to_string());
    o.require(winding(a) == k, s + ": winding " + std::to_string(winding(a)));
  }
  const auto d = parse_symbol("[[z,0],[0,z^2]]");
  o.require(connecting_class(d).trace_difference == GradedScalar(-3), "diag(z,z^2) trace");
  o.require(winding(d) == 3, "diag(z,z^2) winding");
  o.detail = o.pass ? "z^k for k=-3..3 and diag(z,z^2): trace(R) = -k = -winding" : o.detail;
  return o;
}

Outcome residue_identities() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int count = 0;
  for (int i = 0; i < 25; ++i) {
    ResidueReport rep;
    if (i % 3 == 0) {
      const std::size_t n = 1 + i % 4;
      ExactMatrixContext ctx{n};
      rep = verify_residue_identities(ctx, build_residue(ctx, testing::random_matrix(rng, n, n, 0.7, true),
                                                         testing::random_matrix(rng, n, n, 0.7, false)));
    } else if (i % 3 == 1) {
      const std::size_t n = 1 + i % 2;
      auto [A, B] = parametrix(testing::random_supported_symbol(rng, n));
      A = A + testing::random_toeplitz(rng, n, false, 3);
      B = B + testing::random_toeplitz(rng, n, false, 3);
      ToeplitzContext ctx{n};
      rep = verify_residue_identities(ctx, build_residue(ctx, A, B));
    } else {
      const Grid g(i % 2 ? GridKind::torus : GridKind::circle, i % 2 ? 3 : 6);
      const std::size_t n = 1 + i % 2;
      GridKernelContext ctx{g, n};
      rep = verify_residue_identities(
          ctx, build_residue(ctx, random_smoothing(g, 1, rng(), n, 0.5), random_smoothing(g, 1, rng(), n, 0.5)));
    }
    for (const auto& [name, ok] : rep.entries()) o.require(ok, "instance " + std::to_string(i) + ": " + name);
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " instances over exact matrices, Toeplitz elements, grid kernels";
  return o;
}

Outcome residue_cycle() {
  Outcome o;
  std::mt19937_64 rng(19);
  const auto A = matrix_algebra(3);
  const Vec e = *A.idempotent();
  int field_nonzero = 0;
  for (int t = 0; t < 5; ++t) {
    const auto g = testing::random_invertible(rng, 3);
    const Vec P = matrix_to_vec(g * ExactMatrix::unit(3, 0, 0) * exact_inverse(g));
    for (int q = 1; q <= 2; ++q) {
      o.require(b_prime(chern_residue(A, P, e, q).chain).is_zero(),
                "instance " + std::to_string(t) + " q=" + std::to_string(q));
      if (!b_prime(chern_residue(A, P, e, q, Ground::field).chain).is_zero()) ++field_nonzero;
    }
  }
  o.require(field_nonzero > 0, "negative control never fired");
  if (o.pass) o.detail = "b'(Ch_q(R)) = 0 over Lambda for 5 instances, q=1,2; field control nonzero " +
                         std::to_string(field_nonzero) + " times";
  return o;
}

Outcome homology_oracle() {
  Outcome o;
  const auto field = homology_ranks(ground_field(), Ground::field, 4);
  const std::size_t hc[] = {1, 0, 1, 0, 1}, hh[] = {1, 0, 0, 0, 0};
  for (int k = 0; k <= 4; ++k) {
    o.require(field[k].cyclic == hc[k], "field HC_" + std::to_string(k));
    o.require(field[k].hochschild == hh[k], "field HH_" + std::to_string(k));
  }
  const auto m2f = homology_ranks(matrix_algebra(2), Ground::field, 4);
  const auto m2l = homology_ranks(matrix_algebra(2), Ground::lambda, 4);
  const auto m3f = homology_ranks(matrix_algebra(3), Ground::field, 3);
  const auto m3l = homology_ranks(matrix_algebra(3), Ground::lambda, 3);
  for (int k = 0; k <= 4; ++k) {
    o.require(m2f[k].cyclic == hc[k] && m2f[k].hochschild == hh[k], "M2 field-ground table at k=" + std::to_string(k));
    o.require(m2l[k].cyclic == m2f[k].cyclic && m2l[k].hochschild == m2f[k].hochschild,
              "M2 Lambda vs field at k=" + std::to_string(k));
  }
  for (int k = 0; k <= 3; ++k)
    o.require(m3l[k].cyclic == m3f[k].cyclic && m3l[k].hochschild == m3f[k].hochschild,
              "M3 Lambda vs field at k=" + std::to_string(k));
  if (o.pass) o.detail = "HC = (1,0,1,0,1), HH = (1,0,0,0,0); M2 matches; Lambda = field for M2 (k<=4), M3 (k<=3)";
  return o;
}

// Literal statement with b'; the b version is reported on a second line.
Outcome cap_adjunction(bool use_b) {
  Outcome o;
  std::mt19937_64 rng(16);
  int agree = 0;
  for (int t = 0; t < 20; ++t) {
    const int k = t % 4;
    const long N = k <= 1 ? 8 : k == 2 ? 6 : 5;
    const Grid g(GridKind::circle, N);
    std::vector<ExactKernel> fs;
    for (int i = 0; i <= k + 1; ++i) fs.push_back(random_smoothing(g, 2, rng()));
    const auto c = KernelChain<ExactKernel>::elementary(fs);
    const auto eta = random_cochain(g, k, t % 2 ? 2 : -1, rng());
    const auto lhs = cap(use_b ? hochschild_b(c) : b_prime(c), eta);
    const auto rhs = cap(c, coboundary(eta));
    if (lhs == rhs)
      ++agree;
    else if (o.pass)
      o.require(false, "first mismatch: chain " + std::to_string(t) + " (k=" + std::to_string(k) +
                           "): " + lhs.to_string() + " vs " + rhs.to_string());
  }
  o.detail = std::to_string(agree) + "/20 chains agree" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome chern_marker() {
  Outcome o;
  const auto P = qwz_projector(16, Rational(1));
  const auto phi = area_cocycle(P.grid(), 3);
  const double v1 = index_pair(P, phi).value.real();
  const double oracle = fhs_chern(16, 1.0);
  const double ratio = v1 / oracle;
  o.require(ratio >= 0.95 && ratio <= 1.05, "ratio " + std::to_string(ratio));
  const double v5 = index_pair(qwz_projector(16, Rational(5)), phi).value.real();
  o.require(std::abs(v5) < 0.05, "mass 5 value " + std::to_string(v5));
  char buf[160];
  std::snprintf(buf, sizeof buf, "mass 1: %.6f / oracle %.6f = %.4f; mass 5: %.2e", v1, oracle, ratio, v5);
  o.detail = buf + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome locality() {
  Outcome o;
  const auto P = qwz_projector(16, Rational(1));
  const auto phi = area_cocycle(P.grid(), 3);
  const auto full = index_pair(P, phi).value;
  const auto cut = index_pair(truncate_support(P, 6), phi).value;
  const double rel = std::abs(cut - full) / std::abs(full);
  o.require(rel < 0.01, "relative change " + std::to_string(rel));
  std::mt19937_64 rng(7);
  for (long rho = 0; rho <= 2; ++rho) {
    const Grid g(GridKind::torus, 9);
    const auto R = random_smoothing(g, 4, rng(), 2, 0.3);
    const auto Rc = truncate_support(R, rho);
    const auto phi2 = random_cochain(g, 2, rho, rng());
    const auto eta = random_cochain(g, 1, rho, rng());
    o.require(tau_pair(Rc, phi2, 2) == tau_pair(R, phi2, 2), "exact tau at radius " + std::to_string(rho));
    o.require(cap(std::vector<ExactKernel>{Rc, Rc}, eta) == cap(std::vector<ExactKernel>{R, R}, eta),
              "exact cap at radius " + std::to_string(rho));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "radius 6 relative change %.2e; exact tau/cap unchanged for rho=0,1,2", rel);
  o.detail = buf + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome local_homology_table() {
  Outcome o;
  const auto rows = local_homology(4, {0, 1, 2});
  o.require(rows.size() == 3 && rows[0].cyclic[0] == 4, "w=0 HC_0 != 4");
  const auto field = homology_ranks(ground_field(), Ground::field, 2);
  for (int k = 0; k <= 2; ++k) o.require(rows[2].cyclic[k] == field[k].cyclic, "w=2 HC_" + std::to_string(k));
  for (const auto& r : local_homology(3, {0, 1}))
    o.require(r.cyclic == testing::quotient_local_homology(3, r.width, 2),
              "N=3 brute force at w=" + std::to_string(r.width));
  std::string table;
  for (const auto& r : rows) {
    table += (table.empty() ? "" : " ") + std::string("w") + std::to_string(r.width) + ":(";
    for (std::size_t k = 0; k < r.cyclic.size(); ++k) table += (k ? "," : "") + std::to_string(r.cyclic[k]);
    table += ")";
  }
  o.detail = "N=4 " + table + (o.detail.empty() ? "; N=3 matches brute force" : "; " + o.detail);
  return o;
}

Outcome cochain_calculus() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, 63);
  for (int t = 0; t < 100; ++t) {
    const Grid g(t % 2 ? GridKind::circle : GridKind::torus, 8);
    const int q = t % 4;
    const auto eta = random_cochain(g, q, t % 3 == 0 ? -1 : 2, rng());
    Points x(q + 3);
    for (auto& p : x) p = pick(rng) % g.size();
    o.require(coboundary(coboundary(eta))(x).is_zero(), "delta^2 case " + std::to_string(t));
    Points y(x.begin(), x.begin() + q + 1), ys = y;
    if (q > 0) {
      std::swap(ys[0], ys[q]);
      o.require(eta(ys) == -eta(y), "antisymmetry case " + std::to_string(t));
    }
    Points z(x.begin(), x.begin() + q + 2), zs = z;
    std::swap(zs[0], zs[1]);
    const auto d = coboundary(eta);
    o.require(d(zs) == -d(z), "antisymmetry of delta case " + std::to_string(t));
  }
  if (o.pass) o.detail = "100 cases: delta^2 = 0, eta and delta eta antisymmetric";
  return o;
}

Outcome fiber_residue_check() {
  Outcome o;
  const auto grid = cotangent_circle_grid();
  const auto res = fiber_residue(sample_fibers(grid, angular_symbol));
  o.require(res.size() == 32, "grid size");
  const auto e = ExactMatrix::diag({GaussRat(0), GaussRat(1)});
  const auto p1 = ExactMatrix::diag({GaussRat(1), GaussRat(0)});
  int full = 0;
  for (const auto& f : res) {
    if (f.lambda != 1) continue;
    ++full;
    o.require(f.l * p1 * exact_inverse(f.l) == e, "conjugation at xi=" + f.point.xi.get_str());
    o.require(f.r.is_zero(), "r nonzero at xi=" + f.point.xi.get_str());
  }
  o.require(full > 0, "no point with lambda = 1");
  if (o.pass) o.detail = std::to_string(full) + " of 32 points have lambda = 1; conjugation and r = 0 exact there";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

bool report(const Criterion& c) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& ex) {
    o.pass = false;
    o.detail = std::string("exception: ") + ex.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
    o.pass = false;
    o.detail += "; runtime limit exceeded";
  }
  std::printf("criterion %2d %s  %s (%.2fs): %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs, o.detail.c_str());
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "Toeplitz index", 5, toeplitz_index},
      {2, "residue identities", 10, residue_identities},
      {3, "Chern residue is a b'-cycle over Lambda", 30, residue_cycle},
      {4, "homology rank oracle", 60, homology_oracle},
      {5, "cap(b'c, eta) = cap(c, delta eta)", 20, [] { return cap_adjunction(false); }},
      {6, "Chern-marker pairing", 60, chern_marker},
      {7, "locality of the pairing", 0, locality},
      {8, "support-filtration table", 0, local_homology_table},
      {9, "cochain calculus", 0, cochain_calculus},
      {10, "fiber residue", 0, fiber_residue_check},
  };
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  bool found = false;
  for (const auto& c : all) {
    if (which != "all" && which != std::to_string(c.id)) continue;
    found = true;
    ok = report(c) && ok;
    if (c.id == 5) report({5, "(with b) cap(bc, eta) = cap(c, delta eta)", 20, [] { return cap_adjunction(true); }});
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
    return 2;
  }
  return ok ? 0 : 1;
}
