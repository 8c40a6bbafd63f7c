#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "indexlab/cyclic/homology.hpp"
#include "indexlab/grid/berry.hpp"
#include "indexlab/grid/qwz.hpp"
#include "indexlab/pairing/pairing.hpp"
#include "indexlab/random.hpp"
#include "indexlab/report/report.hpp"
#include "indexlab/residue/connecting.hpp"
#include "indexlab/residue/fiber_residue.hpp"
#include "indexlab/toeplitz/parametrix.hpp"
#include "indexlab/toeplitz/symbol_parser.hpp"
#include "indexlab/toeplitz/winding.hpp"

namespace indexlab {

/// Command-line parameters; unset values take per-experiment defaults.
struct RunParams {
  std::optional<std::string> symbol;
  std::optional<int> trials;
  std::uint64_t seed = 42;
  std::optional<long> N;
  std::optional<std::string> mass;
  std::optional<long> radius;
  std::optional<std::vector<long>> widths;
  std::optional<int> kmax;
  std::optional<std::string> algebra;
  std::optional<std::string> ground;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"toeplitz-index", "residue-check",  "theorem19",
                                              "cyclic-ranks",   "lemma16",        "chern-marker",
                                              "locality",       "local-homology", "fiber-residue"};
  return names;
}

inline Rational parse_mass(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const ParseError& e) {
    throw BadParameter(std::string("mass: ") + e.what());
  }
}

namespace detail {

inline std::string str(const GradedScalar& x) { return x.to_string(); }

inline std::optional<long> as_integer(const GradedScalar& x) {
  if (!x.is_grade0()) return std::nullopt;
  const GaussRat c = x.coeff(0);
  if (!c.is_real() || c.re().get_den() != 1) return std::nullopt;
  return c.re().get_num().get_si();
}

inline long positive(const std::optional<long>& v, long dflt, const char* what) {
  const long x = v.value_or(dflt);
  if (x <= 0) throw BadParameter(std::string(what) + " must be positive");
  return x;
}

inline Vec matrix_to_vec(const ExactMatrix& m) {
  Vec v(m.rows() * m.cols());
  for (const auto& [ij, x] : m.entries()) v[ij.first * m.cols() + ij.second] = x.coeff(0);
  return v;
}

inline void toeplitz_index(const RunParams& p, ExperimentReport& r) {
  std::vector<std::string> symbols;
  if (p.symbol)
    symbols.push_back(*p.symbol);
  else
    symbols = {"z^-3", "z^-2", "z^-1", "1", "z", "z^2", "z^3", "[[z,0],[0,z^2]]"};
  r.params["symbols"] = symbols;
  r.table.columns = {"symbol", "trace_R", "winding", "index", "window_pairing"};
  for (const auto& s : symbols) {
    const auto a = parse_symbol(s);
    const auto cc = connecting_class(a);
    const long w = winding(a);
    const auto t = as_integer(cc.trace_difference);
    const long reach_sites = long(a.max_degree() - a.min_degree()) + 4;
    const auto W = window_kernel(cc.residue.R, std::max(64L, 4 * reach_sites));
    const auto pairing = index_pair(W, constant_cochain(W.grid(), 0, GaussRat(1))).value;
    r.check(s + ": trace(R) is an exact integer", t.has_value(), str(cc.trace_difference));
    r.check(s + ": trace(R) = -winding", t && *t == -w,
            "trace " + str(cc.trace_difference) + ", winding " + std::to_string(w));
    r.check(s + ": windowed pairing = trace(R)", t && std::abs(pairing - std::complex<double>(double(*t))) < 1e-9,
            std::to_string(pairing.real()));
    r.table.add({s, str(cc.trace_difference), w, t ? Json(*t) : Json(nullptr), pairing.real()});
    if (symbols.size() == 1) r.results["index"] = t ? Json(*t) : Json(nullptr);
  }
}

inline void residue_check(const RunParams& p, ExperimentReport& r) {
  const int trials = int(positive(p.trials ? std::optional<long>(*p.trials) : std::nullopt, 25, "trials"));
  r.params["trials"] = trials;
  std::mt19937_64 rng(p.seed);
  const auto names = ResidueReport{}.entries();
  r.table.columns = {"trial", "context"};
  for (const auto& [n, ok] : names) r.table.columns.push_back(n);
  const char* contexts[] = {"exact-matrix", "toeplitz", "grid-kernel"};
  for (int i = 0; i < trials; ++i) {
    const std::string ctxname = contexts[i % 3];
    std::vector<std::pair<std::string, bool>> entries;
    std::string detail;
    try {
      if (i % 3 == 0) {
        const std::size_t n = 1 + rng() % 4;
        ExactMatrixContext ctx{n};
        const auto A = testing::random_matrix(rng, n, n, 0.7, i % 2 == 0);
        const auto B = testing::random_matrix(rng, n, n, 0.7, i % 4 == 0);
        entries = verify_residue_identities(ctx, build_residue(ctx, A, B)).entries();
      } else if (i % 3 == 1) {
        const std::size_t n = i % 2 ? 1 : 2;
        auto [A, B] = parametrix(testing::random_supported_symbol(rng, n));
        A = A + testing::random_toeplitz(rng, n, false, 3);
        B = B + testing::random_toeplitz(rng, n, false, 3);
        ToeplitzContext ctx{n};
        entries = verify_residue_identities(ctx, build_residue(ctx, A, B)).entries();
      } else {
        const Grid g(i % 2 ? GridKind::torus : GridKind::circle, i % 2 ? 3 : 6);
        const std::size_t n = 1 + i % 2;
        GridKernelContext ctx{g, n};
        const auto A = random_smoothing(g, 1, rng(), n, 0.5);
        const auto B = random_smoothing(g, 1, rng(), n, 0.5);
        entries = verify_residue_identities(ctx, build_residue(ctx, A, B)).entries();
      }
    } catch (const AlgebraViolation& e) {
      entries = names;
      for (auto& [n, ok] : entries) ok = false;
      detail = e.what();
    }
    std::vector<Json> row{i, ctxname};
    for (const auto& [n, ok] : entries) {
      r.check("trial " + std::to_string(i) + " (" + ctxname + "): " + n, ok, detail);
      row.push_back(ok);
    }
    r.table.add(std::move(row));
  }
}

inline void residue_cycle(const RunParams& p, ExperimentReport& r) {
  const int trials = int(positive(p.trials ? std::optional<long>(*p.trials) : std::nullopt, 4, "trials"));
  r.params["trials"] = trials;
  r.params["algebra"] = "M3";
  std::mt19937_64 rng(p.seed);
  const auto A = matrix_algebra(3);
  const Vec e = *A.idempotent();
  const auto E00 = ExactMatrix::unit(3, 0, 0);
  r.table.columns = {"trial", "q", "chain_terms", "bprime_zero_lambda", "bprime_zero_field"};
  int field_nonzero = 0;
  for (int t = 0; t < trials; ++t) {
    const auto g = testing::random_invertible(rng, 3);
    const Vec P = matrix_to_vec(g * E00 * exact_inverse(g));
    for (int q = 1; q <= 2; ++q) {
      const auto ch = chern_residue(A, P, e, q);
      const auto chf = chern_residue(A, P, e, q, Ground::field);
      const bool lam = b_prime(ch.chain).is_zero();
      const bool fld = b_prime(chf.chain).is_zero();
      field_nonzero += !fld;
      r.check("trial " + std::to_string(t) + " q=" + std::to_string(q) + ": b'(Ch_q(R)) = 0 over Lambda", lam,
              std::to_string(ch.chain.size()) + " terms, coefficient " + str(ch.coefficient));
      r.table.add({t, q, ch.chain.size(), lam, fld});
    }
  }
  r.check("negative control: b' is nonzero over the ground field for some instance", field_nonzero > 0,
          std::to_string(field_nonzero) + " nonzero");
  const auto sep = separability_check();
  r.check("Lambda separability: mu(s(1)) = 1", sep.mu_s_one);
  r.check("Lambda separability: mu(s(e)) = e", sep.mu_s_e);
  r.check("Lambda separability: s is left linear", sep.left_linear);
  r.check("Lambda separability: s is right linear", sep.right_linear);
}

inline void cyclic_ranks(const RunParams& p, ExperimentReport& r) {
  const std::string name = p.algebra.value_or("field");
  const Ground ground = parse_ground(p.ground.value_or("field"));
  const int kmax = p.kmax.value_or(4);
  if (kmax < 0) throw BadParameter("kmax must be nonnegative");
  r.params["algebra"] = name;
  r.params["ground_ring"] = to_string(ground);
  r.params["kmax"] = kmax;
  const auto A = algebra_by_name(name);
  const auto rows = homology_ranks(A, ground, kmax);
  r.table.columns = {"k", "chain_dim", "cyclic_dim", "HH", "HC"};
  for (const auto& row : rows) r.table.add({row.k, row.chain_dim, row.cyclic_dim, row.hochschild, row.cyclic});

  auto same = [&](const std::vector<HomologyRow>& other, bool hh) {
    for (std::size_t k = 0; k < rows.size(); ++k)
      if ((hh ? rows[k].hochschild : rows[k].cyclic) != (hh ? other[k].hochschild : other[k].cyclic)) return false;
    return true;
  };
  if (name == "field") {
    bool hc = true, hh = true;
    for (const auto& row : rows) {
      hc = hc && row.cyclic == (row.k % 2 == 0 ? 1u : 0u);
      hh = hh && row.hochschild == (row.k == 0 ? 1u : 0u);
    }
    r.check("HC ranks of the ground field are 1,0,1,0,...", hc);
    r.check("HH ranks of the ground field are 1,0,0,...", hh);
  }
  if (name.size() > 1 && name[0] == 'M' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    const auto field = homology_ranks(ground_field(), Ground::field, kmax);
    r.check("Morita invariance: HC equals the ground-field table", same(field, false));
    r.check("Morita invariance: HH equals the ground-field table", same(field, true));
  }
  if (A.idempotent()) {
    const Ground other = ground == Ground::field ? Ground::lambda : Ground::field;
    const auto alt = homology_ranks(A, other, kmax);
    r.check(std::string("HC over ") + to_string(ground) + " equals HC over " + to_string(other), same(alt, false));
    r.check(std::string("HH over ") + to_string(ground) + " equals HH over " + to_string(other), same(alt, true));
  }
}

inline void cap_adjunction(const RunParams& p, ExperimentReport& r) {
  const int trials = int(positive(p.trials ? std::optional<long>(*p.trials) : std::nullopt, 20, "trials"));
  r.params["trials"] = trials;
  std::mt19937_64 rng(p.seed);
  r.table.columns = {"trial", "k", "N", "cap_bprime_c", "cap_b_c", "cap_c_delta_eta"};
  for (int t = 0; t < trials; ++t) {
    const int k = t % 4;
    const long N = k <= 1 ? 8 : k == 2 ? 6 : 5;
    const Grid g(GridKind::circle, N);
    std::vector<ExactKernel> fs;
    for (int i = 0; i <= k + 1; ++i) fs.push_back(random_smoothing(g, 2, rng()));
    const auto c = KernelChain<ExactKernel>::elementary(fs);
    const auto eta = random_cochain(g, k, t % 2 ? 2 : -1, rng());
    const auto lhs_bar = cap(b_prime(c), eta);
    const auto lhs_b = cap(hochschild_b(c), eta);
    const auto rhs = cap(c, coboundary(eta));
    const std::string tag = "trial " + std::to_string(t) + " (k=" + std::to_string(k) + ", N=" + std::to_string(N) + ")";
    r.check(tag + ": cap(b'c, eta) = cap(c, delta eta)", lhs_bar == rhs, str(lhs_bar) + " vs " + str(rhs));
    r.check(tag + ": cap(bc, eta) = cap(c, delta eta)", lhs_b == rhs, str(lhs_b) + " vs " + str(rhs));
    r.table.add({t, k, N, str(lhs_bar), str(lhs_b), str(rhs)});
  }
}

inline long cocycle_radius(long N) {
  const long rho = (N - 1) / 4;
  if (rho < 1) throw BadParameter("torus too small for the area cocycle (need N >= 5)");
  return rho;
}

inline void chern_marker(const RunParams& p, ExperimentReport& r) {
  const long N = positive(p.N, 16, "N");
  const Rational mass = parse_mass(p.mass.value_or("1"));
  const long rho = cocycle_radius(N);
  r.params["N"] = N;
  r.params["mass"] = mass.get_str();
  r.params["radius"] = p.radius ? Json(*p.radius) : Json(nullptr);
  r.params["cocycle_radius"] = rho;
  auto P = qwz_projector(N, mass);
  if (p.radius) P = truncate_support(P, *p.radius);
  const auto ip = index_pair(P, area_cocycle(P.grid(), rho));
  const double oracle = berry_chern(N, mass.get_d());
  const double value = ip.value.real();
  r.results["normalized"] = value;
  r.results["imaginary"] = ip.value.imag();
  r.results["factor"] = str(ip.factor);
  r.results["oracle"] = oracle;
  r.table.columns = {"N", "mass", "cocycle_radius", "truncation_radius", "normalized", "oracle", "ratio"};
  const bool nontrivial = std::abs(oracle) > 0.5;
  const Json ratio = nontrivial ? Json(value / oracle) : Json(nullptr);
  r.results["ratio"] = ratio;
  r.table.add({N, mass.get_str(), rho, p.radius ? Json(*p.radius) : Json(nullptr), value, oracle, ratio});
  r.check("Berry-curvature oracle is an integer", std::abs(oracle - std::round(oracle)) < 1e-6,
          std::to_string(oracle));
  r.check("pairing is real", std::abs(ip.value.imag()) < 1e-8, std::to_string(ip.value.imag()));
  if (nontrivial)
    r.check("normalized pairing / oracle in [0.95, 1.05]", value / oracle >= 0.95 && value / oracle <= 1.05,
            std::to_string(value / oracle));
  else
    r.check("|normalized pairing| < 0.05 in the trivial phase", std::abs(value) < 0.05, std::to_string(value));
}

inline void locality(const RunParams& p, ExperimentReport& r) {
  const long N = positive(p.N, 16, "N");
  const Rational mass = parse_mass(p.mass.value_or("1"));
  const long radius = p.radius.value_or(6);
  if (radius < 0) throw BadParameter("radius must be nonnegative");
  const long rho = cocycle_radius(N);
  r.params["N"] = N;
  r.params["mass"] = mass.get_str();
  r.params["radius"] = radius;
  r.params["cocycle_radius"] = rho;
  const auto P = qwz_projector(N, mass);
  const auto phi = area_cocycle(P.grid(), rho);
  const auto full = index_pair(P, phi).value;
  r.results["full"] = full.real();
  r.results["decay_rate"] = fit_decay_rate(decay_profile(P));
  r.check("projector kernel decays with distance", r.results["decay_rate"].get<double>() > 0);
  r.table.columns = {"truncation_radius", "value", "relative_change"};
  std::set<long> radii{rho, radius, N / 2};
  for (long w : radii) {
    const auto v = index_pair(truncate_support(P, w), phi).value;
    const double rel = std::abs(v - full) / std::abs(full);
    r.table.add({w, v.real(), rel});
    if (w == radius) {
      r.results["relative_change"] = rel;
      r.check("truncating the projector at radius " + std::to_string(w) + " changes the pairing by < 1%", rel < 0.01,
              std::to_string(rel));
    }
  }
  std::mt19937_64 rng(p.seed);
  const Grid g(GridKind::torus, 9);
  for (long w = 0; w <= 2; ++w) {
    const auto R = random_smoothing(g, 4, rng(), 1, 0.3);
    const auto cut = truncate_support(R, w);
    const auto phi2 = random_cochain(g, 2, w, rng());
    const auto eta = random_cochain(g, 1, w, rng());
    const auto t_full = tau_pair(R, phi2, 2), t_cut = tau_pair(cut, phi2, 2);
    const auto c_full = cap(std::vector<ExactKernel>{R, R}, eta), c_cut = cap(std::vector<ExactKernel>{cut, cut}, eta);
    r.check("exact tau unchanged by truncation at cochain radius " + std::to_string(w), t_full == t_cut,
            str(t_full) + " vs " + str(t_cut));
    r.check("exact cap unchanged by truncation at cochain radius " + std::to_string(w), c_full == c_cut,
            str(c_full) + " vs " + str(c_cut));
  }
}

inline void local_homology_exp(const RunParams& p, ExperimentReport& r) {
  const long N = positive(p.N, 4, "N");
  const auto widths = p.widths.value_or(std::vector<long>{0, 1, 2});
  const int kmax = p.kmax.value_or(2);
  r.params["N"] = N;
  r.params["widths"] = widths;
  r.params["kmax"] = kmax;
  const auto rows = local_homology(N, widths, kmax);
  r.table.columns = {"width", "boundary_width"};
  for (int k = 0; k <= kmax; ++k) r.table.columns.push_back("HC" + std::to_string(k));
  r.table.columns.push_back("stabilized");
  const auto field = homology_ranks(ground_field(), Ground::field, kmax);
  const Grid g(GridKind::circle, N);
  for (const auto& row : rows) {
    std::vector<Json> cells{row.width, row.boundary_width};
    for (auto c : row.cyclic) cells.push_back(c);
    cells.push_back(row.stabilized);
    r.table.add(std::move(cells));
    if (row.width == 0)
      r.check("w=0: HC_0 = N", row.cyclic[0] == std::size_t(N), std::to_string(row.cyclic[0]));
    if (row.width >= g.diameter()) {
      bool ok = true;
      for (int k = 0; k <= kmax; ++k) ok = ok && row.cyclic[k] == field[k].cyclic;
      r.check("w=" + std::to_string(row.width) + ": full algebra matches the ground-field table", ok);
    }
  }
}

inline void fiber_residue_exp(const RunParams&, ExperimentReport& r) {
  const auto grid = cotangent_circle_grid();
  const auto field = sample_fibers(grid, angular_symbol);
  const auto res = fiber_residue(field);
  r.params["points"] = res.size();
  const auto e = ExactMatrix::diag({GaussRat(0), GaussRat(1)});
  const auto p1 = ExactMatrix::diag({GaussRat(1), GaussRat(0)});
  const auto one = ExactMatrix::identity(2);
  bool inv = true, idem = true, diff = true, conj = true, vanish = true;
  long full = 0;
  r.table.columns = {"u", "xi", "lambda", "p_equals_e", "r_zero"};
  for (const auto& f : res) {
    inv = inv && f.l * f.l_inv == one && f.l_inv * f.l == one;
    idem = idem && f.p * f.p == f.p;
    diff = diff && f.r == f.p - e;
    if (f.lambda == 1) {
      ++full;
      conj = conj && f.l * p1 * f.l_inv == e;
      vanish = vanish && f.r.is_zero();
    }
    r.table.add({f.point.u.to_string(), f.point.xi.get_str(), f.lambda.get_str(), f.p == e, f.r.is_zero()});
  }
  r.results["full_cutoff_points"] = full;
  r.check("l * l^-1 = l^-1 * l = 1 at every point", inv);
  r.check("p^2 = p at every point", idem);
  r.check("r = p - e at every point", diff);
  r.check("l diag(1,0) l^-1 = diag(0,1) where lambda = 1", full > 0 && conj, std::to_string(full) + " points");
  r.check("r = 0 where lambda = 1", full > 0 && vanish);
}

}  // namespace detail

/// Runs one named experiment. Unknown names raise UsageError.
inline ExperimentReport run(const std::string& experiment, const RunParams& params) {
  using Runner = std::function<void(const RunParams&, ExperimentReport&)>;
  static const std::map<std::string, Runner> table{
      {"toeplitz-index", detail::toeplitz_index},
      {"residue-check", detail::residue_check},
      {"theorem19", detail::residue_cycle},
      {"cyclic-ranks", detail::cyclic_ranks},
      {"lemma16", detail::cap_adjunction},
      {"chern-marker", detail::chern_marker},
      {"locality", detail::locality},
      {"local-homology", detail::local_homology_exp},
      {"fiber-residue", detail::fiber_residue_exp}};
  auto it = table.find(experiment);
  if (it == table.end()) throw UsageError("unknown experiment '" + experiment + "'");
  ExperimentReport r;
  r.experiment = experiment;
  r.seed = params.seed;
  const auto start = std::chrono::steady_clock::now();
  it->second(params, r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace indexlab
