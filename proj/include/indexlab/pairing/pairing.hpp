#pragma once

#include <complex>
#include <vector>

#include "indexlab/grid/grid_kernel.hpp"
#include "indexlab/pairing/cochain.hpp"
#include "indexlab/residue/residue.hpp"
#include "indexlab/toeplitz/toeplitz.hpp"

namespace indexlab {

namespace detail {

template <class Kernel>
using KernelScalar = std::conditional_t<Kernel::exact, GradedScalar, std::complex<double>>;

// Dense copy of a kernel matrix for fast block access.
template <class Kernel>
struct DenseBlocks {
  using T = KernelScalar<Kernel>;
  std::size_t dim, n;
  std::vector<T> m;

  explicit DenseBlocks(const Kernel& k) : dim(k.dim()), n(k.fiber()), m(dim * dim) {
    if constexpr (Kernel::exact) {
      for (const auto& [ij, v] : k.matrix().entries()) m[ij.first * dim + ij.second] = v;
    } else {
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m[i * dim + j] = k.matrix()(i, j);
    }
  }
  const T& at(std::size_t p, std::size_t a, std::size_t q, std::size_t b) const {
    return m[(p * n + a) * dim + q * n + b];
  }
};

template <class T>
bool scalar_is_zero(const T& v) {
  if constexpr (std::is_same_v<T, GradedScalar>)
    return v.is_zero();
  else
    return v == T(0);
}

// tr(K_0(z_0, z_1) K_1(z_1, z_2) ... K_k(z_k, z_0)).
template <class Blocks>
auto cyclic_block_trace(const std::vector<const Blocks*>& ks, const Points& z) {
  using T = typename Blocks::T;
  const std::size_t n = ks.front()->n, k = ks.size();
  std::vector<T> cur(n * n), next(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cur[a * n + b] = ks[0]->at(z[0], a, z[1 % k], b);
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t zi = z[i], zj = z[(i + 1) % k];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        T s{};
        for (std::size_t c = 0; c < n; ++c) {
          const T& l = cur[a * n + c];
          if (scalar_is_zero(l)) continue;
          const T& r = ks[i]->at(zi, c, zj, b);
          if (scalar_is_zero(r)) continue;
          s += l * r;
        }
        next[a * n + b] = s;
      }
    std::swap(cur, next);
  }
  T t{};
  for (std::size_t a = 0; a < n; ++a) t += cur[a * n + a];
  return t;
}

// Calls f on every (k+1)-tuple of grid points with all pairwise distances
// within radius (all tuples when radius < 0).
template <class F>
void for_each_tuple(const Grid& g, int k, long radius, F&& f) {
  std::vector<std::vector<std::size_t>> near(g.size());
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t q = 0; q < g.size(); ++q)
      if (radius < 0 || g.steps(p, q) <= radius) near[p].push_back(q);
  Points z(k + 1);
  std::function<void(int)> rec = [&](int i) {
    if (i == k + 1) {
      f(z);
      return;
    }
    for (auto q : near[z[0]]) {
      bool ok = true;
      for (int j = 1; j < i && ok; ++j) ok = radius < 0 || g.steps(z[j], q) <= radius;
      if (!ok) continue;
      z[i] = q;
      rec(i + 1);
    }
  };
  for (std::size_t p = 0; p < g.size(); ++p) {
    z[0] = p;
    rec(1);
  }
}

template <class T>
T times_cochain_value(const T& v, const GaussRat& c) {
  if constexpr (std::is_same_v<T, GradedScalar>)
    return v * GradedScalar(c);
  else
    return v * c.to_complex();
}

template <class Kernel>
void check_same_shape(const std::vector<Kernel>& ks, const Grid& g) {
  for (const auto& k : ks)
    if (k.grid().kind() != g.kind() || k.grid().N() != g.N() || k.fiber() != ks.front().fiber())
      throw ShapeError("kernels and cochain live on different grids");
}

}  // namespace detail

/// Linear combination of elementary tensors A_0 (x) ... (x) A_k of kernels.
template <class Kernel>
struct KernelChain {
  int degree = 0;
  std::vector<std::pair<GaussRat, std::vector<Kernel>>> terms;

  static KernelChain elementary(std::vector<Kernel> factors) {
    if (factors.empty()) throw DegreeError("empty tensor");
    KernelChain c;
    c.degree = int(factors.size()) - 1;
    c.terms.emplace_back(GaussRat(1), std::move(factors));
    return c;
  }
};

/// b' merges adjacent factors with alternating signs, never the wraparound.
template <class Kernel>
KernelChain<Kernel> b_prime(const KernelChain<Kernel>& c) {
  if (c.degree == 0) throw DegreeError("b' of a degree-0 chain");
  KernelChain<Kernel> out;
  out.degree = c.degree - 1;
  for (const auto& [coef, fs] : c.terms)
    for (int i = 0; i < c.degree; ++i) {
      std::vector<Kernel> t;
      for (int j = 0; j <= c.degree; ++j) {
        if (j == i + 1) continue;
        t.push_back(j == i ? fs[i] * fs[i + 1] : fs[j]);
      }
      out.terms.emplace_back(i % 2 ? -coef : coef, std::move(t));
    }
  return out;
}

/// b = b' plus the wraparound term (-1)^k A_k A_0 (x) A_1 ... A_{k-1}.
template <class Kernel>
KernelChain<Kernel> hochschild_b(const KernelChain<Kernel>& c) {
  auto out = b_prime(c);
  const int k = c.degree;
  for (const auto& [coef, fs] : c.terms) {
    std::vector<Kernel> t{fs[k] * fs[0]};
    for (int j = 1; j < k; ++j) t.push_back(fs[j]);
    out.terms.emplace_back(k % 2 ? -coef : coef, std::move(t));
  }
  return out;
}

/// Cap product with a general cochain:
/// sum_z tr(A_0(z_0, z_1) ... A_k(z_k, z_0)) eta(z_1, ..., z_k, z_0).
template <class Kernel>
detail::KernelScalar<Kernel> cap(const std::vector<Kernel>& chain, const ASCochain& eta) {
  using T = detail::KernelScalar<Kernel>;
  if (chain.empty() || int(chain.size()) != eta.degree() + 1)
    throw DegreeError("chain degree " + std::to_string(int(chain.size()) - 1) + " does not match cochain degree " +
                      std::to_string(eta.degree()));
  detail::check_same_shape(chain, eta.grid());
  std::vector<detail::DenseBlocks<Kernel>> dense;
  for (const auto& k : chain) dense.emplace_back(k);
  std::vector<const detail::DenseBlocks<Kernel>*> ptrs;
  for (const auto& d : dense) ptrs.push_back(&d);
  const int k = eta.degree();
  T acc{};
  Points arg(k + 1);
  detail::for_each_tuple(eta.grid(), k, eta.radius(), [&](const Points& z) {
    for (int i = 0; i < k; ++i) arg[i] = z[i + 1];
    arg[k] = z[0];
    const GaussRat c = eta(arg);
    if (c.is_zero()) return;
    const T t = detail::cyclic_block_trace(ptrs, z);
    if (!detail::scalar_is_zero(t)) acc += detail::times_cochain_value(t, c);
  });
  return acc;
}

template <class Kernel>
detail::KernelScalar<Kernel> cap(const KernelChain<Kernel>& chain, const ASCochain& eta) {
  using T = detail::KernelScalar<Kernel>;
  if (chain.degree != eta.degree()) throw DegreeError("chain and cochain degrees differ");
  T acc{};
  for (const auto& [coef, fs] : chain.terms) acc += detail::times_cochain_value(cap(fs, eta), coef);
  return acc;
}

/// Multiplication operator by f on a kernel's grid and fiber.
inline ExactKernel multiplication_kernel(const Grid& g, std::size_t n, const std::vector<GaussRat>& f) {
  if (f.size() != g.size()) throw ShapeError("function has the wrong number of values");
  ExactMatrix m(g.size() * n, g.size() * n);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t a = 0; a < n; ++a) m.set(p * n + a, p * n + a, GradedScalar(f[p]));
  return ExactKernel(g, n, std::move(m));
}

/// The operator A_0 f_0 A_1 f_1 ... A_k f_k.
inline ExactKernel square_cap(const std::vector<ExactKernel>& chain, const std::vector<std::vector<GaussRat>>& fs) {
  if (chain.empty() || chain.size() != fs.size())
    throw DegreeError("chain has " + std::to_string(chain.size()) + " factors but " + std::to_string(fs.size()) +
                      " functions were given");
  const Grid& g = chain.front().grid();
  const std::size_t n = chain.front().fiber();
  ExactKernel out = ExactKernel::identity(g, n);
  for (std::size_t i = 0; i < chain.size(); ++i) out = out * chain[i] * multiplication_kernel(g, n, fs[i]);
  return out;
}

/// Tr(A_0 f_0 A_1 f_1 ... A_k f_k).
inline GradedScalar cap(const std::vector<ExactKernel>& chain, const std::vector<std::vector<GaussRat>>& fs) {
  return square_cap(chain, fs).matrix().trace();
}

/// sum over tuples within phi's radius of tr(R(x_0,x_1) ... R(x_q,x_0)) phi(x_0..x_q).
template <class Kernel>
detail::KernelScalar<Kernel> tau_pair(const Kernel& R, const ASCochain& phi, int q) {
  if (q < 0 || q % 2) throw DegreeError("tau pairing needs an even degree, got " + std::to_string(q));
  if (phi.degree() != q) throw DegreeError("cochain degree does not match q");
  detail::check_same_shape(std::vector<Kernel>{R}, phi.grid());
  using T = detail::KernelScalar<Kernel>;
  const detail::DenseBlocks<Kernel> dense(R);
  const std::vector<const detail::DenseBlocks<Kernel>*> ptrs(q + 1, &dense);
  T acc{};
  detail::for_each_tuple(phi.grid(), q, phi.radius(), [&](const Points& z) {
    const GaussRat c = phi(z);
    if (c.is_zero()) return;
    const T t = detail::cyclic_block_trace(ptrs, z);
    if (!detail::scalar_is_zero(t)) acc += detail::times_cochain_value(t, c);
  });
  return acc;
}

struct IndexPairing {
  int q = 0;                         // cochain degree
  GradedScalar factor;               // normalization times Chern coefficient times cochain multiplier
  std::complex<double> raw;          // tau_pair
  std::complex<double> value;        // factor * raw
};

/// Index pairing of R with an even cochain of degree q = 2m:
/// m! / ((2 pi i)^m (2m)!) times the degree-m Chern character coefficient
/// (2 pi i)^m (2m)! / m!, times the cochain's own multiplier.
template <class Kernel>
IndexPairing index_pair(const Kernel& R, const ASCochain& phi) {
  const int q = phi.degree();
  if (q % 2) throw DegreeError("index pairing needs an even cochain degree");
  const int m = q / 2;
  const GradedScalar norm = GradedScalar(GaussRat(factorial(m) / factorial(2 * m)), -m);
  const GradedScalar ch = GradedScalar(GaussRat(factorial(2 * m) / factorial(m)), m);
  IndexPairing out;
  out.q = q;
  out.factor = norm * ch * phi.normalization();
  const auto t = tau_pair(R, phi, q);
  if constexpr (Kernel::exact)
    out.raw = numeric_eval(t);
  else
    out.raw = t;
  out.value = numeric_eval(out.factor) * out.raw;
  return out;
}

/// Block operator of Toeplitz elements restricted to sites 0..K-1, as an
/// exact kernel on the circle of K points with fiber 2n.
inline ExactKernel window_kernel(const Block2<ToeplitzElement>& R, long K) {
  if (K < 2) throw BadParameter("window must have at least two sites");
  const std::size_t n = R.a11.size(), f = 2 * n;
  const Grid g(GridKind::circle, K);
  ExactMatrix m(g.size() * f, g.size() * f);
  const ToeplitzElement* blocks[2][2] = {{&R.a11, &R.a12}, {&R.a21, &R.a22}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const ExactMatrix t = blocks[r][c]->truncate(K);
      for (const auto& [ij, v] : t.entries()) {
        const std::size_t p = ij.first / n, a = ij.first % n, s = ij.second / n, b = ij.second % n;
        m.set(p * f + r * n + a, s * f + c * n + b, v);
      }
    }
  return ExactKernel(g, f, std::move(m));
}

}  // namespace indexlab
