#pragma once

#include <cstdlib>
#include <optional>

#include "indexlab/cyclic/chain.hpp"

namespace indexlab {

/// Chain-space dimension budget: INDEXLAB_BUDGET if set, else 200000.
inline std::size_t chain_budget() {
  if (const char* env = std::getenv("INDEXLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw BadParameter("INDEXLAB_BUDGET must be a positive integer");
    return std::size_t(v);
  }
  return 200000;
}

namespace detail {

// Number of admissible (k+1)-tuples over the given letters.
inline long double count_tuples(const ChainSpace& sp, const std::vector<std::uint32_t>& letters, int k) {
  if (sp.ground() == Ground::field) return std::pow((long double)letters.size(), k + 1);
  long double m[2][2] = {{0, 0}, {0, 0}};
  for (auto b : letters) m[sp.sector(b).first][sp.sector(b).second] += 1;
  long double p[2][2] = {{1, 0}, {0, 1}};
  for (int s = 0; s <= k; ++s) {
    long double q[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) q[i][j] += p[i][l] * m[l][j];
    std::copy(&q[0][0], &q[0][0] + 4, &p[0][0]);
  }
  return p[0][0] + p[1][1];
}

inline void check_budget(const ChainSpace& sp, const std::vector<std::uint32_t>& letters, int k, std::size_t budget) {
  const long double n = count_tuples(sp, letters, k);
  if (n > (long double)budget)
    throw TooLarge("degree-" + std::to_string(k) + " chain space has " + std::to_string((unsigned long long)n) +
                   " basis tuples, budget is " + std::to_string(budget));
}

inline std::vector<Tuple> admissible_tuples(const ChainSpace& sp, const std::vector<std::uint32_t>& letters, int k) {
  std::vector<Tuple> out;
  Tuple t;
  std::function<void()> rec = [&]() {
    if (int(t.size()) == k + 1) {
      if (sp.joins(t.back(), t.front())) out.push_back(t);
      return;
    }
    for (auto b : letters) {
      if (!t.empty() && !sp.joins(t.back(), b)) continue;
      t.push_back(b);
      rec();
      t.pop_back();
    }
  };
  rec();
  return out;
}

// Orbit sums N(t) of rotation classes, dropping the ones that vanish.
inline std::vector<LambdaChain> orbit_sums(const ChainSpacePtr& sp, const std::vector<std::uint32_t>& letters, int k) {
  std::vector<LambdaChain> out;
  for (const auto& t : admissible_tuples(*sp, letters, k)) {
    // keep t only if it is the least of its rotations
    bool canonical = true;
    for (int r = 1; r <= k; ++r) {
      Tuple u(t.begin() + r, t.end());
      u.insert(u.end(), t.begin(), t.begin() + r);
      if (u < t) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    LambdaChain single(sp, k);
    single.add(t, GaussRat(1));
    LambdaChain sum = single, cur = single;
    for (int r = 1; r <= k; ++r) {
      cur = cyclic_T(cur);
      sum += cur;
    }
    if (!sum.is_zero()) out.push_back(std::move(sum));
  }
  return out;
}

inline std::size_t rank_of_chains(const std::vector<LambdaChain>& chains) {
  std::map<Tuple, std::uint32_t> col;
  std::vector<SparseRow> rows;
  rows.reserve(chains.size());
  for (const auto& c : chains) {
    if (c.is_zero()) continue;
    SparseRow row;
    row.reserve(c.size());
    for (const auto& [t, v] : c.terms()) {
      auto [it, fresh] = col.try_emplace(t, std::uint32_t(col.size()));
      row.emplace_back(it->second, v);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(row));
  }
  return sparse_rank(std::move(rows), col.size());
}

// Dimension of the T-fixed subspace and rank of b' on it.
struct CyclicDegree {
  std::size_t fixed_dim = 0;
  std::size_t boundary_rank = 0;
};

inline CyclicDegree cyclic_degree(const ChainSpacePtr& sp, const std::vector<std::uint32_t>& letters, int k) {
  auto orbits = orbit_sums(sp, letters, k);
  CyclicDegree d;
  d.fixed_dim = orbits.size();
  if (k > 0) {
    std::vector<LambdaChain> images;
    images.reserve(orbits.size());
    for (const auto& o : orbits) images.push_back(b_prime(o));
    d.boundary_rank = rank_of_chains(images);
  }
  return d;
}

struct HochschildDegree {
  std::size_t chain_dim = 0;
  std::size_t boundary_rank = 0;
};

inline HochschildDegree hochschild_degree(const ChainSpacePtr& sp, const std::vector<std::uint32_t>& letters, int k) {
  auto tuples = admissible_tuples(*sp, letters, k);
  HochschildDegree d;
  d.chain_dim = tuples.size();
  if (k > 0) {
    std::vector<LambdaChain> images;
    images.reserve(tuples.size());
    for (const auto& t : tuples) {
      LambdaChain c(sp, k);
      c.add(t, GaussRat(1));
      images.push_back(hochschild_b(c));
    }
    d.boundary_rank = rank_of_chains(images);
  }
  return d;
}

inline std::vector<std::uint32_t> all_letters(const ChainSpace& sp) {
  std::vector<std::uint32_t> l(sp.dim());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::uint32_t(i);
  return l;
}

}  // namespace detail

struct HomologyRow {
  int k = 0;
  std::size_t chain_dim = 0;   // admissible tuples
  std::size_t cyclic_dim = 0;  // T-fixed subspace
  std::size_t hochschild = 0;  // dim HH_k
  std::size_t cyclic = 0;      // dim H^lambda_k
};

/// Exact Hochschild and cyclic homology ranks for k = 0..k_max. Cyclic
/// homology is computed on the T-fixed subcomplex with b'.
inline std::vector<HomologyRow> homology_ranks(const ChainSpacePtr& sp, int k_max,
                                               std::optional<std::size_t> budget = std::nullopt) {
  if (k_max < 0) throw BadParameter("k_max must be nonnegative");
  const std::size_t cap = budget.value_or(chain_budget());
  const auto letters = detail::all_letters(*sp);
  for (int k = 0; k <= k_max + 1; ++k) detail::check_budget(*sp, letters, k, cap);
  std::vector<detail::CyclicDegree> cyc;
  std::vector<detail::HochschildDegree> hh;
  for (int k = 0; k <= k_max + 1; ++k) {
    cyc.push_back(detail::cyclic_degree(sp, letters, k));
    hh.push_back(detail::hochschild_degree(sp, letters, k));
  }
  std::vector<HomologyRow> rows;
  for (int k = 0; k <= k_max; ++k) {
    HomologyRow r;
    r.k = k;
    r.chain_dim = hh[k].chain_dim;
    r.cyclic_dim = cyc[k].fixed_dim;
    r.hochschild = hh[k].chain_dim - hh[k].boundary_rank - hh[k + 1].boundary_rank;
    r.cyclic = cyc[k].fixed_dim - cyc[k].boundary_rank - cyc[k + 1].boundary_rank;
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<HomologyRow> homology_ranks(const FinDimAlgebra& A, Ground g, int k_max,
                                               std::optional<std::size_t> budget = std::nullopt) {
  return homology_ranks(make_chain_space(A, g), k_max, budget);
}

/// Matrix units of M_N on the circle Z_N within band w.
inline std::vector<std::uint32_t> band_letters(const Grid& g, long w) {
  std::vector<std::uint32_t> out;
  const auto N = std::size_t(g.N());
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (g.steps(i, j) <= w) out.push_back(std::uint32_t(i * N + j));
  return out;
}

/// Largest width whose self-composition stays within w.
inline long boundary_width(const Grid& g, long w) { return w >= g.diameter() ? w : w / 2; }

struct LocalHomologyRow {
  long width = 0;
  long boundary_width = 0;
  std::vector<std::size_t> cyclic;  // H^lambda_k, k = 0..k_max
  bool stabilized = false;          // equal to the previous width's ranks
};

/// Cyclic homology of band-w chains of M_N on Z_N: cycles are T-fixed band-w
/// chains killed by b', boundaries are b' of T-fixed band-w' chains.
inline std::vector<LocalHomologyRow> local_homology(long N, const std::vector<long>& widths, int k_max = 2,
                                                    std::optional<std::size_t> budget = std::nullopt) {
  const Grid g(GridKind::circle, N);
  if (k_max < 0) throw BadParameter("k_max must be nonnegative");
  const std::size_t cap = budget.value_or(chain_budget());
  auto sp = make_chain_space(matrix_algebra(std::size_t(N), false), Ground::field);
  std::vector<LocalHomologyRow> rows;
  for (long w : widths) {
    if (w < 0) throw BadParameter("negative width");
    const long wb = boundary_width(g, w);
    const auto cyc_letters = band_letters(g, w), bnd_letters = band_letters(g, wb);
    for (int k = 0; k <= k_max; ++k) detail::check_budget(*sp, cyc_letters, k, cap);
    detail::check_budget(*sp, bnd_letters, k_max + 1, cap);
    LocalHomologyRow row;
    row.width = w;
    row.boundary_width = wb;
    for (int k = 0; k <= k_max; ++k) {
      const auto cyc = detail::cyclic_degree(sp, cyc_letters, k);
      const auto bnd = detail::cyclic_degree(sp, bnd_letters, k + 1);
      row.cyclic.push_back(cyc.fixed_dim - cyc.boundary_rank - bnd.boundary_rank);
    }
    row.stabilized = !rows.empty() && rows.back().cyclic == row.cyclic;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace indexlab
