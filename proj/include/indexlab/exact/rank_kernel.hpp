#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "indexlab/exact/exact_matrix.hpp"

namespace indexlab {

/// Row of a sparse exact matrix, sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<std::uint32_t, GaussRat>>;

namespace detail {

// s - f * r, both sorted
inline SparseRow axpy_row(const SparseRow& s, const GaussRat& f, const SparseRow& r) {
  SparseRow out;
  out.reserve(s.size() + r.size());
  std::size_t i = 0, j = 0;
  while (i < s.size() || j < r.size()) {
    if (j == r.size() || (i < s.size() && s[i].first < r[j].first)) {
      out.push_back(s[i++]);
    } else if (i == s.size() || r[j].first < s[i].first) {
      out.emplace_back(r[j].first, -(f * r[j].second));
      ++j;
    } else {
      GaussRat v = s[i].second - f * r[j].second;
      if (!v.is_zero()) out.emplace_back(s[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline const GaussRat* find_in_row(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace detail

/// Exact rank of a sparse matrix over Q(i).
///
/// Pivots on the shortest remaining row and, inside it, on the column
/// touching the fewest rows, which keeps fill-in low on the boundary
/// matrices of chain complexes.
inline std::size_t sparse_rank(std::vector<SparseRow> rows, std::size_t ncols) {
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  std::set<std::pair<std::size_t, std::uint32_t>> by_len;
  std::vector<char> active(rows.size(), 0);
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    active[r] = 1;
    by_len.emplace(rows[r].size(), r);
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);
  }
  std::size_t rank = 0;
  while (!by_len.empty()) {
    auto [len, r] = *by_len.begin();
    by_len.erase(by_len.begin());
    active[r] = 0;
    const SparseRow pivot_row = std::move(rows[r]);
    rows[r].clear();

    std::uint32_t pc = pivot_row.front().first;
    std::size_t best = SIZE_MAX;
    for (const auto& [c, v] : pivot_row) {
      if (col_rows[c].size() < best) {
        best = col_rows[c].size();
        pc = c;
      }
    }
    const GaussRat pinv = detail::find_in_row(pivot_row, pc)->inverse();
    ++rank;

    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t s : targets) {
      if (!active[s]) continue;
      const GaussRat* sc = detail::find_in_row(rows[s], pc);
      if (sc == nullptr) continue;
      GaussRat f = *sc * pinv;
      by_len.erase({rows[s].size(), s});
      SparseRow updated = detail::axpy_row(rows[s], f, pivot_row);
      // register fill-in columns
      std::size_t a = 0;
      for (const auto& [c, v] : updated) {
        while (a < rows[s].size() && rows[s][a].first < c) ++a;
        if (a == rows[s].size() || rows[s][a].first != c) col_rows[c].push_back(s);
      }
      rows[s] = std::move(updated);
      if (rows[s].empty())
        active[s] = 0;
      else
        by_len.emplace(rows[s].size(), s);
    }
  }
  return rank;
}

/// Collapses a matrix whose entries all share one grade (or are zero) to
/// its Gaussian-rational coefficients. Throws GradeMismatch otherwise.
inline std::vector<SparseRow> grade_free_rows(const ExactMatrix& m) {
  std::optional<int> grade;
  std::vector<SparseRow> rows(m.rows());
  for (const auto& [ij, v] : m.entries()) {
    if (!v.is_single_grade()) throw GradeMismatch("matrix entry mixes several grades");
    int g = v.terms().begin()->first;
    if (grade && *grade != g) throw GradeMismatch("matrix entries live in different grades");
    grade = g;
    rows[ij.first].emplace_back(static_cast<std::uint32_t>(ij.second), v.terms().begin()->second);
  }
  return rows;  // std::map order keeps each row sorted by column
}

struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::vector<GaussRat>> kernel_basis;
};

/// Rank and a kernel basis of M (dense Gauss-Jordan on the coefficient
/// matrix; intended for small and medium matrices).
inline RankKernel rank_kernel(const ExactMatrix& m) {
  auto sparse = grade_free_rows(m);
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<GaussRat>> a(nr, std::vector<GaussRat>(nc));
  for (std::size_t i = 0; i < nr; ++i)
    for (auto& [c, v] : sparse[i]) a[i][c] = v;

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    std::size_t p = row;
    while (p < nr && a[p][col].is_zero()) ++p;
    if (p == nr) continue;
    std::swap(a[p], a[row]);
    GaussRat inv = a[row][col].inverse();
    for (std::size_t j = col; j < nc; ++j)
      if (!a[row][j].is_zero()) a[row][j] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      GaussRat f = a[i][col];
      for (std::size_t j = col; j < nc; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }

  RankKernel out;
  out.rank = pivot_cols.size();
  std::vector<char> is_pivot(nc, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRat> v(nc);
    v[free] = GaussRat(1);
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a[r][free];
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

/// Rank only; uses the sparse eliminator.
inline std::size_t exact_rank(const ExactMatrix& m) { return sparse_rank(grade_free_rows(m), m.cols()); }

/// Exact inverse of a square grade-0 matrix. Throws NotInvertible when singular.
inline ExactMatrix exact_inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto rows = grade_free_rows(m);
  if (!m.is_zero() && !m.entries().begin()->second.is_grade0())
    throw GradeMismatch("exact_inverse expects grade-0 entries");
  std::vector<std::vector<GaussRat>> a(n, std::vector<GaussRat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& [c, v] : rows[i]) a[i][c] = v;
    a[i][n + i] = GaussRat(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col].is_zero()) ++p;
    if (p == n) throw NotInvertible("singular matrix");
    std::swap(a[p], a[col]);
    GaussRat inv = a[col][col].inverse();
    for (auto& x : a[col]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      GaussRat f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, GradedScalar(a[i][n + j]));
  return out;
}

}  // namespace indexlab
