#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "indexlab/errors.hpp"

namespace indexlab {

enum class GridKind { circle, torus };

inline GridKind parse_grid_kind(const std::string& s) {
  if (s == "circle") return GridKind::circle;
  if (s == "torus") return GridKind::torus;
  throw BadParameter("unknown grid kind '" + s + "'");
}

/// Periodic lattice Z_N or Z_N x Z_N. Distances count wrap-around lattice
/// steps (Chebyshev on the torus); `distance` rescales by the spacing.
class Grid {
 public:
  Grid(GridKind kind, long N) : kind_(kind), N_(N) {
    if (N < 2) throw BadParameter("grid needs N >= 2");
  }

  GridKind kind() const { return kind_; }
  long N() const { return N_; }
  int dim() const { return kind_ == GridKind::circle ? 1 : 2; }
  std::size_t size() const { return kind_ == GridKind::circle ? N_ : N_ * N_; }
  double spacing() const { return 2 * std::numbers::pi / double(N_); }

  std::pair<long, long> coords(std::size_t p) const {
    if (kind_ == GridKind::circle) return {long(p), 0};
    return {long(p) % N_, long(p) / N_};
  }
  std::size_t index(long x, long y = 0) const {
    x = wrap(x);
    if (kind_ == GridKind::circle) return std::size_t(x);
    return std::size_t(wrap(y) * N_ + x);
  }

  long wrap(long x) const { return ((x % N_) + N_) % N_; }

  /// Signed shortest displacement in (-N/2, N/2].
  long displacement(long from, long to) const {
    long d = wrap(to - from);
    return d > N_ / 2 ? d - N_ : d;
  }

  long steps(std::size_t p, std::size_t q) const {
    auto [px, py] = coords(p);
    auto [qx, qy] = coords(q);
    long dx = std::labs(displacement(px, qx));
    long dy = std::labs(displacement(py, qy));
    return std::max(dx, dy);
  }

  double distance(std::size_t p, std::size_t q) const { return double(steps(p, q)) * spacing(); }

  long diameter() const { return N_ / 2; }

 private:
  GridKind kind_;
  long N_;
};

inline Grid make_grid(GridKind kind, long N) { return Grid(kind, N); }

/// Set of grid-point pairs (x, y).
class SupportRelation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  SupportRelation() = default;
  explicit SupportRelation(std::set<Pair> pairs) : pairs_(std::move(pairs)) {}

  static SupportRelation band(const Grid& g, long w) {
    SupportRelation r;
    for (std::size_t p = 0; p < g.size(); ++p)
      for (std::size_t q = 0; q < g.size(); ++q)
        if (g.steps(p, q) <= w) r.pairs_.insert({p, q});
    return r;
  }

  const std::set<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool contains(std::size_t p, std::size_t q) const { return pairs_.count({p, q}) > 0; }
  void insert(std::size_t p, std::size_t q) { pairs_.insert({p, q}); }

  bool subset_of(const SupportRelation& o) const {
    return std::includes(o.pairs_.begin(), o.pairs_.end(), pairs_.begin(), pairs_.end());
  }

  SupportRelation symmetric_closure() const {
    SupportRelation r = *this;
    for (auto [p, q] : pairs_) r.pairs_.insert({q, p});
    return r;
  }

  /// U o V = {(x, z) : (x, y) in U, (y, z) in V}.
  SupportRelation compose(const SupportRelation& v) const {
    SupportRelation r;
    for (auto [x, y] : pairs_) {
      auto it = v.pairs_.lower_bound({y, 0});
      for (; it != v.pairs_.end() && it->first == y; ++it) r.pairs_.insert({x, it->second});
    }
    return r;
  }

  /// Band radius: largest step distance occurring in the relation.
  long width(const Grid& g) const {
    long w = 0;
    for (auto [p, q] : pairs_) w = std::max(w, g.steps(p, q));
    return w;
  }

  bool operator==(const SupportRelation&) const = default;

 private:
  std::set<Pair> pairs_;
};

}  // namespace indexlab
