#pragma once

#include <functional>
#include <map>
#include <memory>

#include "indexlab/cyclic/algebra.hpp"
#include "indexlab/grid/grid.hpp"

namespace indexlab {

enum class Ground { field, lambda };

inline Ground parse_ground(const std::string& s) {
  if (s == "field") return Ground::field;
  if (s == "lambda") return Ground::lambda;
  throw BadParameter("ground ring must be 'field' or 'lambda'");
}

inline const char* to_string(Ground g) { return g == Ground::field ? "field" : "lambda"; }

using Tuple = std::vector<std::uint32_t>;
using Terms = std::map<Tuple, GaussRat>;

/// Tensor chains over the field or over Lambda = K + Ke.
///
/// The algebra is re-expressed in a Peirce-adapted basis, so each basis
/// element b lies in a sector e_l A e_r. Over Lambda a tuple b_0 (x) ... (x) b_k
/// is nonzero only when r(b_j) = l(b_{j+1}) and r(b_k) = l(b_0); such tuples
/// form a basis of the circular tensor power.
class ChainSpace {
 public:
  ChainSpace(const FinDimAlgebra& A, Ground ground) : original_(A), ground_(ground) {
    const Vec e = A.idempotent().value_or(A.zero());
    auto pd = peirce_basis(A, e);
    const std::size_t d = A.dim();
    ExactMatrix change(d, d);  // columns: adapted basis in original coordinates
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r)
        if (!pd.basis[c][r].is_zero()) change.set(r, c, GradedScalar(pd.basis[c][r]));
    standard_ = change == ExactMatrix::identity(d);
    to_adapted_ = standard_ ? change : exact_inverse(change);
    from_adapted_ = change;
    sector_ = pd.sector;

    std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) table[a][b] = to_sparse(to_adapted(A.mul(pd.basis[a], pd.basis[b])));
    adapted_ = FinDimAlgebra(A.name(), adapted_labels(A, pd), std::move(table), to_adapted(A.unit()),
                             A.idempotent() ? std::optional<Vec>(to_adapted(e)) : std::nullopt);
  }

  Ground ground() const { return ground_; }
  const FinDimAlgebra& algebra() const { return adapted_; }
  const FinDimAlgebra& original() const { return original_; }
  std::size_t dim() const { return adapted_.dim(); }
  std::pair<int, int> sector(std::uint32_t b) const { return sector_[b]; }
  bool standard_basis() const { return standard_; }

  Vec to_adapted(const Vec& x) const { return apply(to_adapted_, x); }
  Vec from_adapted(const Vec& x) const { return apply(from_adapted_, x); }

  /// Can b be followed by c in a circular tuple?
  bool joins(std::uint32_t b, std::uint32_t c) const {
    return ground_ == Ground::field || sector_[b].second == sector_[c].first;
  }

  bool admissible(const Tuple& t) const {
    if (ground_ == Ground::field) return true;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (!joins(t[j], t[(j + 1) % t.size()])) return false;
    return true;
  }

 private:
  static Vec apply(const ExactMatrix& m, const Vec& x) {
    Vec out(x.size());
    for (const auto& [ij, v] : m.entries()) out[ij.first] += v.coeff(0) * x[ij.second];
    return out;
  }

  static std::vector<std::string> adapted_labels(const FinDimAlgebra& A, const PeirceDecomposition& pd) {
    std::vector<std::string> out;
    for (std::size_t c = 0; c < pd.basis.size(); ++c) {
      const auto nz = to_sparse(pd.basis[c]);
      if (nz.size() == 1 && nz[0].second.is_one())
        out.push_back(A.labels()[nz[0].first]);
      else
        out.push_back("u" + std::to_string(c) + "[" + std::to_string(pd.sector[c].first) +
                      std::to_string(pd.sector[c].second) + "]");
    }
    return out;
  }

  FinDimAlgebra original_;
  FinDimAlgebra adapted_;
  Ground ground_;
  std::vector<std::pair<int, int>> sector_;
  ExactMatrix to_adapted_, from_adapted_;
  bool standard_ = true;
};

using ChainSpacePtr = std::shared_ptr<const ChainSpace>;

inline ChainSpacePtr make_chain_space(const FinDimAlgebra& A, Ground g) { return std::make_shared<ChainSpace>(A, g); }

/// Degree-k chain: linear combination of admissible (k+1)-tuples of adapted
/// basis indices. Inadmissible tuples are zero in the circular tensor power
/// and are dropped on insertion.
class LambdaChain {
 public:
  LambdaChain(ChainSpacePtr space, int degree) : space_(std::move(space)), degree_(degree) {}

  const ChainSpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Tuple& t, const GaussRat& c) {
    if (c.is_zero()) return;
    if (int(t.size()) != degree_ + 1) throw DegreeError("tuple length does not match the chain degree");
    if (!space_->admissible(t)) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GaussRat coeff(const Tuple& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  LambdaChain& operator+=(const LambdaChain& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  LambdaChain& operator-=(const LambdaChain& o) {
    check(o);
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  friend LambdaChain operator+(LambdaChain a, const LambdaChain& b) { return a += b; }
  friend LambdaChain operator-(LambdaChain a, const LambdaChain& b) { return a -= b; }
  friend LambdaChain operator*(const GaussRat& s, const LambdaChain& a) {
    LambdaChain out(a.space_, a.degree_);
    if (s.is_zero()) return out;
    for (const auto& [t, c] : a.terms_) out.terms_.emplace(t, s * c);
    return out;
  }
  bool operator==(const LambdaChain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_string() << ")";
      for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "(x)" : " ") << space_->algebra().labels()[t[j]];
    }
    return os.str();
  }

 private:
  void check(const LambdaChain& o) const {
    if (o.degree_ != degree_) throw DegreeError("adding chains of different degrees");
    if (o.space_ != space_) throw ShapeError("chains live in different chain spaces");
  }

  ChainSpacePtr space_;
  int degree_;
  Terms terms_;
};

/// Chain with a formal graded multiplier (powers of 2 pi i).
struct GradedChain {
  GradedScalar coefficient;
  LambdaChain chain;
};

/// f_0 (x) ... (x) f_k for factors in original coordinates.
inline LambdaChain tensor(const ChainSpacePtr& space, const std::vector<Vec>& factors) {
  if (factors.empty()) throw DegreeError("empty tensor");
  std::vector<SparseVec> fs;
  for (const auto& f : factors) fs.push_back(to_sparse(space->to_adapted(f)));
  // grow prefixes, pruning adjacent sector mismatches early
  std::vector<std::pair<Tuple, GaussRat>> partial{{Tuple{}, GaussRat(1)}};
  for (const auto& f : fs) {
    std::vector<std::pair<Tuple, GaussRat>> next;
    for (const auto& [t, c] : partial)
      for (const auto& [b, v] : f) {
        if (!t.empty() && !space->joins(t.back(), b)) continue;
        Tuple u = t;
        u.push_back(b);
        next.emplace_back(std::move(u), c * v);
      }
    partial = std::move(next);
  }
  LambdaChain out(space, int(factors.size()) - 1);
  for (const auto& [t, c] : partial) out.add(t, c);
  return out;
}

namespace detail {

// Adds sign * coeff * (t with positions r, r+1 merged) to out.
inline void merge_adjacent(const FinDimAlgebra& A, const Tuple& t, std::size_t r, const GaussRat& coeff,
                           LambdaChain& out) {
  for (const auto& [s, v] : A.product(t[r], t[r + 1])) {
    Tuple u;
    u.reserve(t.size() - 1);
    u.insert(u.end(), t.begin(), t.begin() + r);
    u.push_back(s);
    u.insert(u.end(), t.begin() + r + 2, t.end());
    out.add(u, coeff * v);
  }
}

inline void merge_wrap(const FinDimAlgebra& A, const Tuple& t, const GaussRat& coeff, LambdaChain& out) {
  for (const auto& [s, v] : A.product(t.back(), t.front())) {
    Tuple u;
    u.reserve(t.size() - 1);
    u.push_back(s);
    u.insert(u.end(), t.begin() + 1, t.end() - 1);
    out.add(u, coeff * v);
  }
}

}  // namespace detail

/// Bar boundary: sum_{r<k} (-1)^r (merge r, r+1). b'_0 = 0.
inline LambdaChain b_prime(const LambdaChain& c) {
  const int k = c.degree();
  LambdaChain out(c.space(), k - 1);
  if (k <= 0) return out;
  const auto& A = c.space()->algebra();
  for (const auto& [t, coeff] : c.terms())
    for (int r = 0; r < k; ++r) detail::merge_adjacent(A, t, r, r % 2 ? -coeff : coeff, out);
  return out;
}

/// Hochschild boundary: b' plus (-1)^k f_k f_0 (x) f_1 (x) ... (x) f_{k-1}.
inline LambdaChain hochschild_b(const LambdaChain& c) {
  const int k = c.degree();
  LambdaChain out = b_prime(c);
  if (k <= 0) return out;
  const auto& A = c.space()->algebra();
  for (const auto& [t, coeff] : c.terms()) detail::merge_wrap(A, t, k % 2 ? -coeff : coeff, out);
  return out;
}

/// T(f_0 (x) ... (x) f_k) = (-1)^k f_1 (x) ... (x) f_k (x) f_0.
inline LambdaChain cyclic_T(const LambdaChain& c) {
  const int k = c.degree();
  LambdaChain out(c.space(), k);
  for (const auto& [t, coeff] : c.terms()) {
    Tuple u(t.begin() + 1, t.end());
    u.push_back(t.front());
    out.add(u, k % 2 ? -coeff : coeff);
  }
  return out;
}

/// Averaging projector (1/(k+1)) sum_j T^j onto T-fixed chains.
inline LambdaChain project_cyclic(const LambdaChain& c) {
  const int k = c.degree();
  LambdaChain sum = c, cur = c;
  for (int j = 1; j <= k; ++j) {
    cur = cyclic_T(cur);
    sum += cur;
  }
  return GaussRat(Rational(1, k + 1)) * sum;
}

inline bool is_cyclic(const LambdaChain& c) { return cyclic_T(c) == c; }

/// Psi_q(p) = (2 pi i)^q q!/(q/2)! p^{(x)(q+1)} for an idempotent p, q even.
inline GradedChain chern_idempotent(const ChainSpacePtr& space, const Vec& p, int q) {
  if (q < 0 || q % 2) throw DegreeError("the idempotent Chern chain needs an even degree");
  if (!space->original().is_idempotent(p)) throw BadIdempotent("p^2 != p");
  GradedScalar coeff(GaussRat(factorial(q) / factorial(q / 2)), q);
  return {coeff, tensor(space, std::vector<Vec>(q + 1, p))};
}

/// Ch_q(R) = (2 pi i)^q (2q)!/q! R^{(x)(2q+1)} with R = P - e, over the
/// ground ring generated by e.
inline GradedChain chern_residue(const FinDimAlgebra& A, const Vec& P, const Vec& e, int q,
                                 Ground ground = Ground::lambda) {
  if (q < 0) throw DegreeError("negative Chern degree");
  if (!A.is_idempotent(P)) throw BadIdempotent("P^2 != P");
  if (!A.is_idempotent(e)) throw BadIdempotent("e^2 != e");
  auto space = make_chain_space(A.with_idempotent(e), ground);
  Vec R = P;
  for (std::size_t i = 0; i < R.size(); ++i) R[i] -= e[i];
  GradedScalar coeff(GaussRat(factorial(2 * q) / factorial(q)), q);
  return {coeff, tensor(space, std::vector<Vec>(2 * q + 1, R))};
}

struct SeparabilityReport {
  bool mu_s_one = false;   // mu(s(1)) = 1
  bool mu_s_e = false;     // mu(s(e)) = e
  bool left_linear = false;   // x s(y) = s(xy)
  bool right_linear = false;  // s(x) y = s(xy)

  bool all() const { return mu_s_one && mu_s_e && left_linear && right_linear; }
  std::vector<std::pair<std::string, bool>> entries() const {
    return {{"mu(s(1))=1", mu_s_one}, {"mu(s(e))=e", mu_s_e}, {"x.s(y)=s(xy)", left_linear}, {"s(x).y=s(xy)", right_linear}};
  }
};

/// Splitting s: Lambda -> Lambda (x)_K Lambda, s(1) = e(x)e + (1-e)(x)(1-e),
/// s(e) = e(x)e, checked on the basis {1, e}.
inline SeparabilityReport separability_check() {
  const FinDimAlgebra L = lambda_algebra();
  using Tensor = std::vector<std::vector<GaussRat>>;  // coefficients of b_i (x) b_j
  const Vec one = L.unit(), e = *L.idempotent();
  Vec f = one;
  for (std::size_t i = 0; i < 2; ++i) f[i] -= e[i];
  auto outer = [](const Vec& x, const Vec& y) {
    Tensor t(2, std::vector<GaussRat>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t[i][j] = x[i] * y[j];
    return t;
  };
  auto add = [](Tensor a, const Tensor& b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a[i][j] += b[i][j];
    return a;
  };
  auto s = [&](const Vec& x) {  // linear extension from the basis {1, e}
    Tensor s1 = add(outer(e, e), outer(f, f)), se = outer(e, e);
    Tensor out(2, std::vector<GaussRat>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = x[0] * s1[i][j] + x[1] * se[i][j];
    return out;
  };
  auto mu = [&](const Tensor& t) {
    Vec out(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Vec p = L.mul(L.basis_vector(i), L.basis_vector(j));
        for (int k = 0; k < 2; ++k) out[k] += t[i][j] * p[k];
      }
    return out;
  };
  auto act = [&](const Vec& x, const Tensor& t, bool left) {
    Tensor out(2, std::vector<GaussRat>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (t[i][j].is_zero()) continue;
        Vec moved = left ? L.mul(x, L.basis_vector(i)) : L.mul(L.basis_vector(j), x);
        for (int k = 0; k < 2; ++k) {
          if (left)
            out[k][j] += t[i][j] * moved[k];
          else
            out[i][k] += t[i][j] * moved[k];
        }
      }
    return out;
  };
  SeparabilityReport rep;
  rep.mu_s_one = mu(s(one)) == one;
  rep.mu_s_e = mu(s(e)) == e;
  rep.left_linear = rep.right_linear = true;
  for (const Vec& x : {one, e})
    for (const Vec& y : {one, e}) {
      rep.left_linear = rep.left_linear && act(x, s(y), true) == s(L.mul(x, y));
      rep.right_linear = rep.right_linear && act(y, s(x), false) == s(L.mul(x, y));
    }
  return rep;
}

/// Union of the supports of all factors of all terms, for chains over the
/// matrix algebra M_N whose units E_ij sit at grid points (i, j).
inline SupportRelation chain_support(const LambdaChain& c) {
  const auto& sp = *c.space();
  if (!sp.standard_basis()) throw UnsupportedSymbol("chain support needs the matrix-unit basis");
  const auto n = std::size_t(std::lround(std::sqrt(double(sp.dim()))));
  if (n * n != sp.dim()) throw ShapeError("chain support needs a matrix algebra");
  SupportRelation r;
  for (const auto& [t, coeff] : c.terms())
    for (auto b : t) r.insert(b / n, b % n);
  return r;
}

}  // namespace indexlab
