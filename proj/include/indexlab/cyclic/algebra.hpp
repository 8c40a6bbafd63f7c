#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "indexlab/exact/rank_kernel.hpp"

namespace indexlab {

using Vec = std::vector<GaussRat>;
using SparseVec = std::vector<std::pair<std::uint32_t, GaussRat>>;

/// Finite-dimensional unital algebra given by structure constants
/// b_i b_j = sum_k c_ij^k b_k.
class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  FinDimAlgebra(std::string name, std::vector<std::string> labels, std::vector<std::vector<SparseVec>> table, Vec unit,
                std::optional<Vec> idempotent = std::nullopt)
      : name_(std::move(name)),
        labels_(std::move(labels)),
        table_(std::move(table)),
        unit_(std::move(unit)),
        idempotent_(std::move(idempotent)) {
    const std::size_t d = labels_.size();
    if (table_.size() != d || unit_.size() != d) throw ShapeError("structure constants do not match the basis");
    for (const auto& row : table_)
      if (row.size() != d) throw ShapeError("structure constants do not match the basis");
    if (idempotent_ && idempotent_->size() != d) throw ShapeError("idempotent has the wrong length");
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const Vec& unit() const { return unit_; }
  const std::optional<Vec>& idempotent() const { return idempotent_; }

  FinDimAlgebra with_idempotent(std::optional<Vec> e) const {
    FinDimAlgebra a = *this;
    a.idempotent_ = std::move(e);
    return a;
  }

  Vec zero() const { return Vec(dim()); }
  Vec basis_vector(std::size_t i) const {
    Vec v(dim());
    v[i] = GaussRat(1);
    return v;
  }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        const GaussRat xy = x[i] * y[j];
        for (const auto& [k, c] : table_[i][j]) out[k] += xy * c;
      }
    }
    return out;
  }

  bool is_idempotent(const Vec& p) const { return mul(p, p) == p; }

  /// Associativity on all basis triples, two-sided unit, e^2 = e.
  void validate() const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const Vec bij = from_sparse(table_[i][j]);
        for (std::size_t k = 0; k < d; ++k) {
          if (mul(bij, basis_vector(k)) != mul(basis_vector(i), from_sparse(table_[j][k])))
            throw AlgebraViolation("structure constants are not associative at (" + labels_[i] + ", " + labels_[j] +
                                   ", " + labels_[k] + ")");
        }
      }
    for (std::size_t i = 0; i < d; ++i) {
      if (mul(unit_, basis_vector(i)) != basis_vector(i) || mul(basis_vector(i), unit_) != basis_vector(i))
        throw AlgebraViolation("unit is not two-sided neutral on " + labels_[i]);
    }
    if (idempotent_ && !is_idempotent(*idempotent_)) throw BadIdempotent("distinguished element is not idempotent");
  }

  Vec from_sparse(const SparseVec& s) const {
    Vec v(dim());
    for (const auto& [k, c] : s) v[k] += c;
    return v;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVec>> table_;
  Vec unit_;
  std::optional<Vec> idempotent_;
};

inline SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(std::uint32_t(i), v[i]);
  return s;
}

inline FinDimAlgebra ground_field() {
  return FinDimAlgebra("field", {"1"}, {{SparseVec{{0, GaussRat(1)}}}}, Vec{GaussRat(1)});
}

/// M_n with matrix units E_ij at index i * n + j; e = E_00 unless disabled.
inline FinDimAlgebra matrix_algebra(std::size_t n, bool with_e00 = true) {
  if (n == 0) throw BadParameter("matrix algebra of size 0");
  const std::size_t d = n * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i) + std::to_string(j));
  std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) table[i * n + j][j * n + l] = {{std::uint32_t(i * n + l), GaussRat(1)}};
  Vec unit(d);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = GaussRat(1);
  std::optional<Vec> e;
  if (with_e00) {
    e = Vec(d);
    (*e)[0] = GaussRat(1);
  }
  return FinDimAlgebra("M" + std::to_string(n), std::move(labels), std::move(table), std::move(unit), std::move(e));
}

/// Lambda = K + K e with basis {1, e}.
inline FinDimAlgebra lambda_algebra() {
  std::vector<std::vector<SparseVec>> table(2, std::vector<SparseVec>(2));
  table[0][0] = {{0, GaussRat(1)}};
  table[0][1] = {{1, GaussRat(1)}};
  table[1][0] = {{1, GaussRat(1)}};
  table[1][1] = {{1, GaussRat(1)}};
  return FinDimAlgebra("lambda", {"1", "e"}, std::move(table), Vec{GaussRat(1), GaussRat(0)},
                       Vec{GaussRat(0), GaussRat(1)});
}

/// K^N with orthogonal idempotents d_0, ..., d_{N-1}.
inline FinDimAlgebra diagonal_algebra(std::size_t N) {
  std::vector<std::string> labels;
  std::vector<std::vector<SparseVec>> table(N, std::vector<SparseVec>(N));
  for (std::size_t i = 0; i < N; ++i) {
    labels.push_back("d" + std::to_string(i));
    table[i][i] = {{std::uint32_t(i), GaussRat(1)}};
  }
  return FinDimAlgebra("diag" + std::to_string(N), std::move(labels), std::move(table), Vec(N, GaussRat(1)));
}

namespace detail {

inline GaussRat json_scalar(const nlohmann::json& j) {
  if (j.is_number_integer()) return GaussRat(Rational(j.get<long>()));
  if (j.is_string()) return parse_gauss(j.get<std::string>());
  throw ParseError("scalars must be integers or strings like \"1/2\" or \"(1+2i)\"");
}

inline Vec json_vector(const nlohmann::json& j, std::size_t d, const char* what) {
  if (!j.is_array() || j.size() != d) throw ParseError(std::string(what) + " must be an array of length " + std::to_string(d));
  Vec v;
  for (const auto& x : j) v.push_back(json_scalar(x));
  return v;
}

}  // namespace detail

/// Reads {"name", "labels": [...], "products": [[i, j, k, c], ...],
/// "unit": [...], "idempotent": [...]} and validates the axioms.
inline FinDimAlgebra algebra_from_json(const nlohmann::json& j) {
  try {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const std::size_t d = labels.size();
    if (d == 0) throw ParseError("algebra needs at least one basis element");
    std::vector<std::vector<Vec>> dense(d, std::vector<Vec>(d, Vec(d)));
    for (const auto& t : j.at("products")) {
      if (!t.is_array() || t.size() != 4) throw ParseError("product entries are [i, j, k, coefficient]");
      const auto i = t[0].get<std::size_t>(), jj = t[1].get<std::size_t>(), k = t[2].get<std::size_t>();
      if (i >= d || jj >= d || k >= d) throw ParseError("product index out of range");
      dense[i][jj][k] += detail::json_scalar(t[3]);
    }
    std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t jj = 0; jj < d; ++jj) table[i][jj] = to_sparse(dense[i][jj]);
    std::optional<Vec> e;
    if (j.contains("idempotent")) e = detail::json_vector(j.at("idempotent"), d, "idempotent");
    FinDimAlgebra a(j.value("name", std::string("custom")), labels, std::move(table),
                    detail::json_vector(j.at("unit"), d, "unit"), std::move(e));
    a.validate();
    return a;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("algebra description: ") + ex.what());
  }
}

inline FinDimAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open algebra file " + path);
  try {
    return algebra_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("algebra file: ") + ex.what());
  }
}

/// Builtin names: field, lambda, M<n>, diag<n>; anything else is read as a JSON file.
inline FinDimAlgebra algebra_by_name(const std::string& name) {
  if (name == "field") return ground_field();
  if (name == "lambda") return lambda_algebra();
  auto numeric_suffix = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
    return std::stoul(rest);
  };
  if (auto n = numeric_suffix("M")) return matrix_algebra(*n);
  if (auto n = numeric_suffix("diag")) return diagonal_algebra(*n);
  return load_algebra_file(name);
}

/// Decomposition A = sum e_i A e_j (e_1 = e, e_0 = 1 - e) with a basis of
/// each sector. Basis vectors are kept in the order of the original basis
/// element they came from, so an already adapted basis is left unchanged.
struct PeirceDecomposition {
  std::vector<Vec> basis;                    // original coordinates
  std::vector<std::pair<int, int>> sector;   // (i, j) for each basis vector
  std::size_t dims[2][2] = {{0, 0}, {0, 0}};
};

inline PeirceDecomposition peirce_basis(const FinDimAlgebra& A, const Vec& e) {
  if (e.size() != A.dim()) throw ShapeError("idempotent has the wrong length");
  if (!A.is_idempotent(e)) throw BadIdempotent("e^2 != e");
  Vec f = A.unit();
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= e[i];
  const Vec* side[2] = {&f, &e};

  struct Candidate {
    std::size_t origin;
    int i, j;
    Vec v;
  };
  std::vector<Candidate> picked;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::vector<SparseRow> echelon;
      for (std::size_t k = 0; k < A.dim(); ++k) {
        Vec v = A.mul(A.mul(*side[i], A.basis_vector(k)), *side[j]);
        SparseRow row;
        for (std::size_t c = 0; c < v.size(); ++c)
          if (!v[c].is_zero()) row.emplace_back(std::uint32_t(c), v[c]);
        if (row.empty()) continue;
        echelon.push_back(row);
        if (sparse_rank(echelon, A.dim()) < echelon.size()) {
          echelon.pop_back();
          continue;
        }
        picked.push_back({k, i, j, std::move(v)});
      }
    }
  if (picked.size() != A.dim()) throw AlgebraViolation("Peirce sectors do not span the algebra");
  std::stable_sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) { return a.origin < b.origin; });
  PeirceDecomposition out;
  for (auto& c : picked) {
    out.basis.push_back(std::move(c.v));
    out.sector.emplace_back(c.i, c.j);
    ++out.dims[c.i][c.j];
  }
  return out;
}

}  // namespace indexlab
