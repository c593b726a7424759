#pragma once

// Exact Gaussian elimination and the generic affine solver behind every
// "find x with L(x) = y" question in the library.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/field.hpp"
#include "involquat/matrix.hpp"

namespace involquat {

template <FieldScalar K>
struct RowEchelon {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Pivots are taken left to right, so the pivot of
/// each row is the lowest usable column index.
template <FieldScalar K>
RowEchelon<K> rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    const K inv = m(row, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const K factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <FieldScalar K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).pivots.size();
}

/// dim_F xA for x in A = M_n(F): xA is the set of matrices with columns in
/// col(x), so its dimension is n * rank(x).
struct IdealDimension {
  std::size_t rank;
  std::size_t ideal_dim;
};

template <FieldScalar K>
IdealDimension rank_right_ideal_dim(const Matrix<K>& x) {
  const std::size_t r = rank(x);
  return {r, r * x.rows()};
}

/// One solution of A z = b, free variables set to zero; nullopt if
/// inconsistent.
template <FieldScalar K>
std::optional<std::vector<K>> solve_system(const Matrix<K>& a, const std::vector<K>& b) {
  require(b.size() == a.rows(), ErrorCode::SizeMismatch, "right-hand side length");
  const auto& field = a.field();
  Matrix<K> aug = hcat(a, Matrix<K>::column(field, b));
  const auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<K> z(a.cols(), field.zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) z[e.pivots[r]] = e.reduced(r, a.cols());
  return z;
}

/// Basis of the null space of m, one vector per free column (that column set
/// to one, the other free columns zero).
template <FieldScalar K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m) {
  const auto& field = m.field();
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <FieldScalar K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  require(m.is_square(), ErrorCode::SizeMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  const auto e = rref(hcat(m, Matrix<K>::identity(m.field(), n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

template <FieldScalar K>
Matrix<K> inverse_or_throw(const Matrix<K>& m, const char* what = "matrix is singular") {
  auto inv = inverse(m);
  if (!inv) fail(ErrorCode::DivisionByZero, what);
  return *std::move(inv);
}

/// Columns of m forming a basis of its column space (the pivot columns).
template <FieldScalar K>
Matrix<K> column_space_basis(const Matrix<K>& m) {
  const auto e = rref(m);
  Matrix<K> b(m.field(), m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, k) = m(i, e.pivots[k]);
  return b;
}

/// Row-major flattening of a matrix into a vector of scalars.
template <FieldScalar K>
std::vector<K> flatten(const Matrix<K>& m) {
  return m.entries();
}

template <FieldScalar K>
Matrix<K> unflatten(const FieldOf<K>& field, std::size_t n, const std::vector<K>& v) {
  Matrix<K> m(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

/// Coordinates with respect to a fixed finite family of matrices. Holds k
/// pivot rows of the stacked family so each query costs one k x k solve plus
/// a membership check.
template <FieldScalar K>
class SpanBasis {
 public:
  SpanBasis(const FieldOf<K>& field, std::vector<Matrix<K>> family) : field_(&field), family_(std::move(family)) {
    require(!family_.empty(), ErrorCode::SizeMismatch, "empty family");
    const std::size_t len = family_.front().rows() * family_.front().cols();
    Matrix<K> stacked(field, family_.size(), len);  // row i = flattened family[i]
    for (std::size_t i = 0; i < family_.size(); ++i) {
      const auto& e = family_[i].entries();
      require(e.size() == len, ErrorCode::SizeMismatch, "family shape");
      for (std::size_t j = 0; j < len; ++j) stacked(i, j) = e[j];
    }
    auto ech = rref(stacked);
    independent_ = ech.pivots.size() == family_.size();
    rank_ = ech.pivots.size();
    if (independent_) {
      positions_ = ech.pivots;
      Matrix<K> square(field, rank_, rank_);  // square(r, i) = family[i][positions[r]]
      for (std::size_t r = 0; r < rank_; ++r)
        for (std::size_t i = 0; i < rank_; ++i) square(r, i) = family_[i].entries()[positions_[r]];
      solver_ = inverse_or_throw(square);
    }
  }

  bool independent() const { return independent_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Matrix<K>>& family() const { return family_; }

  /// Coordinates c with sum c_i family[i] == x, nullopt if x is outside the
  /// span. Requires an independent family.
  std::optional<std::vector<K>> coordinates(const Matrix<K>& x) const {
    require(independent_, ErrorCode::PreconditionViolated, "family is dependent");
    std::vector<K> c(rank_, field_->zero());
    const auto& xe = x.entries();
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t r = 0; r < rank_; ++r) c[i] += solver_(i, r) * xe[positions_[r]];
    if (!(combine(c) == x)) return std::nullopt;
    return c;
  }

  bool contains(const Matrix<K>& x) const { return coordinates(x).has_value(); }

  Matrix<K> combine(const std::vector<K>& c) const {
    Matrix<K> s(*field_, family_.front().rows(), family_.front().cols());
    for (std::size_t i = 0; i < family_.size() && i < c.size(); ++i)
      if (!c[i].is_zero()) s += c[i] * family_[i];
    return s;
  }

 private:
  const FieldOf<K>* field_;
  std::vector<Matrix<K>> family_;
  bool independent_ = false;
  std::size_t rank_ = 0;
  std::vector<std::size_t> positions_;
  Matrix<K> solver_{*field_, 0, 0};
};

/// Scalars over which an additive map is treated as linear: the centre F, or
/// the prime subfield (needed for maps that are only semilinear over F, such
/// as unitary involutions).
enum class Scalars { center, prime_subfield };

/// An additive map from K^num_unknowns to K^out_len, materialised as a
/// matrix over the chosen scalars.
template <FieldScalar K>
class AdditiveMap {
 public:
  using Fn = std::function<std::vector<K>(const std::vector<K>&)>;

  AdditiveMap(const FieldOf<K>& field, std::size_t num_unknowns, std::size_t out_len, Fn fn, Scalars scalars)
      : field_(&field),
        num_unknowns_(num_unknowns),
        out_len_(out_len),
        scalars_(scalars),
        basis_(scalars == Scalars::center ? std::vector<K>{field.one()} : field.prime_basis()),
        matrix_(scalars == Scalars::center ? field : field.prime_subfield(), out_len * degree(), num_unknowns * degree()) {
    std::vector<K> z(num_unknowns, field.zero());
    for (std::size_t i = 0; i < num_unknowns; ++i) {
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        z[i] = basis_[b];
        const std::vector<K> image = fn(z);
        require(image.size() == out_len, ErrorCode::SizeMismatch, "additive map output length");
        const auto col = lower(image);
        for (std::size_t r = 0; r < col.size(); ++r) matrix_(r, i * degree() + b) = col[r];
      }
      z[i] = field.zero();
    }
  }

  std::size_t degree() const { return basis_.size(); }
  const Matrix<K>& matrix() const { return matrix_; }

  /// One z with fn(z) = rhs (deterministic: free coordinates zero).
  std::optional<std::vector<K>> solve(const std::vector<K>& rhs) const {
    auto sol = solve_system(matrix_, lower(rhs));
    if (!sol) return std::nullopt;
    return lift(*sol, num_unknowns_);
  }

  /// Basis of the kernel over the chosen scalars.
  std::vector<std::vector<K>> kernel() const {
    std::vector<std::vector<K>> out;
    for (const auto& v : kernel_basis(matrix_)) out.push_back(lift(v, num_unknowns_));
    return out;
  }

  /// Basis of the image over the chosen scalars, as reduced rows (echelon
  /// form of the image vectors).
  std::vector<std::vector<K>> image() const {
    const auto e = rref(matrix_.transpose());
    std::vector<std::vector<K>> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(lift(e.reduced.row_vector(r), out_len_));
    return out;
  }

 private:
  std::vector<K> lower(const std::vector<K>& v) const {
    if (scalars_ == Scalars::center) return v;
    std::vector<K> out;
    out.reserve(v.size() * degree());
    for (const auto& x : v)
      for (auto& c : field_->prime_coordinates(x)) out.push_back(std::move(c));
    return out;
  }

  std::vector<K> lift(const std::vector<K>& v, std::size_t len) const {
    if (scalars_ == Scalars::center) return v;
    std::vector<K> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
      out.push_back(field_->from_prime_coordinates(
          std::vector<K>(v.begin() + static_cast<std::ptrdiff_t>(i * degree()),
                         v.begin() + static_cast<std::ptrdiff_t>((i + 1) * degree()))));
    return out;
  }

  const FieldOf<K>* field_;
  std::size_t num_unknowns_;
  std::size_t out_len_;
  Scalars scalars_;
  std::vector<K> basis_;
  Matrix<K> matrix_;
};

/// A constraint L(X) = rhs on an n x n matrix unknown X, L additive.
template <FieldScalar K>
struct AffineConstraint {
  std::function<Matrix<K>(const Matrix<K>&)> linear;
  Matrix<K> rhs;
};

/// Solves a list of affine matrix equations in one n x n unknown, treating
/// the n^2 entries as field unknowns. Deterministic: free variables are 0 and
/// pivots use the lowest usable column.
template <FieldScalar K>
std::optional<Matrix<K>> solve_linear(const FieldOf<K>& field, std::size_t n,
                                      const std::vector<AffineConstraint<K>>& constraints,
                                      Scalars scalars = Scalars::center) {
  const std::size_t nn = n * n;
  auto fn = [&](const std::vector<K>& z) {
    const Matrix<K> x = unflatten<K>(field, n, z);
    std::vector<K> out;
    out.reserve(nn * constraints.size());
    for (const auto& c : constraints) {
      const auto img = c.linear(x);
      out.insert(out.end(), img.entries().begin(), img.entries().end());
    }
    return out;
  };
  std::size_t out_len = 0;
  std::vector<K> rhs;
  for (const auto& c : constraints) {
    out_len += c.rhs.rows() * c.rhs.cols();
    rhs.insert(rhs.end(), c.rhs.entries().begin(), c.rhs.entries().end());
  }
  AdditiveMap<K> map(field, nn, out_len, fn, scalars);
  auto sol = map.solve(rhs);
  if (!sol) return std::nullopt;
  return unflatten<K>(field, n, *sol);
}

}  // namespace involquat
