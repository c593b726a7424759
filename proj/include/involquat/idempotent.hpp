#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/involution.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"

namespace involquat {

enum class IdempotentClass { not_idempotent, plain, metabolic, hyperbolic };

inline std::string_view to_string(IdempotentClass c) {
  switch (c) {
    case IdempotentClass::not_idempotent: return "not-idempotent";
    case IdempotentClass::plain: return "plain";
    case IdempotentClass::metabolic: return "metabolic";
    case IdempotentClass::hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// Everything computed while classifying e, so callers can assert on the
/// intermediate witnesses.
template <FieldScalar K>
struct IdempotentReport {
  bool is_idempotent = false;
  std::size_t dim_eA = 0;
  std::size_t dim_A = 0;
  bool sigma_e_e_zero = false;      // sigma(e) e == 0
  bool alt_metabolic_zero = false;  // (1 - e)(1 - sigma(e)) == 0
  bool sigma_e_is_complement = false;  // sigma(e) == 1 - e
  Matrix<K> e_sigma_e;
  std::size_t dim_e_sigma_e_A = 0;
  IdempotentClass cls = IdempotentClass::not_idempotent;

  bool metabolic() const { return cls == IdempotentClass::metabolic || cls == IdempotentClass::hyperbolic; }
  bool hyperbolic() const { return cls == IdempotentClass::hyperbolic; }
};

template <FieldScalar K>
IdempotentReport<K> classify_idempotent(const InvolutionAlgebra<K>& alg, const Matrix<K>& e) {
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  const auto one = Matrix<K>::identity(field, n);
  const auto se = alg.apply(e);
  IdempotentReport<K> r{.e_sigma_e = e * se};
  r.is_idempotent = e * e == e;
  r.dim_A = n * n;
  r.dim_eA = rank_right_ideal_dim(e).ideal_dim;
  r.sigma_e_e_zero = (se * e).is_zero();
  r.alt_metabolic_zero = ((one - e) * (one - se)).is_zero();
  r.sigma_e_is_complement = se == one - e;
  r.dim_e_sigma_e_A = rank_right_ideal_dim(r.e_sigma_e).ideal_dim;
  if (!r.is_idempotent) return r;
  const bool half = 2 * r.dim_eA == r.dim_A;
  if (r.sigma_e_is_complement) {
    ensure(half && r.sigma_e_e_zero, "hyperbolic idempotent must be metabolic");
    r.cls = IdempotentClass::hyperbolic;
  } else if (half && r.sigma_e_e_zero) {
    r.cls = IdempotentClass::metabolic;
  } else {
    r.cls = IdempotentClass::plain;
  }
  if (r.metabolic()) ensure(r.hyperbolic() == r.e_sigma_e.is_zero(), "metabolic e: hyperbolic iff e sigma(e) = 0");
  return r;
}

/// The right ideal I^perp = { z : sigma(z) x = 0 } of I = xA, given as the
/// subspace W with I^perp = { z : col(z) in W }.
template <FieldScalar K>
struct OrthComplement {
  Matrix<K> columns;  // basis of W as columns (n x dim W)
  std::size_t ideal_dim;
};

template <FieldScalar K>
OrthComplement<K> orth_complement_ideal(const InvolutionAlgebra<K>& alg, const Matrix<K>& x) {
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  // sigma(z) x = 0  <=>  (G x)^dagger z = 0 with G = g^{-1}
  const Matrix<K> gx = alg.gram() * x;
  const Matrix<K> lhs = alg.is_unitary() ? gx.conj_transpose() : gx.transpose();
  const auto ker = kernel_basis(lhs);
  Matrix<K> w = Matrix<K>::from_columns(field, n, ker);
  for (const auto& v : ker) {
    Matrix<K> z(field, n, n);
    for (std::size_t i = 0; i < n; ++i) z(i, 0) = v[i];
    ensure((alg.apply(z) * x).is_zero(), "orthogonal complement membership");
  }
  OrthComplement<K> out{std::move(w), n * ker.size()};
  ensure(out.ideal_dim + rank_right_ideal_dim(x).ideal_dim == n * n, "dim I + dim I^perp = dim A");
  return out;
}

/// Idempotent e with eA = xA: the projection onto col(x) along the span of
/// the standard basis vectors at the non-pivot positions of the echelonised
/// column space.
template <FieldScalar K>
Matrix<K> idempotent_generator(const Matrix<K>& x) {
  require(x.is_square(), ErrorCode::SizeMismatch, "square matrix required");
  const auto& field = x.field();
  const std::size_t n = x.rows();
  const Matrix<K> basis = column_space_basis(x);
  const std::size_t r = basis.cols();
  const auto ech = rref(basis.transpose());
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> columns;
  for (std::size_t j = 0; j < r; ++j) columns.push_back(basis.column_vector(j));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_pivot[i]) continue;
    std::vector<K> v(n, field.zero());
    v[i] = field.one();
    columns.push_back(std::move(v));
  }
  const Matrix<K> c = Matrix<K>::from_columns(field, n, columns);
  const Matrix<K> d = block_diagonal<K>(field, {Matrix<K>::identity(field, r), Matrix<K>::zero(field, n - r)});
  Matrix<K> e = c * d * inverse_or_throw(c, "complement is not complementary");
  ensure(e * e == e, "generator is idempotent");
  ensure(e * x == x && rank(e) == r, "generator spans xA");
  return e;
}

/// e' = e - e x sigma(e) with x + sigma(x) = 1; hyperbolic for metabolic e.
template <FieldScalar K>
Matrix<K> hyperbolize_metabolic(const InvolutionAlgebra<K>& alg, const Matrix<K>& e) {
  require(classify_idempotent(alg, e).metabolic(), ErrorCode::NotMetabolic, "e is not metabolic");
  const auto half = find_half_unit(alg);
  if (!half) fail(ErrorCode::ExceptionalCase, "char 2 orthogonal: no x with x + sigma(x) = 1");
  Matrix<K> h = e - e * *half * alg.apply(e);
  ensure(classify_idempotent(alg, h).hyperbolic(), "hyperbolized idempotent is hyperbolic");
  return h;
}

/// e' = e - e x sigma(e) for arbitrary x: again metabolic, with e'A = eA.
template <FieldScalar K>
Matrix<K> twist_metabolic(const InvolutionAlgebra<K>& alg, const Matrix<K>& e, const Matrix<K>& x) {
  require(classify_idempotent(alg, e).metabolic(), ErrorCode::NotMetabolic, "e is not metabolic");
  Matrix<K> t = e - e * x * alg.apply(e);
  ensure(classify_idempotent(alg, t).metabolic(), "twisted idempotent is metabolic");
  ensure(rank(hcat(e, t)) == rank(e) && rank(t) == rank(e), "twist preserves eA");
  return t;
}

}  // namespace involquat
