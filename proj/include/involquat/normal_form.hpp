#pragma once

#include <cstddef>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"

namespace involquat {

/// Jordan block J_2(a) = [[a, 1], [0, a]].
template <FieldScalar K>
Matrix<K> jordan2(const K& a) {
  Matrix<K> j(a.field(), 2, 2);
  j(0, 0) = a;
  j(1, 1) = a;
  j(0, 1) = a.field().one();
  return j;
}

/// Certificate P with P * x * P^{-1} == canonical.
///
/// Square-central case: canonical = diag(lambda I_m, -lambda I_{n'}, J_2(lambda)^k)
/// with m = plus, n' = minus, k = jordan_blocks. Idempotent case:
/// canonical = diag(I_m, 0) with m = plus.
template <FieldScalar K>
struct NormalFormCertificate {
  Matrix<K> change_of_basis;  // P
  Matrix<K> inverse;          // P^{-1}; its columns are the adapted basis
  Matrix<K> canonical;
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t jordan_blocks = 0;
  K lambda;

  /// Re-checks the conjugation identity entry by entry.
  bool verify(const Matrix<K>& x) const {
    return change_of_basis * inverse == Matrix<K>::identity(x.field(), x.rows()) &&
           change_of_basis * x * inverse == canonical;
  }
};

namespace detail {

template <FieldScalar K>
bool extends_rank(const std::vector<std::vector<K>>& chosen, const std::vector<K>& candidate, std::size_t height,
                  const FieldOf<K>& field) {
  auto cols = chosen;
  cols.push_back(candidate);
  return rank(Matrix<K>::from_columns(field, height, cols)) == cols.size();
}

template <FieldScalar K>
NormalFormCertificate<K> finish(const Matrix<K>& x, const std::vector<std::vector<K>>& columns, Matrix<K> canonical,
                                std::size_t plus, std::size_t minus, std::size_t k, const K& lambda) {
  const auto& field = x.field();
  Matrix<K> pinv = Matrix<K>::from_columns(field, x.rows(), columns);
  Matrix<K> p = inverse_or_throw(pinv, "adapted basis is dependent");
  NormalFormCertificate<K> cert{std::move(p), std::move(pinv), std::move(canonical), plus, minus, k, lambda};
  ensure(cert.verify(x), "normal form conjugation identity");
  return cert;
}

}  // namespace detail

/// Normal form of u with u^2 = lambda^2: diag(lambda I_m, -lambda I_n, J_2(lambda)^k).
///
/// When char F != 2 and lambda != 0 the space splits into the two eigenspaces
/// and k = 0. Otherwise N = u - lambda satisfies N^2 = 0; each basis vector y
/// of im N is paired with a preimage x (N x = y), giving a J_2(lambda) block in
/// the basis (y, x), and a complement of im N inside ker N supplies lambda I_m
/// (the -lambda part is merged into it, minus = 0).
template <FieldScalar K>
NormalFormCertificate<K> square_central_normal_form(const Matrix<K>& u, const K& lambda) {
  require(u.is_square(), ErrorCode::SizeMismatch, "square matrix required");
  const auto& field = u.field();
  const std::size_t n = u.rows();
  const Matrix<K> id = Matrix<K>::identity(field, n);
  require(u * u == Matrix<K>::scalar(lambda * lambda, n), ErrorCode::NotSquareCentral, "u^2 != lambda^2");

  if (field.characteristic() != 2 && !lambda.is_zero()) {
    const auto plus = kernel_basis(u - lambda * id);
    const auto minus = kernel_basis(u + lambda * id);
    std::vector<std::vector<K>> columns = plus;
    columns.insert(columns.end(), minus.begin(), minus.end());
    Matrix<K> canonical = block_diagonal<K>(
        field, {Matrix<K>::scalar(lambda, plus.size()), Matrix<K>::scalar(-lambda, minus.size())});
    return detail::finish(u, columns, std::move(canonical), plus.size(), minus.size(), 0, lambda);
  }

  const Matrix<K> nil = u - lambda * id;
  const Matrix<K> image = column_space_basis(nil);
  const std::size_t k = image.cols();
  std::vector<std::vector<K>> ys, xs;
  for (std::size_t b = 0; b < k; ++b) {
    ys.push_back(image.column_vector(b));
    auto pre = solve_system(nil, ys.back());
    ensure(pre.has_value(), "image vector without preimage");
    xs.push_back(*std::move(pre));
  }
  // Complete im N to a basis of ker N.
  std::vector<std::vector<K>> zs;
  std::vector<std::vector<K>> span = ys;
  for (const auto& v : kernel_basis(nil)) {
    if (detail::extends_rank(span, v, n, field)) {
      span.push_back(v);
      zs.push_back(v);
    }
  }
  std::vector<std::vector<K>> columns = zs;
  std::vector<Matrix<K>> blocks{Matrix<K>::scalar(lambda, zs.size())};
  for (std::size_t b = 0; b < k; ++b) {
    columns.push_back(ys[b]);
    columns.push_back(xs[b]);
    blocks.push_back(jordan2(lambda));
  }
  return detail::finish(u, columns, block_diagonal<K>(field, blocks), zs.size(), 0, k, lambda);
}

/// Normal form diag(I_m, 0) of an idempotent, m = rank(e); adapted basis is a
/// basis of im(e) followed by a basis of ker(e).
template <FieldScalar K>
NormalFormCertificate<K> idempotent_normal_form(const Matrix<K>& e) {
  require(e.is_square(), ErrorCode::SizeMismatch, "square matrix required");
  require(e * e == e, ErrorCode::NotIdempotent, "e^2 != e");
  const auto& field = e.field();
  const Matrix<K> image = column_space_basis(e);
  std::vector<std::vector<K>> columns;
  for (std::size_t b = 0; b < image.cols(); ++b) columns.push_back(image.column_vector(b));
  const auto ker = kernel_basis(e);
  columns.insert(columns.end(), ker.begin(), ker.end());
  const std::size_t m = image.cols();
  Matrix<K> canonical =
      block_diagonal<K>(field, {Matrix<K>::identity(field, m), Matrix<K>::zero(field, e.rows() - m)});
  return detail::finish(e, columns, std::move(canonical), m, 0, 0, field.one());
}

}  // namespace involquat
