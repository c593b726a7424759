#pragma once

// The two worked examples as data: the metabolic idempotent that lies in no
// invariant quaternion subalgebra (transpose twisted by diag(1,-1,1,-1)),
// and the char-2 symmetric square-central u under the transpose.

#include "involquat/involution.hpp"
#include "involquat/matrix.hpp"

namespace involquat::worked {

template <FieldScalar K>
InvolutionAlgebra<K> metabolic_example_algebra(const FieldOf<K>& field) {
  // sigma = Int(d) o t, i.e. descriptor d
  return InvolutionAlgebra<K>(
      Matrix<K>::from_ints(field, {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}), InvolutionKind::first);
}

template <FieldScalar K>
Matrix<K> metabolic_example_e(const FieldOf<K>& field) {
  return Matrix<K>::from_ints(field, {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, -1, 1, 0}, {1, -1, 1, 0}});
}

/// The stated value of e sigma(e).
template <FieldScalar K>
Matrix<K> metabolic_example_e_sigma_e(const FieldOf<K>& field) {
  return Matrix<K>::from_ints(field, {{1, -1, 1, -1}, {1, -1, 1, -1}, {1, -1, 1, -1}, {1, -1, 1, -1}});
}

template <FieldScalar K>
InvolutionAlgebra<K> transpose_algebra(const FieldOf<K>& field, std::size_t n) {
  return InvolutionAlgebra<K>(Matrix<K>::identity(field, n), InvolutionKind::first);
}

/// u with lambda on the diagonal except positions (2,2), (3,3) and lambda in
/// every off-diagonal slot except (0,1), (1,0).
template <FieldScalar K>
Matrix<K> symmetric_example_u(const K& lambda) {
  const auto& field = lambda.field();
  const K z = field.zero();
  Matrix<K> u(field, 4, 4);
  const int pattern[4][4] = {{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) u(i, j) = pattern[i][j] ? lambda : z;
  return u;
}

}  // namespace involquat::worked
