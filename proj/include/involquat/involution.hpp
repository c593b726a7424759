#pragma once

// (M_n(F), sigma) with sigma given by a descriptor g:
//   first kind: sigma(x) = g x^t g^{-1}
//   unitary:    sigma(x) = g conj(x)^t g^{-1}
// sigma is the adjoint involution of the (skew-)hermitian form with Gram
// matrix G = g^{-1}.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"

namespace involquat {

enum class InvolutionKind { first, unitary };
enum class InvolutionType { orthogonal, symplectic, unitary };

inline std::string_view to_string(InvolutionKind k) { return k == InvolutionKind::first ? "first" : "unitary"; }

inline std::string_view to_string(InvolutionType t) {
  switch (t) {
    case InvolutionType::orthogonal: return "orthogonal";
    case InvolutionType::symplectic: return "symplectic";
    case InvolutionType::unitary: return "unitary";
  }
  return "?";
}

struct InvolutionClass {
  InvolutionKind kind;
  InvolutionType type;
  friend bool operator==(const InvolutionClass&, const InvolutionClass&) = default;
};

template <FieldScalar K>
class InvolutionAlgebra {
 public:
  using field_type = FieldOf<K>;

  InvolutionAlgebra(Matrix<K> g, InvolutionKind kind)
      : g_(std::move(g)), g_inv_(g_.field(), 0, 0), kind_(kind), class_{kind, InvolutionType::orthogonal} {
    require(g_.is_square() && g_.rows() > 0, ErrorCode::InvalidInvolution, "descriptor must be square");
    auto inv = inverse(g_);
    require(inv.has_value(), ErrorCode::InvalidInvolution, "descriptor g is singular");
    g_inv_ = *std::move(inv);
    if (kind_ == InvolutionKind::first) {
      require(g_.transpose() == g_ || g_.transpose() == -g_, ErrorCode::InvalidInvolution,
              "first kind needs g^t = g or g^t = -g");
    } else {
      require(field().has_unitary(), ErrorCode::NoAutomorphism, "unitary involution over " + field().name());
      require(g_.conj_transpose() == g_, ErrorCode::InvalidInvolution, "unitary needs conj(g)^t = g");
    }
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) {
        const auto e = Matrix<K>::unit(field(), n(), i, j);
        require(apply(apply(e)) == e, ErrorCode::InvalidInvolution, "sigma^2 != id");
      }
    class_ = compute_class();
  }

  const field_type& field() const { return g_.field(); }
  std::size_t n() const { return g_.rows(); }
  InvolutionKind kind() const { return kind_; }
  const Matrix<K>& descriptor() const { return g_; }
  /// Gram matrix of the form sigma is adjoint to.
  const Matrix<K>& gram() const { return g_inv_; }
  InvolutionClass classification() const { return class_; }
  bool is_unitary() const { return kind_ == InvolutionKind::unitary; }
  bool char2() const { return field().characteristic() == 2; }
  /// The case without half-units or hyperbolic idempotents.
  bool char2_orthogonal() const { return char2() && class_.type == InvolutionType::orthogonal; }

  /// Scalars over which sigma is linear: F for the first kind, the fixed
  /// (prime) subfield for unitary involutions.
  Scalars scalars() const { return is_unitary() ? Scalars::prime_subfield : Scalars::center; }

  Matrix<K> apply(const Matrix<K>& x) const {
    require(x.is_square() && x.rows() == n(), ErrorCode::SizeMismatch, "element size");
    if (kind_ == InvolutionKind::first) return g_ * x.transpose() * g_inv_;
    return g_ * x.conj_transpose() * g_inv_;
  }

  /// sigma restricted to the centre.
  K apply(const K& a) const { return kind_ == InvolutionKind::first ? a : a.conj(); }

  /// The form h(v, w) = v^dagger G w (v^t G w for the first kind).
  K form(const std::vector<K>& v, const std::vector<K>& w) const {
    K s = field().zero();
    for (std::size_t i = 0; i < n(); ++i) {
      const K vi = kind_ == InvolutionKind::first ? v[i] : v[i].conj();
      if (vi.is_zero()) continue;
      for (std::size_t j = 0; j < n(); ++j) s += vi * g_inv_(i, j) * w[j];
    }
    return s;
  }

  /// B^dagger G C for column blocks B and C.
  Matrix<K> form_matrix(const Matrix<K>& b, const Matrix<K>& c) const {
    const Matrix<K> bt = kind_ == InvolutionKind::first ? b.transpose() : b.conj_transpose();
    return bt * g_inv_ * c;
  }

  /// Int(u) o sigma, i.e. x -> u sigma(x) u^{-1}; descriptor u g.
  InvolutionAlgebra twisted(const Matrix<K>& u) const { return InvolutionAlgebra(u * g_, kind_); }

 private:
  InvolutionClass compute_class() const {
    if (kind_ == InvolutionKind::unitary) return {kind_, InvolutionType::unitary};
    if (!char2()) {
      return {kind_, g_.transpose() == g_ ? InvolutionType::orthogonal : InvolutionType::symplectic};
    }
    // char 2: symplectic iff 1 in Alt(A, sigma)
    const auto one = Matrix<K>::identity(field(), n());
    auto x = solve_linear<K>(field(), n(), {{[this](const Matrix<K>& y) { return y - apply(y); }, one}}, scalars());
    return {kind_, x ? InvolutionType::symplectic : InvolutionType::orthogonal};
  }

  Matrix<K> g_;
  Matrix<K> g_inv_;
  InvolutionKind kind_;
  InvolutionClass class_;
};

template <FieldScalar K>
Matrix<K> apply_involution(const InvolutionAlgebra<K>& alg, const Matrix<K>& x) {
  return alg.apply(x);
}

template <FieldScalar K>
InvolutionClass classify_involution(const InvolutionAlgebra<K>& alg) {
  return alg.classification();
}

enum class SubspaceKind { sym, symd, alt };

inline std::string_view to_string(SubspaceKind s) {
  switch (s) {
    case SubspaceKind::sym: return "Sym";
    case SubspaceKind::symd: return "Symd";
    case SubspaceKind::alt: return "Alt";
  }
  return "?";
}

/// Echelon basis of Sym, Symd or Alt. For unitary involutions these are only
/// subspaces over the fixed field, and `scalars` says so.
template <FieldScalar K>
struct SubspaceBasis {
  SubspaceKind which;
  std::vector<Matrix<K>> basis;
  std::size_t dimension;
  Scalars scalars;
};

template <FieldScalar K>
SubspaceBasis<K> compute_subspace(const InvolutionAlgebra<K>& alg, SubspaceKind which) {
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  const bool plus = which == SubspaceKind::symd;
  AdditiveMap<K> map(
      field, n * n, n * n,
      [&](const std::vector<K>& z) {
        const auto x = unflatten<K>(field, n, z);
        return flatten(plus ? x + alg.apply(x) : x - alg.apply(x));
      },
      alg.scalars());
  const auto vectors = which == SubspaceKind::sym ? map.kernel() : map.image();
  std::vector<Matrix<K>> basis;
  for (const auto& v : vectors) basis.push_back(unflatten<K>(field, n, v));
  return {which, std::move(basis), vectors.size(), alg.scalars()};
}

/// x with x - sigma(x) = y, or nullopt when y is not in Alt(A, sigma).
template <FieldScalar K>
std::optional<Matrix<K>> express_in_alt(const InvolutionAlgebra<K>& alg, const Matrix<K>& y) {
  require(y.rows() == alg.n(), ErrorCode::SizeMismatch, "element size");
  return solve_linear<K>(alg.field(), alg.n(), {{[&](const Matrix<K>& x) { return x - alg.apply(x); }, y}},
                         alg.scalars());
}

template <FieldScalar K>
bool in_alt(const InvolutionAlgebra<K>& alg, const Matrix<K>& y) {
  return express_in_alt(alg, y).has_value();
}

/// x with x + sigma(x) = 1. Absent exactly for char-2 orthogonal involutions.
template <FieldScalar K>
std::optional<Matrix<K>> find_half_unit(const InvolutionAlgebra<K>& alg) {
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  if (field.characteristic() != 2) {
    const K half = field.from_int(2).inv();
    return Matrix<K>::scalar(half, n);
  }
  return solve_linear<K>(field, n,
                         {{[&](const Matrix<K>& x) { return x + alg.apply(x); }, Matrix<K>::identity(field, n)}},
                         alg.scalars());
}

}  // namespace involquat
