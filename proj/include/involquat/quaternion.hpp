#pragma once

// Four-dimensional subalgebras Q = span{1, b1, b2, b3} of M_n(F) with exact
// structure constants, plus the certification every constructor runs before
// returning.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/involution.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"

namespace involquat {

enum class WitnessKind { idempotent, nilpotent };

inline std::string_view to_string(WitnessKind k) { return k == WitnessKind::idempotent ? "idempotent" : "nilpotent"; }

/// A nontrivial idempotent or a nonzero square-zero element of Q; either one
/// makes a quaternion algebra split.
template <FieldScalar K>
struct SplitWitness {
  Matrix<K> element;
  WitnessKind kind;
};

template <FieldScalar K>
struct Member {
  std::string name;
  Matrix<K> element;
  std::vector<K> coords;
};

template <FieldScalar K>
struct QuaternionSubalgebra {
  std::vector<Matrix<K>> basis;  // basis[0] == 1
  std::vector<std::string> labels;
  /// table[i][j] = coordinates of basis[i] * basis[j]
  std::vector<std::vector<std::vector<K>>> table{};
  bool sigma_invariant = false;
  /// sigma_images[i] = coordinates of sigma(basis[i]) (when invariant)
  std::vector<std::vector<K>> sigma_images{};
  SplitWitness<K> witness;
  std::vector<Member<K>> contains{};

  std::size_t n() const { return basis.front().rows(); }
  const FieldOf<K>& field() const { return basis.front().field(); }

  Matrix<K> element(const std::vector<K>& coords) const {
    Matrix<K> s = Matrix<K>::zero(field(), n());
    for (std::size_t i = 0; i < 4; ++i)
      if (!coords[i].is_zero()) s += coords[i] * basis[i];
    return s;
  }
};

struct QuaternionValidation {
  bool independent = false;
  bool unital = false;
  bool closed = false;
  bool central = false;
  bool simple = false;
  bool split = false;
  bool sigma_invariant = false;
  bool members = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

template <FieldScalar K>
std::vector<std::vector<std::vector<K>>> structure_constants(const SpanBasis<K>& span,
                                                             const std::vector<Matrix<K>>& basis,
                                                             std::vector<std::string>* failures) {
  std::vector<std::vector<std::vector<K>>> table(4, std::vector<std::vector<K>>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto c = span.coordinates(basis[i] * basis[j]);
      if (!c) {
        if (!failures) fail(ErrorCode::InternalCheckFailed, "span is not closed under multiplication");
        failures->push_back("closure: b" + std::to_string(i) + "*b" + std::to_string(j) + " not in span");
        c = std::vector<K>(4, basis[0].field().zero());
      }
      table[i][j] = *std::move(c);
    }
  return table;
}

// Coordinates of the product of two elements given by coordinates.
template <FieldScalar K>
std::vector<K> multiply_coords(const std::vector<std::vector<std::vector<K>>>& table, const std::vector<K>& x,
                               const std::vector<K>& y, const K& zero) {
  std::vector<K> out(4, zero);
  for (std::size_t i = 0; i < 4; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (y[j].is_zero()) continue;
      const K xy = x[i] * y[j];
      for (std::size_t k = 0; k < 4; ++k) out[k] += xy * table[i][j][k];
    }
  }
  return out;
}

}  // namespace detail

/// Assembles a certified QuaternionSubalgebra from a basis starting with 1.
/// Throws InternalCheckFailed when the span is not a subalgebra or a claimed
/// member or witness lies outside it.
template <FieldScalar K>
QuaternionSubalgebra<K> make_quaternion(const InvolutionAlgebra<K>* alg, std::vector<Matrix<K>> basis,
                                        std::vector<std::string> labels, SplitWitness<K> witness,
                                        const std::vector<std::pair<std::string, Matrix<K>>>& members) {
  ensure(basis.size() == 4 && labels.size() == 4, "quaternion basis has four elements");
  const auto& field = basis[0].field();
  SpanBasis<K> span(field, basis);
  ensure(span.independent(), "quaternion basis is independent");
  QuaternionSubalgebra<K> q{.basis = basis, .labels = std::move(labels), .witness = std::move(witness)};
  q.table = detail::structure_constants(span, basis, nullptr);
  if (alg) {
    q.sigma_invariant = true;
    for (const auto& b : basis) {
      auto c = span.coordinates(alg->apply(b));
      if (!c) {
        q.sigma_invariant = false;
        q.sigma_images.clear();
        break;
      }
      q.sigma_images.push_back(*std::move(c));
    }
  }
  for (const auto& [name, x] : members) {
    auto c = span.coordinates(x);
    ensure(c.has_value(), "required member " + name + " lies in Q");
    q.contains.push_back({name, x, *std::move(c)});
  }
  return q;
}

/// Independent re-certification of Q: basis independence, unit, closure with
/// the stored structure constants, centre F*1, simplicity (the 16 maps
/// x -> b_i x b_j span End_F(Q)), the split witness, sigma-invariance (when
/// an involution is supplied and Q claims it) and every recorded member.
template <FieldScalar K>
QuaternionValidation validate_quaternion_subalgebra(const InvolutionAlgebra<K>* alg, const QuaternionSubalgebra<K>& q) {
  QuaternionValidation v;
  auto& f = v.failures;
  if (q.basis.size() != 4) {
    f.push_back("basis: expected 4 elements");
    return v;
  }
  const auto& field = q.field();
  const K zero = field.zero();
  const std::size_t n = q.n();
  SpanBasis<K> span(field, q.basis);
  v.independent = span.independent();
  if (!v.independent) {
    f.push_back("independence: basis is linearly dependent");
    return v;
  }
  v.unital = q.basis[0] == Matrix<K>::identity(field, n);
  if (!v.unital) f.push_back("unit: b0 != 1");

  const std::size_t before = f.size();
  const auto table = detail::structure_constants(span, q.basis, &f);
  v.closed = f.size() == before;
  if (v.closed && table != q.table) {
    v.closed = false;
    f.push_back("closure: stored structure constants disagree with recomputed products");
  }
  if (!v.closed) return v;

  // centre: c with [sum c_k b_k, b_i] = 0 for all i
  {
    Matrix<K> sys(field, 16, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t a = 0; a < 4; ++a) sys(i * 4 + a, k) = table[k][i][a] - table[i][k][a];
    v.central = kernel_basis(sys).size() == 1;
    if (!v.central) f.push_back("centre: Z(Q) is larger than F*1");
  }
  // simplicity: Q (x) Q^op -> End(Q) is onto
  {
    Matrix<K> maps(field, 16, 16);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t l = 0; l < 4; ++l) {
          std::vector<K> ej(4, zero);
          ej[j] = field.one();
          // b_i b_l b_j = (b_i b_l) b_j
          const auto prod = detail::multiply_coords(table, table[i][l], ej, zero);
          for (std::size_t a = 0; a < 4; ++a) maps(l * 4 + a, i * 4 + j) = prod[a];
        }
    v.simple = rank(maps) == 16;
    if (!v.simple) f.push_back("simplicity: Q is not central simple");
  }
  // split witness
  {
    const auto& w = q.witness.element;
    const bool inside = w.rows() == n && span.contains(w);
    const auto one = Matrix<K>::identity(field, n);
    bool good = false;
    if (inside) {
      if (q.witness.kind == WitnessKind::idempotent)
        good = w * w == w && !w.is_zero() && !(w == one);
      else
        good = (w * w).is_zero() && !w.is_zero();
    }
    v.split = good;
    if (!good) f.push_back("split: witness is not a nontrivial idempotent/nilpotent of Q");
  }
  // sigma-invariance
  v.sigma_invariant = !q.sigma_invariant;
  if (alg && q.sigma_invariant) {
    std::vector<std::vector<K>> images;
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
      auto c = span.coordinates(alg->apply(q.basis[i]));
      if (!c) {
        ok = false;
        f.push_back("sigma-invariance: sigma(b" + std::to_string(i) + ") not in Q");
        break;
      }
      images.push_back(*std::move(c));
    }
    if (ok && images != q.sigma_images) {
      ok = false;
      f.push_back("sigma-invariance: stored sigma images disagree");
    }
    v.sigma_invariant = ok;
  } else if (q.sigma_invariant && !alg) {
    f.push_back("sigma-invariance: claimed but no involution supplied");
  }
  // members
  v.members = true;
  for (const auto& m : q.contains) {
    auto c = span.coordinates(m.element);
    if (!c || *c != m.coords) {
      v.members = false;
      f.push_back("membership: " + m.name);
    }
  }
  return v;
}

template <FieldScalar K>
QuaternionValidation validate_quaternion_subalgebra(const InvolutionAlgebra<K>& alg, const QuaternionSubalgebra<K>& q) {
  return validate_quaternion_subalgebra(&alg, q);
}

}  // namespace involquat
