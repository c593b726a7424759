#pragma once

// Exhaustive search for sigma-invariant quaternion subalgebras of M_n(GF(2)),
// n <= 4, containing a given element r. Uses its own bit-packed GF(2)
// arithmetic: a matrix is a uint16 with entry (i, j) at bit 4i + j.
//
// Completeness: a quaternion subalgebra Q containing r (not in F) is a free
// left F[r]-module of rank 2, so Q = F[r] + F[r] y = span{1, r, y, ry} for a
// suitable y in Q; enumerating every y therefore finds Q when it exists.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/field.hpp"
#include "involquat/involution.hpp"
#include "involquat/quaternion.hpp"

namespace involquat::harness {

namespace gf2 {

using Bits = std::uint16_t;

inline Bits row(Bits a, std::size_t i) { return static_cast<Bits>((a >> (4 * i)) & 0xF); }

inline Bits mul(Bits a, Bits b, std::size_t n) {
  Bits out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Bits r = 0;
    const Bits ai = row(a, i);
    for (std::size_t j = 0; j < n; ++j)
      if (ai >> j & 1) r ^= row(b, j);
    out |= static_cast<Bits>(r << (4 * i));
  }
  return out;
}

inline Bits transpose(Bits a, std::size_t n) {
  Bits t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a >> (4 * i + j) & 1) t |= static_cast<Bits>(1u << (4 * j + i));
  return t;
}

inline Bits identity(std::size_t n) {
  Bits m = 0;
  for (std::size_t i = 0; i < n; ++i) m |= static_cast<Bits>(1u << (5 * i));
  return m;
}

/// Spreads the n*n low bits of k onto the positions 4i + j.
inline Bits deposit(std::uint32_t k, std::size_t n) {
  Bits m = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (k >> (i * n + j) & 1) m |= static_cast<Bits>(1u << (4 * i + j));
  return m;
}

inline int lowest_bit(Bits v) {
  for (int b = 0; b < 16; ++b)
    if (v >> b & 1) return b;
  return -1;
}

/// Echelon form of up to four vectors, tracking which originals combine into
/// each echelon row, so membership also yields coordinates.
struct Span4 {
  std::array<Bits, 4> rows{};
  std::array<std::uint8_t, 4> combo{};
  std::array<int, 4> pivot{};
  std::size_t size = 0;
  bool independent = true;

  explicit Span4(const std::array<Bits, 4>& basis) {
    for (std::size_t k = 0; k < 4; ++k) {
      Bits v = basis[k];
      std::uint8_t c = static_cast<std::uint8_t>(1u << k);
      for (std::size_t r = 0; r < size; ++r)
        if (v >> pivot[r] & 1) {
          v ^= rows[r];
          c ^= combo[r];
        }
      if (v == 0) {
        independent = false;
        return;
      }
      rows[size] = v;
      combo[size] = c;
      pivot[size] = lowest_bit(v);
      ++size;
    }
  }

  /// Coordinates as a 4-bit mask, or -1 when x is outside the span.
  int coords(Bits x) const {
    std::uint8_t c = 0;
    for (std::size_t r = 0; r < size; ++r)
      if (x >> pivot[r] & 1) {
        x ^= rows[r];
        c ^= combo[r];
      }
    return x == 0 ? c : -1;
  }
};

/// Rank of up to 16 vectors of 16 bits.
inline std::size_t rank16(std::array<Bits, 16> v) {
  std::size_t r = 0;
  for (int bit = 0; bit < 16; ++bit) {
    std::size_t p = r;
    while (p < 16 && !(v[p] >> bit & 1)) ++p;
    if (p == 16) continue;
    std::swap(v[p], v[r]);
    for (std::size_t k = 0; k < 16; ++k)
      if (k != r && (v[k] >> bit & 1)) v[k] ^= v[r];
    ++r;
  }
  return r;
}

}  // namespace gf2

struct OracleResult {
  std::optional<QuaternionSubalgebra<Fq>> algebra;
  std::uint64_t candidates = 0;  // number of y examined
  std::uint64_t closed_spans = 0;  // candidates spanning a closed 4-dim subalgebra
};

/// Bit-packed view of (M_n(GF(2)), sigma) with sigma(x) = g x^t g^{-1}.
class Gf2Involution {
 public:
  Gf2Involution(gf2::Bits g, std::size_t n) : n_(n), g_(g) {
    const gf2::Bits one = gf2::identity(n);
    bool found = false;
    for (std::uint32_t k = 0; k < (1u << (n * n)) && !found; ++k) {
      const gf2::Bits h = gf2::deposit(k, n);
      if (gf2::mul(g, h, n) == one) {
        g_inv_ = h;
        found = true;
      }
    }
    require(found, ErrorCode::InvalidInvolution, "descriptor is singular over GF(2)");
  }

  std::size_t n() const { return n_; }
  gf2::Bits sigma(gf2::Bits x) const { return gf2::mul(gf2::mul(g_, gf2::transpose(x, n_), n_), g_inv_, n_); }

 private:
  std::size_t n_;
  gf2::Bits g_;
  gf2::Bits g_inv_ = 0;
};

inline gf2::Bits pack(const Matrix<Fq>& m) {
  gf2::Bits b = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) b |= static_cast<gf2::Bits>(1u << (4 * i + j));
  return b;
}

inline Matrix<Fq> unpack(gf2::Bits b, std::size_t n) {
  const auto& f = FiniteField::prime(2);
  Matrix<Fq> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b >> (4 * i + j) & 1) m(i, j) = f.one();
  return m;
}

/// Checks one span{1, r, y, ry}; true when it is a sigma-invariant central
/// simple 4-dimensional subalgebra.
inline bool oracle_accepts(const Gf2Involution& inv, const std::array<gf2::Bits, 4>& basis, bool* closed = nullptr) {
  const std::size_t n = inv.n();
  const gf2::Span4 span(basis);
  if (!span.independent) return false;
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j)
      if (span.coords(gf2::mul(basis[i], basis[j], n)) < 0) return false;
  if (closed) *closed = true;
  for (std::size_t i = 1; i < 4; ++i)
    if (span.coords(inv.sigma(basis[i])) < 0) return false;
  // centre: exactly {0, 1}
  int central = 0;
  for (unsigned c = 0; c < 16; ++c) {
    gf2::Bits x = 0;
    for (std::size_t k = 0; k < 4; ++k)
      if (c >> k & 1) x ^= basis[k];
    bool commutes = true;
    for (std::size_t i = 1; i < 4 && commutes; ++i) commutes = gf2::mul(x, basis[i], n) == gf2::mul(basis[i], x, n);
    central += commutes;
  }
  if (central != 2) return false;
  // simplicity: the 16 maps x -> b_i x b_j have rank 16 on Q
  std::array<gf2::Bits, 16> maps{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      gf2::Bits column = 0;
      for (std::size_t l = 0; l < 4; ++l) {
        const int c = span.coords(gf2::mul(gf2::mul(basis[i], basis[l], n), basis[j], n));
        if (c < 0) return false;
        column |= static_cast<gf2::Bits>(c << (4 * l));
      }
      maps[i * 4 + j] = column;
    }
  return gf2::rank16(maps) == 16;
}

/// Exhaustive search; nullopt algebra means no sigma-invariant quaternion
/// subalgebra contains `required`.
inline OracleResult brute_force_quat_oracle(const InvolutionAlgebra<Fq>& alg, const Matrix<Fq>& required) {
  const auto& f = alg.field();
  require(f.characteristic() == 2 && f.degree() == 1, ErrorCode::FieldTooLarge, "oracle supports GF(2) only");
  require(alg.n() <= 4, ErrorCode::FieldTooLarge, "oracle supports n <= 4 only");
  require(!alg.is_unitary(), ErrorCode::FieldTooLarge, "oracle supports first-kind involutions only");
  const std::size_t n = alg.n();
  const Gf2Involution inv(pack(alg.descriptor()), n);
  const gf2::Bits one = gf2::identity(n);
  const gf2::Bits r = pack(required);
  OracleResult out;
  if (r == one || r == 0) return out;  // a scalar generates nothing new
  for (std::uint32_t k = 0; k < (1u << (n * n)); ++k) {
    const gf2::Bits y = gf2::deposit(k, n);
    ++out.candidates;
    const std::array<gf2::Bits, 4> basis{one, r, y, gf2::mul(r, y, n)};
    bool closed = false;
    const bool ok = oracle_accepts(inv, basis, &closed);
    out.closed_spans += closed;
    if (!ok) continue;
    // witness: a nontrivial idempotent or nonzero square-zero element
    std::optional<SplitWitness<Fq>> witness;
    for (unsigned c = 1; c < 16 && !witness; ++c) {
      gf2::Bits x = 0;
      for (std::size_t b = 0; b < 4; ++b)
        if (c >> b & 1) x ^= basis[b];
      const gf2::Bits sq = gf2::mul(x, x, n);
      if (sq == x && x != one && x != 0) witness = SplitWitness<Fq>{unpack(x, n), WitnessKind::idempotent};
      else if (sq == 0 && x != 0) witness = SplitWitness<Fq>{unpack(x, n), WitnessKind::nilpotent};
    }
    ensure(witness.has_value(), "quaternion algebras over GF(2) split");
    auto q = make_quaternion<Fq>(&alg, {unpack(basis[0], n), unpack(basis[1], n), unpack(basis[2], n),
                                        unpack(basis[3], n)},
                                 {"1", "r", "y", "ry"}, *std::move(witness), {{"required", required}});
    const auto report = validate_quaternion_subalgebra(&alg, q);
    ensure(report.ok() && q.sigma_invariant, "oracle candidate passes library validation");
    out.algebra = std::move(q);
    return out;
  }
  return out;
}

}  // namespace involquat::harness
