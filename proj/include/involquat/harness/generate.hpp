#pragma once

// Deterministic random instances over finite fields. Every instance is
// re-checked against its definition before it is returned.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/field.hpp"
#include "involquat/idempotent.hpp"
#include "involquat/involution.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"
#include "involquat/normal_form.hpp"
#include "involquat/random.hpp"

namespace involquat::harness {

using Mat = Matrix<Fq>;
using Alg = InvolutionAlgebra<Fq>;

enum class InstanceKind {
  metabolic_idempotent,
  hyperbolic_idempotent,
  skew_square_central,
  symmetric_square_central,
  square_central,
};

inline std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::metabolic_idempotent: return "metabolic";
    case InstanceKind::hyperbolic_idempotent: return "hyperbolic";
    case InstanceKind::skew_square_central: return "skew";
    case InstanceKind::symmetric_square_central: return "symmetric";
    case InstanceKind::square_central: return "square-central";
  }
  return "?";
}

inline std::optional<InstanceKind> parse_instance_kind(std::string_view s) {
  for (auto k : {InstanceKind::metabolic_idempotent, InstanceKind::hyperbolic_idempotent,
                 InstanceKind::skew_square_central, InstanceKind::symmetric_square_central,
                 InstanceKind::square_central})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

/// One (field, n, involution type) cell of the property suites.
struct Cell {
  unsigned q;
  std::size_t n;
  InvolutionType type;

  const FiniteField& field() const { return FiniteField::gf(q, type == InvolutionType::unitary); }
  std::string name() const {
    return field().name() + "/n=" + std::to_string(n) + "/" + std::string(involquat::to_string(type));
  }
};

inline Mat random_matrix(const FiniteField& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.random(rng);
  return m;
}

inline Mat random_invertible(const FiniteField& f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat p = random_matrix(f, n, n, rng);
    if (rank(p) == n) return p;
  }
}

/// Split base descriptor of the requested type.
inline Mat base_descriptor(const FiniteField& f, std::size_t n, InvolutionType type) {
  Mat g(f, n, n);
  switch (type) {
    case InvolutionType::orthogonal:
      if (f.characteristic() == 2) return Mat::identity(f, n);
      [[fallthrough]];
    case InvolutionType::unitary:
      for (std::size_t i = 0; i < n; ++i) g(i, n - 1 - i) = f.one();
      return g;
    case InvolutionType::symplectic:
      require(n % 2 == 0, ErrorCode::Infeasible, "symplectic involutions need even n");
      for (std::size_t i = 0; i < n / 2; ++i) {
        g(i, n / 2 + i) = f.one();
        g(n / 2 + i, i) = -f.one();
      }
      return g;
  }
  return g;
}

/// The cell's base descriptor moved by a random congruence P g P^t (P g P^dagger).
inline Alg random_cell_algebra(const Cell& cell, Rng& rng) {
  const auto& f = cell.field();
  const Mat g = base_descriptor(f, cell.n, cell.type);
  const Mat p = random_invertible(f, cell.n, rng);
  const bool unitary = cell.type == InvolutionType::unitary;
  Alg alg(p * g * (unitary ? p.conj_transpose() : p.transpose()),
          unitary ? InvolutionKind::unitary : InvolutionKind::first);
  ensure(alg.classification().type == cell.type, "random congruence preserves the involution type");
  return alg;
}

namespace detail {

inline Mat column_of(const std::vector<Fq>& v) { return Mat::column(v.front().field(), v); }

inline std::vector<Fq> combine(const FiniteField& f, const std::vector<std::vector<Fq>>& basis, Rng& rng,
                               std::size_t len) {
  std::vector<Fq> v(len, f.zero());
  for (const auto& b : basis) {
    const Fq c = f.random(rng);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < len; ++i) v[i] += c * b[i];
  }
  return v;
}

/// Vectors v with h(w, v) = 0 for every w in `against`; solved over the prime
/// subfield because h is semilinear in its first slot for unitary forms.
inline std::vector<std::vector<Fq>> orthogonal_vectors(const Alg& alg, const std::vector<std::vector<Fq>>& against) {
  const auto& f = alg.field();
  const std::size_t n = alg.n();
  if (against.empty()) {
    std::vector<std::vector<Fq>> all;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Fq> v(n, f.zero());
      v[i] = f.one();
      all.push_back(std::move(v));
    }
    return all;
  }
  // h(w, v) is linear in v: rows (w^dagger G)
  Mat rows(f, against.size(), n);
  for (std::size_t r = 0; r < against.size(); ++r) {
    const Mat wt = alg.is_unitary() ? column_of(against[r]).conj_transpose() : column_of(against[r]).transpose();
    const Mat row = wt * alg.gram();
    for (std::size_t j = 0; j < n; ++j) rows(r, j) = row(0, j);
  }
  return kernel_basis(rows);
}

inline bool extends(const std::vector<std::vector<Fq>>& chosen, const std::vector<Fq>& v, std::size_t n) {
  auto cols = chosen;
  cols.push_back(v);
  return rank(Mat::from_columns(v.front().field(), n, cols)) == cols.size();
}

/// Totally isotropic family of `count` vectors, orthogonal to `chosen_iso`,
/// independent of `independent_of`; nullopt when random sampling stalls.
inline std::optional<std::vector<std::vector<Fq>>> extend_isotropic(const Alg& alg,
                                                                    std::vector<std::vector<Fq>> iso,
                                                                    std::vector<std::vector<Fq>> independent_of,
                                                                    std::size_t count, Rng& rng) {
  const auto& f = alg.field();
  const std::size_t n = alg.n();
  std::vector<std::vector<Fq>> added;
  for (std::size_t k = 0; k < count; ++k) {
    const auto space = orthogonal_vectors(alg, iso);
    bool found = false;
    for (int attempt = 0; attempt < 400 && !found; ++attempt) {
      auto v = combine(f, space, rng, n);
      if (!alg.form(v, v).is_zero()) continue;
      auto span = independent_of;
      span.insert(span.end(), iso.begin(), iso.end());
      if (!extends(span, v, n)) continue;
      iso.push_back(v);
      added.push_back(std::move(v));
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return added;
}

}  // namespace detail

/// Projection onto a random Lagrangian S along a complement C whose first
/// `isotropic_part` vectors are isotropic and orthogonal to each other; with
/// isotropic_part = n/2 the idempotent is hyperbolic.
inline std::optional<Mat> metabolic_with_complement(const Alg& alg, std::size_t isotropic_part, Rng& rng) {
  const auto& f = alg.field();
  const std::size_t n = alg.n();
  const std::size_t m = n / 2;
  auto s = detail::extend_isotropic(alg, {}, {}, m, rng);
  if (!s) return std::nullopt;
  auto c = detail::extend_isotropic(alg, {}, *s, isotropic_part, rng);
  if (!c) return std::nullopt;
  std::vector<std::vector<Fq>> columns = *s;
  columns.insert(columns.end(), c->begin(), c->end());
  while (columns.size() < n) {
    std::vector<Fq> v(n, f.zero());
    for (auto& x : v) x = f.random(rng);
    if (detail::extends(columns, v, n)) columns.push_back(std::move(v));
  }
  const Mat basis = Mat::from_columns(f, n, columns);
  const Mat d = block_diagonal<Fq>(f, {Mat::identity(f, m), Mat::zero(f, n - m)});
  return basis * d * inverse_or_throw(basis);
}

inline Mat generate_metabolic(const Alg& alg, Rng& rng) {
  require(alg.n() % 2 == 0, ErrorCode::Infeasible, "metabolic idempotents need even n");
  for (int attempt = 0; attempt < 50; ++attempt) {
    // uniform isotropic part so that every rank of e sigma(e) shows up
    const std::size_t part = static_cast<std::size_t>(rng.below(alg.n() / 2 + 1));
    auto e = metabolic_with_complement(alg, part, rng);
    if (!e) continue;
    ensure(classify_idempotent(alg, *e).metabolic(), "generated idempotent is metabolic");
    return *e;
  }
  fail(ErrorCode::Infeasible, "no Lagrangian found for this involution");
}

inline Mat generate_hyperbolic(const Alg& alg, Rng& rng) {
  require(alg.n() % 2 == 0, ErrorCode::Infeasible, "hyperbolic idempotents need even n");
  require(!alg.char2_orthogonal(), ErrorCode::Infeasible, "no hyperbolic idempotents for char-2 orthogonal involutions");
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto e = metabolic_with_complement(alg, alg.n() / 2, rng);
    if (!e) continue;
    ensure(classify_idempotent(alg, *e).hyperbolic(), "generated idempotent is hyperbolic");
    return *e;
  }
  fail(ErrorCode::Infeasible, "no complementary Lagrangian found");
}

/// Random element of the sigma-fixed part of F.
inline Fq random_fixed_scalar(const Alg& alg, Rng& rng) {
  const auto& f = alg.field();
  if (!alg.is_unitary()) return f.random(rng);
  return f.from_int(static_cast<long long>(rng.below(f.characteristic())));
}

/// u with sigma(u) = -u, u^2 = lambda^2 and dim (lambda+u)A = 1/2 dim A.
/// char != 2, lambda != 0: u = lambda (2e - 1) for a hyperbolic e (every such u
/// has this shape: both eigenspaces are Lagrangians). Otherwise u = lambda + u0
/// with u0 mapping a metabolic complement C onto a Lagrangian S, square zero,
/// and skew, i.e. u0 = B [[0, M], [0, 0]] B^{-1} with M invertible and in the
/// linear space cut out by sigma(u0) = -u0.
inline Mat generate_skew(const Alg& alg, const Fq& lambda, Rng& rng) {
  const auto& f = alg.field();
  const std::size_t n = alg.n();
  const std::size_t m = n / 2;
  require(n % 2 == 0, ErrorCode::Infeasible, "square-central skew instances need even n");
  require(alg.apply(lambda) == lambda, ErrorCode::Infeasible, "lambda must be sigma-fixed");
  if (f.characteristic() != 2 && !lambda.is_zero()) {
    const Mat e = generate_hyperbolic(alg, rng);
    const Mat u = lambda * (f.from_int(2) * e - Mat::identity(f, n));
    ensure(alg.apply(u) == -u, "generated u is skew");
    return u;
  }
  for (int attempt = 0; attempt < 50; ++attempt) {
    const Mat e = generate_metabolic(alg, rng);
    const auto cert = idempotent_normal_form(e);
    const Mat& b = cert.inverse;
    const Mat& b_inv = cert.change_of_basis;
    auto embed = [&](const std::vector<Fq>& z) {
      Mat blk(f, n, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) blk(i, m + j) = z[i * m + j];
      return Mat(b * blk * b_inv);
    };
    AdditiveMap<Fq> map(
        f, m * m, n * n, [&](const std::vector<Fq>& z) {
          const Mat u0 = embed(z);
          return flatten(Mat(u0 + alg.apply(u0)));
        },
        alg.scalars());
    const auto kernel = map.kernel();
    if (kernel.empty()) continue;
    for (int draw = 0; draw < 200; ++draw) {
      std::vector<Fq> z(m * m, f.zero());
      for (const auto& k : kernel) {
        const Fq c = alg.is_unitary() ? f.from_int(static_cast<long long>(rng.below(f.characteristic()))) : f.random(rng);
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += c * k[i];
      }
      const Mat u0 = embed(z);
      if (rank(u0) != m) continue;
      const Mat u = u0 + lambda;
      ensure(alg.apply(u) == -u, "generated u is skew");
      ensure(u * u == Mat::scalar(lambda * lambda, n), "generated u is square-central");
      ensure(2 * rank_right_ideal_dim(Mat(u + lambda)).ideal_dim == n * n, "generated u has half-rank lambda+u");
      return u;
    }
  }
  fail(ErrorCode::Infeasible, "no skew square-central element found");
}

/// char 2 only, where symmetric and skew coincide.
inline Mat generate_symmetric_char2(const Alg& alg, const Fq& lambda, Rng& rng) {
  require(alg.char2(), ErrorCode::Infeasible, "symmetric square-central instances are generated in char 2 only");
  Mat u = generate_skew(alg, lambda, rng);
  ensure(alg.apply(u) == u, "generated u is symmetric");
  return u;
}

/// Random u with u^2 = lambda^2 (no involution): a conjugate of
/// diag(lambda I_a, -lambda I_b, J_2(lambda)^k); half of the draws are forced
/// onto the balanced multiplicities of the split criterion.
struct SquareCentralInstance {
  Mat u;
  Fq lambda;
};

inline SquareCentralInstance generate_square_central(const FiniteField& f, std::size_t n, Rng& rng) {
  for (;;) {
    const Fq lambda = f.random(rng);
    const bool semisimple = f.characteristic() != 2 && !lambda.is_zero();
    const bool balanced = rng.coin() && n % 2 == 0;
    std::size_t k = 0, a = 0, b = 0;
    if (semisimple) {
      a = balanced ? n / 2 : static_cast<std::size_t>(rng.below(n + 1));
      b = n - a;
    } else {
      k = balanced ? n / 2 : static_cast<std::size_t>(rng.below(n / 2 + 1));
      a = n - 2 * k;
    }
    std::vector<Mat> blocks;
    if (a) blocks.push_back(Mat::scalar(lambda, a));
    if (b) blocks.push_back(Mat::scalar(-lambda, b));
    for (std::size_t i = 0; i < k; ++i) blocks.push_back(jordan2(lambda));
    const Mat canon = block_diagonal<Fq>(f, blocks);
    if (canon.as_scalar()) continue;
    const Mat p = random_invertible(f, n, rng);
    Mat u = p * canon * inverse_or_throw(p);
    ensure(u * u == Mat::scalar(lambda * lambda, n), "generated u is square-central");
    return {std::move(u), lambda};
  }
}

/// The generator entry point for the involution-dependent kinds.
inline Mat generate_instance(InstanceKind kind, const Alg& alg, const Fq& lambda, Rng& rng) {
  switch (kind) {
    case InstanceKind::metabolic_idempotent: return generate_metabolic(alg, rng);
    case InstanceKind::hyperbolic_idempotent: return generate_hyperbolic(alg, rng);
    case InstanceKind::skew_square_central: return generate_skew(alg, lambda, rng);
    case InstanceKind::symmetric_square_central: return generate_symmetric_char2(alg, lambda, rng);
    case InstanceKind::square_central: return generate_square_central(alg.field(), alg.n(), rng).u;
  }
  fail(ErrorCode::Infeasible, "unknown instance kind");
}

}  // namespace involquat::harness
