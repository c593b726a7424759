#include <gtest/gtest.h>

#include "involquat/harness/worked_examples.hpp"
#include "involquat/involution.hpp"
#include "involquat/random.hpp"

using namespace involquat;
using M = Matrix<Fq>;

namespace {

InvolutionAlgebra<Fq> symplectic2(unsigned q) {
  const auto& f = FiniteField::gf(q);
  return InvolutionAlgebra<Fq>(M::from_ints(f, {{0, 1}, {-1, 0}}), InvolutionKind::first);
}

M random_matrix(const FiniteField& f, std::size_t n, Rng& rng) {
  M m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.random(rng);
  return m;
}

}  // namespace

TEST(InvolAlg, ApplyExamples) {
  const auto& f = FiniteField::gf(3);
  const auto alg = worked::metabolic_example_algebra<Fq>(f);
  const auto e = worked::metabolic_example_e<Fq>(f);
  EXPECT_EQ(e * alg.apply(e), worked::metabolic_example_e_sigma_e<Fq>(f));
  EXPECT_TRUE(alg.apply(M::identity(f, 4)).is_identity());
  const auto t = worked::transpose_algebra<Fq>(f, 2);
  EXPECT_EQ(t.apply(M::unit(f, 2, 0, 1)), M::unit(f, 2, 1, 0));
  EXPECT_THROW((void)t.apply(M::identity(f, 3)), Error);
}

TEST(InvolAlg, ClassifyExamples) {
  const auto c = classify_involution(worked::metabolic_example_algebra<Fq>(FiniteField::gf(5)));
  EXPECT_EQ(c.kind, InvolutionKind::first);
  EXPECT_EQ(c.type, InvolutionType::orthogonal);
  EXPECT_EQ(symplectic2(2).classification().type, InvolutionType::symplectic);
  EXPECT_EQ(symplectic2(3).classification().type, InvolutionType::symplectic);
  EXPECT_EQ(worked::transpose_algebra<Fq>(FiniteField::gf(2), 4).classification().type, InvolutionType::orthogonal);
  const auto& f4 = FiniteField::gf(4, true);
  const InvolutionAlgebra<Fq> u(M::identity(f4, 2), InvolutionKind::unitary);
  EXPECT_EQ(u.classification().type, InvolutionType::unitary);
  EXPECT_EQ(u.classification().kind, InvolutionKind::unitary);
}

TEST(InvolAlg, InvalidDescriptors) {
  const auto& f = FiniteField::gf(3);
  EXPECT_THROW(InvolutionAlgebra<Fq>(M::from_ints(f, {{1, 1}, {0, 1}}), InvolutionKind::first), Error);
  EXPECT_THROW(InvolutionAlgebra<Fq>(M::from_ints(f, {{1, 1}, {1, 1}}), InvolutionKind::first), Error);
  try {
    InvolutionAlgebra<Fq>(M::identity(f, 2), InvolutionKind::unitary);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoAutomorphism);
  }
  const auto& f4 = FiniteField::gf(4, true);
  const auto t = f4.from_coefficients({0, 1});
  M g = M::identity(f4, 2);
  g(0, 0) = t;  // not hermitian
  EXPECT_THROW(InvolutionAlgebra<Fq>(g, InvolutionKind::unitary), Error);
}

TEST(InvolAlg, SubspaceExamples) {
  const auto& f2 = FiniteField::gf(2);
  const auto alt = compute_subspace(worked::transpose_algebra<Fq>(f2, 4), SubspaceKind::alt);
  EXPECT_EQ(alt.dimension, 6u);
  for (const auto& b : alt.basis) {
    EXPECT_EQ(b, b.transpose());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(b(i, i).is_zero());
  }
  const auto& f3 = FiniteField::gf(3);
  EXPECT_EQ(compute_subspace(worked::transpose_algebra<Fq>(f3, 2), SubspaceKind::sym).dimension, 3u);
  const auto a2 = compute_subspace(symplectic2(2), SubspaceKind::alt);
  ASSERT_EQ(a2.dimension, 1u);
  EXPECT_TRUE(a2.basis[0].is_identity());
}

TEST(InvolAlg, HalfUnitExamples) {
  const auto& q = RationalField::instance();
  const InvolutionAlgebra<Rational> rat(Matrix<Rational>::identity(q, 4), InvolutionKind::first);
  const auto h = find_half_unit(rat);
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, Matrix<Rational>::scalar(Rational(1, 2), 4));
  const auto s = symplectic2(2);
  const auto x = find_half_unit(s);
  ASSERT_TRUE(x);
  EXPECT_TRUE((*x + s.apply(*x)).is_identity());
  EXPECT_FALSE(find_half_unit(worked::transpose_algebra<Fq>(FiniteField::gf(2), 4)));
}

TEST(InvolAlg, ExpressInAltExamples) {
  const auto& f3 = FiniteField::gf(3);
  const auto s = symplectic2(3);
  const auto x0 = express_in_alt(s, M::zero(f3, 2));
  ASSERT_TRUE(x0);
  EXPECT_TRUE(x0->is_zero());
  const auto y = M::from_ints(f3, {{1, 0}, {0, -1}});
  const auto x = express_in_alt(s, y);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x - s.apply(*x), y);
  EXPECT_FALSE(express_in_alt(worked::transpose_algebra<Fq>(FiniteField::gf(2), 4), M::identity(FiniteField::gf(2), 4)));
}

// anti-automorphism and involutivity on all matrix-unit pairs, plus random pairs
TEST(InvolAlg, AntiAutomorphismProperty) {
  Rng rng(99);
  std::vector<InvolutionAlgebra<Fq>> algs{worked::metabolic_example_algebra<Fq>(FiniteField::gf(5)), symplectic2(2),
                                          symplectic2(3)};
  const auto& f9 = FiniteField::gf(9, true);
  algs.emplace_back(M::from_ints(f9, {{0, 1}, {1, 0}}), InvolutionKind::unitary);
  for (const auto& alg : algs) {
    const auto& f = alg.field();
    const std::size_t n = alg.n();
    for (std::size_t a = 0; a < n * n; ++a)
      for (std::size_t b = 0; b < n * n; ++b) {
        const auto x = M::unit(f, n, a / n, a % n);
        const auto y = M::unit(f, n, b / n, b % n);
        EXPECT_EQ(alg.apply(x * y), alg.apply(y) * alg.apply(x));
      }
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_matrix(f, n, rng);
      const auto y = random_matrix(f, n, rng);
      ASSERT_EQ(alg.apply(x * y), alg.apply(y) * alg.apply(x));
      ASSERT_EQ(alg.apply(alg.apply(x)), x);
    }
  }
}

TEST(InvolAlg, SubspaceDimensionsProperty) {
  for (unsigned q : {3u, 5u, 7u}) {
    const auto alg = worked::metabolic_example_algebra<Fq>(FiniteField::gf(q));
    EXPECT_EQ(compute_subspace(alg, SubspaceKind::sym).dimension + compute_subspace(alg, SubspaceKind::alt).dimension,
              16u);
  }
  for (const auto& alg : {worked::transpose_algebra<Fq>(FiniteField::gf(2), 4), symplectic2(2),
                          worked::transpose_algebra<Fq>(FiniteField::gf(4), 3)}) {
    const auto a = compute_subspace(alg, SubspaceKind::alt);
    const auto d = compute_subspace(alg, SubspaceKind::symd);
    EXPECT_EQ(a.dimension, d.dimension);
    EXPECT_EQ(a.basis, d.basis);
  }
}

// half unit absent iff char 2 orthogonal, with randomized descriptors g' = P g P^t
TEST(InvolAlg, HalfUnitIffNotChar2Orthogonal) {
  Rng rng(17);
  for (unsigned q : {2u, 4u, 8u}) {
    const auto& f = FiniteField::gf(q);
    for (std::size_t n : {2u, 4u}) {
      std::vector<M> bases{M::identity(f, n)};
      M symp(f, n, n);
      for (std::size_t i = 0; i < n / 2; ++i) {
        symp(i, n / 2 + i) = f.one();
        symp(n / 2 + i, i) = f.one();
      }
      bases.push_back(symp);
      for (const auto& g0 : bases) {
        for (int t = 0; t < 5; ++t) {
          M p = random_matrix(f, n, rng);
          if (rank(p) != n) continue;
          const InvolutionAlgebra<Fq> alg(p * g0 * p.transpose(), InvolutionKind::first);
          const bool orth = alg.classification().type == InvolutionType::orthogonal;
          EXPECT_EQ(find_half_unit(alg).has_value(), !orth);
        }
      }
    }
  }
}

TEST(InvolAlg, ExpressInAltMatchesSubspace) {
  Rng rng(3);
  for (const auto& alg : {worked::transpose_algebra<Fq>(FiniteField::gf(2), 3), symplectic2(3)}) {
    const auto alt = compute_subspace(alg, SubspaceKind::alt);
    SpanBasis<Fq> span(alg.field(), alt.basis);
    for (int t = 0; t < 200; ++t) {
      const auto y = random_matrix(alg.field(), alg.n(), rng);
      EXPECT_EQ(express_in_alt(alg, y).has_value(), span.contains(y));
    }
  }
}

TEST(InvolAlg, UnitarySubspacesAreOverFixedField) {
  const auto& f4 = FiniteField::gf(4, true);
  const InvolutionAlgebra<Fq> alg(M::identity(f4, 2), InvolutionKind::unitary);
  const auto sym = compute_subspace(alg, SubspaceKind::sym);
  EXPECT_EQ(sym.scalars, Scalars::prime_subfield);
  EXPECT_EQ(sym.dimension, 4u);  // hermitian 2x2 matrices over GF(4): 4-dimensional over GF(2)
  for (const auto& b : sym.basis) EXPECT_EQ(alg.apply(b), b);
}
