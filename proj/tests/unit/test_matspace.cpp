#include <gtest/gtest.h>

#include "involquat/harness/worked_examples.hpp"
#include "involquat/linalg.hpp"
#include "involquat/normal_form.hpp"
#include "involquat/random.hpp"

using namespace involquat;
using M = Matrix<Fq>;

namespace {

M random_invertible(const FiniteField& f, std::size_t n, Rng& rng) {
  for (;;) {
    M p(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = f.random(rng);
    if (rank(p) == n) return p;
  }
}

}  // namespace

TEST(MatSpace, RightIdealDimensionExamples) {
  const auto& f = FiniteField::gf(3);
  const auto alg = worked::metabolic_example_algebra<Fq>(f);
  const auto e = worked::metabolic_example_e<Fq>(f);
  const auto d1 = rank_right_ideal_dim(M(e * alg.apply(e)));
  EXPECT_EQ(d1.rank, 1u);
  EXPECT_EQ(d1.ideal_dim, 4u);
  const auto d0 = rank_right_ideal_dim(M::zero(f, 4));
  EXPECT_EQ(d0.rank, 0u);
  EXPECT_EQ(d0.ideal_dim, 0u);
  const auto d2 = rank_right_ideal_dim(e);
  EXPECT_EQ(d2.rank, 2u);
  EXPECT_EQ(d2.ideal_dim, 8u);
}

TEST(MatSpace, SolveLinearExamples) {
  const auto& f2 = FiniteField::gf(2);
  auto x = solve_linear<Fq>(f2, 2, {{[](const M& y) { return y - y; }, M::zero(f2, 2)}}, Scalars::center);
  ASSERT_TRUE(x);
  EXPECT_TRUE(x->is_zero());

  const auto& f3 = FiniteField::gf(3);
  auto y = solve_linear<Fq>(f3, 2, {{[](const M& z) { return z + z.transpose(); }, M::identity(f3, 2)}},
                            Scalars::center);
  ASSERT_TRUE(y);
  EXPECT_EQ(*y + y->transpose(), M::identity(f3, 2));

  auto none = solve_linear<Fq>(f2, 2, {{[](const M& z) { return z + z.transpose(); }, M::identity(f2, 2)}},
                               Scalars::center);
  EXPECT_FALSE(none);
}

TEST(MatSpace, SolveSystemSetsFreeVariablesToZero) {
  const auto& f = FiniteField::gf(5);
  const auto a = M::from_ints(f, {{1, 2, 0}, {0, 0, 1}});
  const auto x = solve_system(a, {f.from_int(3), f.from_int(4)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], f.from_int(3));
  EXPECT_TRUE((*x)[1].is_zero());
  EXPECT_EQ((*x)[2], f.from_int(4));
}

TEST(MatSpace, NormalFormSymmetricExampleGf2) {
  const auto& f = FiniteField::gf(2);
  const auto u = worked::symmetric_example_u(f.one());
  const auto cert = square_central_normal_form(u, f.one());
  EXPECT_EQ(cert.plus, 0u);
  EXPECT_EQ(cert.minus, 0u);
  EXPECT_EQ(cert.jordan_blocks, 2u);
  EXPECT_EQ(cert.change_of_basis * u * cert.inverse, cert.canonical);
  EXPECT_TRUE(cert.verify(u));
}

TEST(MatSpace, NormalFormAlreadyCanonical) {
  const auto& f5 = FiniteField::gf(5);
  const auto u = M::from_ints(f5, {{1, 0}, {0, -1}});
  const auto cert = square_central_normal_form(u, f5.one());
  EXPECT_EQ(cert.plus, 1u);
  EXPECT_EQ(cert.minus, 1u);
  EXPECT_EQ(cert.jordan_blocks, 0u);
  EXPECT_TRUE(cert.change_of_basis.is_identity());

  const auto& f3 = FiniteField::gf(3);
  const auto j = block_diagonal<Fq>(f3, {jordan2(f3.zero()), jordan2(f3.zero())});
  const auto c2 = square_central_normal_form(j, f3.zero());
  EXPECT_EQ(c2.plus + c2.minus, 0u);
  EXPECT_EQ(c2.jordan_blocks, 2u);
}

TEST(MatSpace, NormalFormRejectsNonSquareCentral) {
  const auto& f = FiniteField::gf(3);
  try {
    (void)square_central_normal_form(M::from_ints(f, {{1, 1}, {0, 0}}), f.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquareCentral);
  }
}

TEST(MatSpace, IdempotentNormalFormExamples) {
  const auto& f3 = FiniteField::gf(3);
  const auto e = worked::metabolic_example_e<Fq>(f3);
  const auto c = idempotent_normal_form(e);
  EXPECT_EQ(c.plus, 2u);
  EXPECT_TRUE(c.verify(e));
  const auto ci = idempotent_normal_form(M::identity(f3, 4));
  EXPECT_EQ(ci.plus, 4u);
  EXPECT_TRUE(ci.change_of_basis.is_identity());
  const auto& f2 = FiniteField::gf(2);
  const auto e2 = M::from_ints(f2, {{1, 0}, {1, 0}});
  const auto c2 = idempotent_normal_form(e2);
  EXPECT_EQ(c2.plus, 1u);
  EXPECT_EQ(c2.change_of_basis * e2 * c2.inverse, M::from_ints(f2, {{1, 0}, {0, 0}}));
  EXPECT_THROW(idempotent_normal_form(M::from_ints(f2, {{1, 1}, {0, 1}})), Error);
}

// Random conjugates of canonical forms; multiplicities against independent rank counts.
TEST(MatSpace, NormalFormMultiplicityProperty) {
  Rng rng(2024);
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& f = FiniteField::gf(q);
    for (std::size_t n : {2u, 4u, 6u}) {
      for (int trial = 0; trial < 40; ++trial) {
        const Fq lambda = f.random(rng);
        const bool split = q != 2 && !lambda.is_zero();
        std::vector<M> blocks;
        std::size_t left = n;
        while (left > 0) {
          const bool jordan = !split && left >= 2 && rng.coin();
          if (jordan) {
            blocks.push_back(jordan2(lambda));
            left -= 2;
          } else {
            blocks.push_back(M::scalar(rng.coin() ? lambda : -lambda, 1));
            left -= 1;
          }
        }
        const M canon = block_diagonal<Fq>(f, blocks);
        const M p = random_invertible(f, n, rng);
        const M u = p * canon * inverse_or_throw(p);
        const auto cert = square_central_normal_form(u, lambda);
        ASSERT_TRUE(cert.verify(u));
        EXPECT_EQ(cert.plus + cert.minus + 2 * cert.jordan_blocks, n);
        const M id = M::identity(f, n);
        if (q != 2 && !lambda.is_zero()) {
          EXPECT_EQ(rank(M(u - lambda * id)), cert.minus + cert.jordan_blocks);
          EXPECT_EQ(rank(M(u + lambda * id)), cert.plus + cert.jordan_blocks);
        } else {
          EXPECT_EQ(rank(M(u + lambda * id)), cert.jordan_blocks);
        }
      }
    }
  }
}

TEST(MatSpace, KernelAndInverse) {
  const auto& f = FiniteField::gf(7);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    M a(f, 3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) = f.random(rng);
    const auto ker = kernel_basis(a);
    EXPECT_EQ(ker.size() + rank(a), 5u);
    for (const auto& v : ker) EXPECT_TRUE((a * M::column(f, v)).is_zero());
  }
  const auto p = random_invertible(f, 4, rng);
  EXPECT_TRUE((p * inverse_or_throw(p)).is_identity());
}

TEST(MatSpace, RationalNormalForm) {
  const auto& q = RationalField::instance();
  using R = Matrix<Rational>;
  const auto u = R::from_ints(q, {{0, 1}, {4, 0}});  // u^2 = 4
  const auto cert = square_central_normal_form(u, Rational(2, 1));
  EXPECT_TRUE(cert.verify(u));
  EXPECT_EQ(cert.plus, 1u);
  EXPECT_EQ(cert.minus, 1u);
}
