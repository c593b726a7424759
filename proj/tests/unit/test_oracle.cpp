#include <gtest/gtest.h>

#include "involquat/construct.hpp"
#include "involquat/harness/generate.hpp"
#include "involquat/harness/oracle.hpp"
#include "involquat/harness/worked_examples.hpp"

using namespace involquat;
using namespace involquat::harness;
using M = Matrix<Fq>;

TEST(Oracle, BitArithmeticMatchesLibrary) {
  Rng rng(1);
  const auto& f = FiniteField::gf(2);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int t = 0; t < 200; ++t) {
      const M a = random_matrix(f, n, n, rng);
      const M b = random_matrix(f, n, n, rng);
      EXPECT_EQ(unpack(gf2::mul(pack(a), pack(b), n), n), a * b);
      EXPECT_EQ(unpack(gf2::transpose(pack(a), n), n), a.transpose());
    }
  }
}

TEST(Oracle, MetabolicExampleHasNone) {
  const auto& f = FiniteField::gf(2);
  const auto alg = worked::metabolic_example_algebra<Fq>(f);
  const auto r = brute_force_quat_oracle(alg, worked::metabolic_example_e<Fq>(f));
  EXPECT_FALSE(r.algebra);
  EXPECT_EQ(r.candidates, 65536u);
}

TEST(Oracle, SymmetricExampleHasNone) {
  const auto& f = FiniteField::gf(2);
  const auto r = brute_force_quat_oracle(worked::transpose_algebra<Fq>(f, 4), worked::symmetric_example_u(f.one()));
  EXPECT_FALSE(r.algebra);
  // split (non-invariant) quaternion subalgebras containing u do exist
  EXPECT_GT(r.closed_spans, 0u);
}

TEST(Oracle, DegreeTwoFindsWholeAlgebra) {
  const auto& f = FiniteField::gf(2);
  const auto alg = worked::transpose_algebra<Fq>(f, 2);
  const auto r = brute_force_quat_oracle(alg, M::unit(f, 2, 0, 1));
  ASSERT_TRUE(r.algebra);
  EXPECT_TRUE(validate_quaternion_subalgebra(alg, *r.algebra).ok());
}

TEST(Oracle, RejectsLargeFields) {
  const auto& f3 = FiniteField::gf(3);
  try {
    (void)brute_force_quat_oracle(worked::transpose_algebra<Fq>(f3, 2), M::unit(f3, 2, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldTooLarge);
  }
}

TEST(Oracle, AgreesWithMetabolicCriterion) {
  Rng rng(606);
  for (const Cell cell : {Cell{2, 2, InvolutionType::orthogonal}, Cell{2, 2, InvolutionType::symplectic},
                          Cell{2, 4, InvolutionType::orthogonal}, Cell{2, 4, InvolutionType::symplectic}}) {
    for (int t = 0; t < 15; ++t) {
      const auto alg = random_cell_algebra(cell, rng);
      const M e = generate_metabolic(alg, rng);
      const auto verdict = invariant_quat_for_metabolic(alg, e);
      const auto oracle = brute_force_quat_oracle(alg, e);
      EXPECT_EQ(verdict.constructed(), oracle.algebra.has_value()) << cell.name();
    }
  }
}

TEST(Oracle, AgreesWithSymmetricChar2Criterion) {
  Rng rng(707);
  for (int t = 0; t < 20; ++t) {
    const auto alg = random_cell_algebra({2, 4, InvolutionType::orthogonal}, rng);
    const Fq lambda = alg.field().one();
    const M u = generate_symmetric_char2(alg, lambda, rng);
    const auto verdict = invariant_quat_for_symmetric_char2(alg, u, lambda);
    EXPECT_EQ(verdict.constructed(), brute_force_quat_oracle(alg, u).algebra.has_value());
  }
}
