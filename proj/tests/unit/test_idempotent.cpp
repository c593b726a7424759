#include <gtest/gtest.h>

#include "involquat/harness/generate.hpp"
#include "involquat/harness/worked_examples.hpp"
#include "involquat/idempotent.hpp"

using namespace involquat;
using namespace involquat::harness;
using M = Matrix<Fq>;

namespace {

Alg swap_form(unsigned q) {
  const auto& f = FiniteField::gf(q);
  return Alg(M::from_ints(f, {{0, 1}, {1, 0}}), InvolutionKind::first);
}

std::vector<Cell> idempotent_cells() {
  return {{2, 2, InvolutionType::orthogonal}, {2, 4, InvolutionType::orthogonal}, {2, 4, InvolutionType::symplectic},
          {3, 4, InvolutionType::orthogonal}, {3, 4, InvolutionType::symplectic}, {5, 4, InvolutionType::orthogonal},
          {4, 4, InvolutionType::unitary},    {9, 2, InvolutionType::unitary},    {3, 6, InvolutionType::symplectic}};
}

}  // namespace

TEST(Idempotent, WorkedExampleIsMetabolicNotHyperbolic) {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& f = FiniteField::gf(q);
    const auto alg = worked::metabolic_example_algebra<Fq>(f);
    const auto r = classify_idempotent(alg, worked::metabolic_example_e<Fq>(f));
    EXPECT_EQ(r.cls, IdempotentClass::metabolic) << q;
    EXPECT_FALSE(r.e_sigma_e.is_zero());
    EXPECT_EQ(r.e_sigma_e, worked::metabolic_example_e_sigma_e<Fq>(f));
    EXPECT_EQ(r.dim_e_sigma_e_A, 4u);
  }
  const auto& qf = RationalField::instance();
  const auto alg = worked::metabolic_example_algebra<Rational>(qf);
  const auto r = classify_idempotent(alg, worked::metabolic_example_e<Rational>(qf));
  EXPECT_EQ(r.cls, IdempotentClass::metabolic);
  EXPECT_EQ(r.e_sigma_e, worked::metabolic_example_e_sigma_e<Rational>(qf));
}

TEST(Idempotent, ClassifyExamples) {
  const auto alg = swap_form(3);
  const auto& f = alg.field();
  EXPECT_EQ(classify_idempotent(alg, M::unit(f, 2, 0, 0)).cls, IdempotentClass::hyperbolic);
  const auto r1 = classify_idempotent(alg, M::identity(f, 2));
  EXPECT_EQ(r1.cls, IdempotentClass::plain);
  EXPECT_EQ(r1.dim_eA, 4u);
  const auto r2 = classify_idempotent(alg, M::from_ints(f, {{1, 1}, {0, 1}}));
  EXPECT_FALSE(r2.is_idempotent);
  EXPECT_EQ(r2.cls, IdempotentClass::not_idempotent);
}

TEST(Idempotent, OrthComplementExamples) {
  const auto& f2 = FiniteField::gf(2);
  const auto alg = worked::transpose_algebra<Fq>(f2, 4);
  EXPECT_EQ(orth_complement_ideal(alg, M::zero(f2, 4)).ideal_dim, 16u);
  EXPECT_EQ(orth_complement_ideal(alg, M::identity(f2, 4)).ideal_dim, 0u);
  const M x = worked::symmetric_example_u(f2.one()) + f2.one();
  const auto perp = orth_complement_ideal(alg, x);
  EXPECT_EQ(perp.ideal_dim, 8u);
  // I = I^perp: same column space
  EXPECT_EQ(rank(perp.columns), rank(x));
  EXPECT_EQ(rank(hcat(perp.columns, x)), rank(x));
}

TEST(Idempotent, GeneratorExamples) {
  const auto& f3 = FiniteField::gf(3);
  EXPECT_EQ(idempotent_generator(M::from_ints(f3, {{2, 0}, {0, 0}})), M::unit(f3, 2, 0, 0));
  const auto e = worked::metabolic_example_e<Fq>(f3);
  const auto g = idempotent_generator(e);
  EXPECT_EQ(g * g, g);
  EXPECT_EQ(rank(hcat(g, e)), rank(e));
  EXPECT_EQ(rank(g), rank(e));
}

TEST(Idempotent, HyperbolizeExamples) {
  const auto& f2 = FiniteField::gf(2);
  const Alg symp(M::from_ints(f2, {{0, 1}, {1, 0}}), InvolutionKind::first);
  ASSERT_EQ(symp.classification().type, InvolutionType::symplectic);
  // trace-1 rank-1 idempotents are metabolic for the symplectic form on GF(2)^2
  const M e = M::from_ints(f2, {{1, 0}, {1, 0}});
  ASSERT_TRUE(classify_idempotent(symp, e).metabolic());
  const M h = hyperbolize_metabolic(symp, e);
  EXPECT_TRUE((h + symp.apply(h)).is_identity());

  const auto alg3 = swap_form(3);
  const M h3 = hyperbolize_metabolic(alg3, M::unit(alg3.field(), 2, 0, 0));
  EXPECT_TRUE(classify_idempotent(alg3, h3).hyperbolic());

  const auto t = worked::metabolic_example_algebra<Fq>(f2);
  try {
    (void)hyperbolize_metabolic(t, worked::metabolic_example_e<Fq>(f2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ExceptionalCase);
  }
  EXPECT_THROW(hyperbolize_metabolic(alg3, M::identity(alg3.field(), 2)), Error);
}

TEST(Idempotent, TwistExamples) {
  const auto& f5 = FiniteField::gf(5);
  const auto alg = worked::metabolic_example_algebra<Fq>(f5);
  const auto e = worked::metabolic_example_e<Fq>(f5);
  EXPECT_EQ(twist_metabolic(alg, e, M::zero(f5, 4)), e);
  const M t = twist_metabolic(alg, e, M::unit(f5, 4, 0, 1));
  EXPECT_TRUE(classify_idempotent(alg, t).metabolic());
  EXPECT_EQ(rank(hcat(t, e)), 2u);

  Rng rng(8);
  const auto alg3 = random_cell_algebra({3, 4, InvolutionType::orthogonal}, rng);
  for (int i = 0; i < 20; ++i) {
    const M m = generate_metabolic(alg3, rng);
    const M tw = twist_metabolic(alg3, m, random_matrix(alg3.field(), 4, 4, rng));
    const auto r = classify_idempotent(alg3, tw);
    EXPECT_TRUE(r.metabolic());
    EXPECT_EQ(r.dim_eA, 8u);
  }
}

// Lemma-style properties over generated metabolic idempotents.
TEST(Idempotent, MetabolicProperties) {
  Rng rng(31);
  for (const auto& cell : idempotent_cells()) {
    for (int i = 0; i < 40; ++i) {
      const auto alg = random_cell_algebra(cell, rng);
      const M e = generate_metabolic(alg, rng);
      const auto r = classify_idempotent(alg, e);
      ASSERT_TRUE(r.metabolic()) << cell.name();
      EXPECT_EQ(r.e_sigma_e.is_zero(), r.sigma_e_is_complement);
      EXPECT_TRUE(r.alt_metabolic_zero);
      EXPECT_EQ(2 * r.dim_eA, r.dim_A);
      // every generator of eA is again metabolic
      const M g = idempotent_generator(e);
      EXPECT_TRUE(classify_idempotent(alg, g).metabolic());
      if (!alg.char2_orthogonal()) {
        const M h = hyperbolize_metabolic(alg, e);
        EXPECT_TRUE(classify_idempotent(alg, h).hyperbolic());
      }
    }
  }
}

TEST(Idempotent, HyperbolicGenerator) {
  Rng rng(4);
  for (const auto& cell : idempotent_cells()) {
    const auto alg = random_cell_algebra(cell, rng);
    if (alg.char2_orthogonal()) {
      try {
        (void)generate_hyperbolic(alg, rng);
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
      }
      continue;
    }
    const M e = generate_hyperbolic(alg, rng);
    const auto r = classify_idempotent(alg, e);
    EXPECT_TRUE(r.hyperbolic());
    EXPECT_EQ(2 * r.dim_eA, r.dim_A);
  }
}

TEST(Idempotent, OrthComplementDimensionProperty) {
  Rng rng(12);
  for (const auto& cell : idempotent_cells()) {
    const auto alg = random_cell_algebra(cell, rng);
    for (int i = 0; i < 1000; ++i) {
      const M x = random_matrix(alg.field(), alg.n(), alg.n(), rng);
      const auto perp = orth_complement_ideal(alg, x);
      ASSERT_EQ(perp.ideal_dim + rank_right_ideal_dim(x).ideal_dim, alg.n() * alg.n());
    }
  }
}
