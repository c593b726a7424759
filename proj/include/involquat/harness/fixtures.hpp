#pragma once

// Re-derives every stated property of the two worked examples and records
// each as a named claim.

#include <string>
#include <vector>

#include "involquat/construct.hpp"
#include "involquat/harness/oracle.hpp"
#include "involquat/harness/worked_examples.hpp"

namespace involquat::harness {

struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureReport {
  std::vector<Claim> claims;

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return !claims.empty();
  }
  void add(std::string name, bool pass, std::string detail = {}) {
    claims.push_back({std::move(name), pass, std::move(detail)});
  }
};

namespace detail {

template <FieldScalar K>
void metabolic_example_claims(FixtureReport& r, const FieldOf<K>& field, const std::string& tag) {
  const std::string p = "metabolic-example/" + tag + ": ";
  try {
    const auto alg = worked::metabolic_example_algebra<K>(field);
    const auto e = worked::metabolic_example_e<K>(field);
    const auto rep = classify_idempotent(alg, e);
    r.add(p + "e idempotent", rep.is_idempotent);
    r.add(p + "e metabolic", rep.metabolic());
    r.add(p + "e not hyperbolic", rep.metabolic() && !rep.hyperbolic());
    r.add(p + "e sigma(e) equals the stated matrix", rep.e_sigma_e == worked::metabolic_example_e_sigma_e<K>(field));
    r.add(p + "dim e sigma(e) A = 4", rep.dim_e_sigma_e_A == 4, "got " + std::to_string(rep.dim_e_sigma_e_A));
    r.add(p + "dim e sigma(e) A != 1/2 dim A", 2 * rep.dim_e_sigma_e_A != rep.dim_A);
    const auto out = invariant_quat_for_metabolic(alg, e);
    r.add(p + "constructor returns none-by-theorem", out.decision == Decision::none_by_theorem,
          std::string(to_string(out.decision)));
  } catch (const Error& err) {
    r.add(p + "evaluation", false, std::string(to_string(err.code())) + ": " + err.detail());
  }
}

inline void symmetric_example_claims(FixtureReport& r, unsigned q, bool with_oracle) {
  const std::string p = "symmetric-example/GF(" + std::to_string(q) + "): ";
  try {
    const auto& f = FiniteField::gf(q);
    const auto alg = worked::transpose_algebra<Fq>(f, 4);
    const Fq lambda = f.one();
    const Matrix<Fq> u = worked::symmetric_example_u(lambda);
    const auto one = Matrix<Fq>::identity(f, 4);
    r.add(p + "sigma orthogonal", alg.classification().type == InvolutionType::orthogonal);
    r.add(p + "u symmetric", alg.apply(u) == u);
    r.add(p + "u^2 = 1", u * u == one);
    r.add(p + "rank(u+1) = 2", rank(Matrix<Fq>(u + lambda)) == 2);
    r.add(p + "dim (u+1)A = 1/2 dim A", 2 * rank_right_ideal_dim(Matrix<Fq>(u + lambda)).ideal_dim == 16);
    bool none_in_alt = true;
    for (const Fq& a : f.elements()) none_in_alt = none_in_alt && !in_alt(alg, Matrix<Fq>(u + a));
    r.add(p + "u + alpha not in Alt for every alpha", none_in_alt);
    const auto out = invariant_quat_for_symmetric_char2(alg, u, lambda);
    r.add(p + "constructor returns none-by-theorem", out.decision == Decision::none_by_theorem,
          std::string(to_string(out.decision)));
    if (with_oracle && q == 2) {
      const auto o = brute_force_quat_oracle(alg, u);
      r.add(p + "oracle finds no invariant quaternion subalgebra", !o.algebra,
            std::to_string(o.candidates) + " candidates");
    }
  } catch (const Error& err) {
    r.add(p + "evaluation", false, std::string(to_string(err.code())) + ": " + err.detail());
  }
}

}  // namespace detail

/// Claims about the metabolic example only (no oracle).
inline FixtureReport verify_metabolic_example() {
  FixtureReport r;
  for (unsigned q : {2u, 3u, 5u})
    detail::metabolic_example_claims<Fq>(r, FiniteField::gf(q), "GF(" + std::to_string(q) + ")");
  detail::metabolic_example_claims<Rational>(r, RationalField::instance(), "Q");
  return r;
}

inline FixtureReport verify_metabolic_example_oracle() {
  FixtureReport r;
  const auto& f = FiniteField::gf(2);
  const auto o = brute_force_quat_oracle(worked::metabolic_example_algebra<Fq>(f), worked::metabolic_example_e<Fq>(f));
  r.add("metabolic-example/GF(2): oracle finds no invariant quaternion subalgebra", !o.algebra,
        std::to_string(o.candidates) + " candidates");
  r.add("metabolic-example/GF(2): oracle search exhaustive", o.candidates == 65536u);
  return r;
}

inline FixtureReport verify_symmetric_example(bool with_oracle = true) {
  FixtureReport r;
  for (unsigned q : {2u, 4u}) detail::symmetric_example_claims(r, q, with_oracle);
  return r;
}

inline FixtureReport verify_worked_examples() {
  FixtureReport r = verify_metabolic_example();
  for (auto* part : {&verify_metabolic_example_oracle, +[] { return verify_symmetric_example(true); }}) {
    auto more = part();
    r.claims.insert(r.claims.end(), more.claims.begin(), more.claims.end());
  }
  return r;
}

}  // namespace involquat::harness
