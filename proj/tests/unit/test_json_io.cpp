#include <gtest/gtest.h>

#include "involquat/harness/json_io.hpp"

using namespace involquat;
using io::json;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalCheckFailed;
}

}  // namespace

TEST(JsonIo, FieldDescriptors) {
  auto f = io::parse_field(json::parse(R"({"kind":"Fp","p":3})"));
  EXPECT_EQ(std::get<const FiniteField*>(f), &FiniteField::gf(3));
  f = io::parse_field(json::parse(R"({"kind":"Fq","p":2,"deg":2,"modulus":[1,1,1],"unitary":true})"));
  EXPECT_EQ(std::get<const FiniteField*>(f), &FiniteField::gf(4, true));
  f = io::parse_field(json::parse(R"({"kind":"Q"})"));
  EXPECT_TRUE(std::holds_alternative<const RationalField*>(f));
  EXPECT_EQ(io::field_to_json(FiniteField::gf(4, true)),
            json::parse(R"({"kind":"Fq","p":2,"deg":2,"modulus":[1,1,1],"unitary":true})"));

  EXPECT_EQ(code_of([] { io::parse_field(json::parse(R"({"kind":"Fp","p":4})")); }), ErrorCode::InvalidField);
  EXPECT_EQ(code_of([] { io::parse_field(json::parse(R"({"kind":"Fq","p":2,"deg":2,"modulus":[1,0,1]})")); }),
            ErrorCode::InvalidField);
  EXPECT_EQ(code_of([] { io::parse_field(json::parse(R"({"kind":"R"})")); }), ErrorCode::Malformed);
  EXPECT_EQ(code_of([] { io::parse_field(json::parse(R"({"p":2})")); }), ErrorCode::Malformed);
}

TEST(JsonIo, Scalars) {
  const auto& f3 = FiniteField::gf(3);
  EXPECT_EQ(io::parse_scalar(f3, json("-1")), f3.from_int(2));
  EXPECT_EQ(io::parse_scalar(f3, json(7)), f3.one());
  const auto& f4 = FiniteField::gf(4);
  const Fq t = f4.from_coefficients({0, 1});
  EXPECT_EQ(io::parse_scalar(f4, json::parse("[0,1]")), t);
  EXPECT_EQ(io::parse_scalar(f4, json("[0,1]")), t);
  EXPECT_EQ(io::scalar_to_json(t), json::parse("[0,1]"));
  const auto& q = RationalField::instance();
  EXPECT_EQ(io::parse_scalar(q, json("-6/4")), Rational(-3, 2));
  EXPECT_EQ(io::scalar_to_json(Rational(-3, 2)), json("-3/2"));
  EXPECT_EQ(code_of([&] { io::parse_scalar(q, json("1/0")); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([&] { io::parse_scalar(q, json("x")); }), ErrorCode::Malformed);
  EXPECT_EQ(code_of([&] { io::parse_scalar(f3, json(1.5)); }), ErrorCode::Malformed);
}

TEST(JsonIo, MatrixAndAlgebraRoundTrip) {
  const auto& f5 = FiniteField::gf(5);
  const auto m = Matrix<Fq>::from_ints(f5, {{1, 2}, {3, 4}});
  EXPECT_EQ(io::parse_matrix<Fq>(f5, io::matrix_to_json(m)), m);
  EXPECT_EQ(code_of([&] { io::parse_matrix<Fq>(f5, json::parse(R"([["1","2"],["3"]])")); }), ErrorCode::Malformed);
  EXPECT_EQ(code_of([&] { io::parse_matrix<Fq>(f5, io::matrix_to_json(m), 3); }), ErrorCode::SizeMismatch);

  const InvolutionAlgebra<Fq> alg(Matrix<Fq>::from_ints(f5, {{0, 1}, {-1, 0}}), InvolutionKind::first);
  const auto j = io::algebra_to_json(alg);
  const auto back = io::parse_algebra<Fq>(f5, j);
  EXPECT_EQ(back.descriptor(), alg.descriptor());
  EXPECT_EQ(back.classification().type, InvolutionType::symplectic);
  EXPECT_EQ(code_of([&] {
              io::parse_algebra<Fq>(f5, json::parse(R"({"n":2,"involution":{"kind":"first","g":[["1","1"],["0","1"]]}})"));
            }),
            ErrorCode::InvalidInvolution);
}

TEST(JsonIo, OutcomeCarriesTableAndSigmaImages) {
  const auto& f3 = FiniteField::gf(3);
  const InvolutionAlgebra<Fq> alg(Matrix<Fq>::from_ints(f3, {{0, 1}, {1, 0}}), InvolutionKind::first);
  const auto out = invariant_quat_for_hyperbolic(alg, Matrix<Fq>::unit(f3, 2, 0, 0));
  const auto j = io::outcome_to_json(out);
  EXPECT_EQ(j.at("decision"), "constructed");
  EXPECT_EQ(j.at("algebra").at("basis").size(), 4u);
  EXPECT_EQ(j.at("algebra").at("structure_constants").size(), 4u);
  EXPECT_EQ(j.at("algebra").at("sigma_images").size(), 4u);
}
