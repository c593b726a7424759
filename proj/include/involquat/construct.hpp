#pragma once

// Decision procedures and explicit constructions of (sigma-invariant, split)
// quaternion subalgebras containing a given square-central element or
// idempotent. Every returned subalgebra has been re-validated; a "none"
// answer is only returned when a theorem rules existence out, never because
// a search came up empty. Violated hypotheses throw PreconditionViolated.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/idempotent.hpp"
#include "involquat/involution.hpp"
#include "involquat/linalg.hpp"
#include "involquat/matrix.hpp"
#include "involquat/normal_form.hpp"
#include "involquat/quaternion.hpp"

namespace involquat {

enum class Decision { constructed, none_by_theorem, precondition_failed };

inline std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::constructed: return "constructed";
    case Decision::none_by_theorem: return "none-by-theorem";
    case Decision::precondition_failed: return "precondition-failed";
  }
  return "?";
}

template <FieldScalar K>
struct QuatOutcome {
  Decision decision = Decision::none_by_theorem;
  std::optional<QuaternionSubalgebra<K>> algebra;
  std::string reason;
  std::vector<std::string> route;

  bool constructed() const { return decision == Decision::constructed; }
};

namespace detail {

template <FieldScalar K>
bool half_ideal(const Matrix<K>& x) {
  const auto d = rank_right_ideal_dim(x);
  return 2 * d.ideal_dim == x.rows() * x.rows();
}

inline void precondition(bool ok, const char* relation) {
  if (!ok) fail(ErrorCode::PreconditionViolated, relation);
}

template <FieldScalar K>
QuatOutcome<K> none(std::string reason, std::vector<std::string> route = {}) {
  return {Decision::none_by_theorem, std::nullopt, std::move(reason), std::move(route)};
}

template <FieldScalar K>
QuatOutcome<K> certified(const InvolutionAlgebra<K>* alg, QuaternionSubalgebra<K> q, std::vector<std::string> route) {
  if (alg) ensure(q.sigma_invariant, "constructed subalgebra is sigma-invariant");
  const auto report = validate_quaternion_subalgebra(alg, q);
  if (!report.ok()) {
    std::string msg = "constructed subalgebra failed validation:";
    for (const auto& f : report.failures) msg += " [" + f + "]";
    fail(ErrorCode::InternalCheckFailed, msg);
  }
  return {Decision::constructed, std::move(q), {}, std::move(route)};
}

template <FieldScalar K>
void add_member(QuaternionSubalgebra<K>& q, std::string name, const Matrix<K>& x) {
  SpanBasis<K> span(q.field(), q.basis);
  auto c = span.coordinates(x);
  ensure(c.has_value(), "required member " + name + " lies in Q");
  q.contains.push_back({std::move(name), x, *std::move(c)});
}

}  // namespace detail

/// lambda from the caller, or recovered as a square root of the scalar u^2.
template <FieldScalar K>
K resolve_lambda(const Matrix<K>& u, const std::optional<K>& lambda) {
  const std::size_t n = u.rows();
  if (lambda) {
    require(u * u == Matrix<K>::scalar(*lambda * *lambda, n), ErrorCode::NotSquareCentral, "u^2 != lambda^2");
    return *lambda;
  }
  const auto square = (u * u).as_scalar();
  require(square.has_value(), ErrorCode::NotSquareCentral, "u^2 is not a scalar");
  auto root = sqrt_in_field(*square);
  require(root.has_value(), ErrorCode::NotSquareCentral, "u^2 is not a square in F");
  return *root;
}

/// w with w^2 = 0, ew = 0, we = w, uw = e - lambda w, wu = lambda w - e + 1.
/// In a basis where e = diag(I_m, 0), u = [[lambda, W], [0, -lambda]] and
/// w = [[0, 0], [W^{-1}, 0]].
template <FieldScalar K>
Matrix<K> make_w(const Matrix<K>& e, const Matrix<K>& u, const K& lambda) {
  using detail::precondition;
  require(e.is_square() && u.is_square() && e.rows() == u.rows(), ErrorCode::SizeMismatch, "make_w operands");
  const auto& field = e.field();
  const std::size_t n = e.rows();
  const auto one = Matrix<K>::identity(field, n);
  precondition(!u.is_zero(), "u != 0");
  precondition(u * u == Matrix<K>::scalar(lambda * lambda, n), "u^2 = lambda^2");
  precondition(e * e == e, "e^2 = e");
  precondition(u * e == lambda * e, "ue = lambda e");
  precondition(e * (u + lambda) == u + lambda, "e(lambda+u) = lambda+u");
  precondition(detail::half_ideal(e), "dim eA = 1/2 dim A");
  precondition(detail::half_ideal(e * (u - lambda)), "dim e(u-lambda)A = 1/2 dim A");

  const auto cert = idempotent_normal_form(e);
  const std::size_t m = cert.plus;
  const Matrix<K> uc = cert.change_of_basis * u * cert.inverse;
  const Matrix<K> w_block = inverse_or_throw(uc.block(0, m, m, n - m), "off-diagonal block W is singular");
  Matrix<K> wc(field, n, n);
  wc.set_block(m, 0, w_block);
  Matrix<K> w = cert.inverse * wc * cert.change_of_basis;

  ensure((w * w).is_zero(), "w^2 = 0");
  ensure((e * w).is_zero(), "ew = 0");
  ensure(w * e == w, "we = w");
  ensure(u * w == e - lambda * w, "uw = e - lambda w");
  ensure(w * u == lambda * w - e + one, "wu = lambda w - e + 1");
  return w;
}

/// Prop-3.2-style criterion and construction: a split quaternion subalgebra
/// containing u exists iff dim (lambda + u)A = 1/2 dim A.
template <FieldScalar K>
QuatOutcome<K> split_quaternion_containing(const Matrix<K>& u, const std::optional<K>& lambda_in = std::nullopt) {
  require(u.is_square(), ErrorCode::SizeMismatch, "square matrix required");
  require(!u.as_scalar().has_value(), ErrorCode::ScalarInput, "u lies in F");
  const K lambda = resolve_lambda(u, lambda_in);
  const auto& field = u.field();
  const std::size_t n = u.rows();
  const auto one = Matrix<K>::identity(field, n);
  if (!detail::half_ideal(u + lambda))
    return detail::none<K>("dim (lambda+u)A != 1/2 dim A", {"criterion"});

  if (field.characteristic() != 2 && !lambda.is_zero()) {
    // Eigen-splitting; the complement spanned by v+_i + v-_i makes the
    // off-diagonal block of u invertible.
    const auto plus = kernel_basis(u - lambda);
    const auto minus = kernel_basis(u + lambda);
    ensure(plus.size() == n / 2 && minus.size() == n / 2, "eigenspaces of dimension n/2");
    std::vector<std::vector<K>> columns = plus;
    for (std::size_t i = 0; i < plus.size(); ++i) {
      std::vector<K> v(n, field.zero());
      for (std::size_t r = 0; r < n; ++r) v[r] = plus[i][r] + minus[i][r];
      columns.push_back(std::move(v));
    }
    const auto c = Matrix<K>::from_columns(field, n, columns);
    const auto d = block_diagonal<K>(field, {Matrix<K>::identity(field, n / 2), Matrix<K>::zero(field, n / 2)});
    const Matrix<K> e = c * d * inverse_or_throw(c);
    const Matrix<K> w = make_w(e, u, lambda);
    auto q = make_quaternion<K>(nullptr, {one, e, u, w}, {"1", "e", "u", "w"}, {e, WitnessKind::idempotent},
                                {{"u", u}});
    return detail::certified<K>(nullptr, std::move(q), {"eigen-splitting", "make_w"});
  }

  const auto cert = square_central_normal_form(u, lambda);
  ensure(cert.plus == 0 && cert.minus == 0, "criterion forces u to be a sum of J2(lambda) blocks");
  Matrix<K> vc(field, n, n);
  for (std::size_t b = 0; b < cert.jordan_blocks; ++b) vc(2 * b + 1, 2 * b) = field.one();
  const Matrix<K> v = cert.inverse * vc * cert.change_of_basis;
  auto q = make_quaternion<K>(nullptr, {one, u, v, u * v}, {"1", "u", "v", "uv"}, {u + lambda, WitnessKind::nilpotent},
                              {{"u", u}});
  return detail::certified<K>(nullptr, std::move(q), {"jordan-normal-form", "block-subdiagonal-v"});
}

template <FieldScalar K>
QuatOutcome<K> split_quaternion_containing(const Matrix<K>& u, const K& lambda) {
  return split_quaternion_containing(u, std::optional<K>(lambda));
}

/// V = S (+) T with S = im e, T = im sigma(e) for a hyperbolic e, with the
/// pairing h(S, T) and the auxiliary form on T (standard dot product in the
/// chosen T coordinates).
template <FieldScalar K>
struct HyperbolicSplitting {
  Matrix<K> s_basis;  // n x n/2
  Matrix<K> t_basis;  // n x n/2
  Matrix<K> gram;     // G = g^{-1}
  Matrix<K> theta;    // Gram matrix of the auxiliary form on T (identity)
  Matrix<K> pairing;  // h(s_a, t_b)
};

template <FieldScalar K>
HyperbolicSplitting<K> hyperbolic_splitting(const InvolutionAlgebra<K>& alg, const Matrix<K>& e) {
  const auto report = classify_idempotent(alg, e);
  require(report.hyperbolic(), ErrorCode::NotHyperbolic, "sigma(e) != 1 - e");
  const auto s = column_space_basis(e);
  const auto t = column_space_basis(alg.apply(e));
  ensure(s.cols() == alg.n() / 2 && t.cols() == alg.n() / 2, "dim S = dim T = n/2");
  auto pairing = alg.form_matrix(s, t);
  return {s, t, alg.gram(), Matrix<K>::identity(alg.field(), s.cols()), std::move(pairing)};
}

/// sigma-invariant split quaternion subalgebra containing a hyperbolic e.
/// With V = T* (+) T: u(t*, t) = (theta(t), 0), v(t*, t) = (0, theta^{-1}(t*)).
template <FieldScalar K>
QuatOutcome<K> invariant_quat_for_hyperbolic(const InvolutionAlgebra<K>& alg, const Matrix<K>& e) {
  const auto sp = hyperbolic_splitting(alg, e);
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  const std::size_t m = n / 2;
  const auto one = Matrix<K>::identity(field, n);
  // phi(s) = theta(t) in coordinates: d = (H^dagger)^{-1} c, so u has block
  // (H^dagger)^{-1} from T to S and v has block H^dagger from S to T.
  const Matrix<K> h_dag = alg.is_unitary() ? sp.pairing.conj_transpose() : sp.pairing.transpose();
  const Matrix<K> u_block = inverse_or_throw(h_dag, "S and T are not paired");
  const auto c = hcat(sp.s_basis, sp.t_basis);
  const auto c_inv = inverse_or_throw(c, "S + T != V");
  Matrix<K> uc(field, n, n), vc(field, n, n);
  uc.set_block(0, m, u_block);
  vc.set_block(m, 0, h_dag);
  const Matrix<K> u = c * uc * c_inv;
  const Matrix<K> v = c * vc * c_inv;
  ensure(u * v == e, "uv = e");
  auto q = make_quaternion<K>(&alg, {one, e, u, v}, {"1", "e", "u", "v"}, {e, WitnessKind::idempotent},
                              {{"e", e}, {"sigma(e)", alg.apply(e)}});
  return detail::certified<K>(&alg, std::move(q), {"hyperbolic-splitting"});
}

/// sigma-invariant quaternion subalgebra containing a hyperbolic e and a
/// square-zero u with uA of half dimension, ue = 0, eu = u, sigma(u) = +-u.
template <FieldScalar K>
QuatOutcome<K> invariant_quat_with_nilpotent(const InvolutionAlgebra<K>& alg, const Matrix<K>& e, const Matrix<K>& u) {
  using detail::precondition;
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  const auto one = Matrix<K>::identity(field, n);
  precondition(classify_idempotent(alg, e).hyperbolic(), "e hyperbolic");
  precondition((u * u).is_zero(), "u^2=0");
  precondition(detail::half_ideal(u), "dim uA = 1/2 dim A");
  precondition((u * e).is_zero(), "ue=0");
  precondition(e * u == u, "eu=u");
  const auto su = alg.apply(u);
  const bool symmetric = su == u;
  precondition(symmetric || su == -u, "sigma(u)=+-u");

  const Matrix<K> w = make_w(e, u, field.zero());
  ensure(u * w == e && w * u == one - e, "uw = e, wu = 1 - e");
  const auto sw = alg.apply(w);
  ensure(symmetric ? sw == w : sw == -w, "sigma(w) = +-w");
  auto q = make_quaternion<K>(&alg, {one, e, u, w}, {"1", "e", "u", "w"}, {e, WitnessKind::idempotent},
                              {{"e", e}, {"u", u}});
  return detail::certified<K>(&alg, std::move(q), {"nilpotent-pair", "make_w"});
}

/// A metabolic e lies in a sigma-invariant split quaternion subalgebra iff e
/// is hyperbolic or dim e sigma(e) A = 1/2 dim A.
template <FieldScalar K>
QuatOutcome<K> invariant_quat_for_metabolic(const InvolutionAlgebra<K>& alg, const Matrix<K>& e) {
  const auto report = classify_idempotent(alg, e);
  require(report.metabolic(), ErrorCode::NotMetabolic, "e is not metabolic");
  if (report.hyperbolic()) {
    auto out = invariant_quat_for_hyperbolic(alg, e);
    out.route.insert(out.route.begin(), "hyperbolic");
    return out;
  }
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  const auto one = Matrix<K>::identity(field, n);
  const Matrix<K>& u = report.e_sigma_e;
  if (!detail::half_ideal(u))
    return detail::none<K>("e is not hyperbolic and dim e sigma(e) A != 1/2 dim A", {"criterion"});

  const Matrix<K> w = make_w(e, u, field.zero());
  const auto two = field.from_int(2);
  ensure(alg.apply(e) == one - e + u, "sigma(e) = 1 - e + u");
  ensure(alg.apply(w) == w + two * e - u - one, "sigma(w) = w + 2e - u - 1");
  auto q = make_quaternion<K>(&alg, {one, e, u, w}, {"1", "e", "u", "w"}, {e, WitnessKind::idempotent},
                              {{"e", e}, {"e sigma(e)", u}});
  return detail::certified<K>(&alg, std::move(q), {"metabolic", "make_w"});
}

/// Checks the standing hypotheses on a skew square-central element:
/// sigma(u) = -u, u not in F, u^2 = lambda^2, sigma(lambda) = lambda and
/// dim (lambda+u)A = 1/2 dim A.
template <FieldScalar K>
void check_skew_hypotheses(const InvolutionAlgebra<K>& alg, const Matrix<K>& u, const K& lambda) {
  using detail::precondition;
  require(u.is_square() && u.rows() == alg.n(), ErrorCode::SizeMismatch, "element size");
  precondition(alg.apply(u) == -u, "sigma(u)=-u");
  precondition(!u.as_scalar().has_value(), "u not in F");
  precondition(u * u == Matrix<K>::scalar(lambda * lambda, alg.n()), "u^2=lambda^2");
  precondition(alg.apply(lambda) == lambda, "sigma(lambda)=lambda");
  precondition(detail::half_ideal(u + lambda), "dim(lambda+u)A = 1/2 dim A");
}

template <FieldScalar K>
struct MetabolicFromSkew {
  Matrix<K> e;
  IdempotentReport<K> report;
};

/// Metabolic idempotent e generating (lambda+u)A, with e(lambda+u) = lambda+u
/// and ue = lambda e.
template <FieldScalar K>
MetabolicFromSkew<K> skew_to_metabolic(const InvolutionAlgebra<K>& alg, const Matrix<K>& u, const K& lambda) {
  check_skew_hypotheses(alg, u, lambda);
  const Matrix<K> x = u + lambda;
  Matrix<K> e = idempotent_generator(x);
  auto report = classify_idempotent(alg, e);
  ensure(report.metabolic(), "generator of (lambda+u)A is metabolic");
  ensure(e * x == x, "e(lambda+u) = lambda+u");
  ensure(u * e == lambda * e, "ue = lambda e");
  const auto se = alg.apply(e);
  const auto two = alg.field().from_int(2);
  ensure(e * u * se == lambda * (e * se) + lambda + u - (two * lambda) * e,
         "e u sigma(e) = lambda e sigma(e) + lambda + u - 2 lambda e");
  return {std::move(e), std::move(report)};
}

template <FieldScalar K>
struct AltIdempotent {
  Matrix<K> e;        // from skew_to_metabolic
  Matrix<K> x;        // x - sigma(x) = lambda^{-1} u
  Matrix<K> e_prime;  // metabolic, e' - sigma(e') = lambda^{-1} u
  std::optional<Matrix<K>> h;  // char != 2: hyperbolic, h - sigma(h) = lambda^{-1} u
};

/// For lambda != 0 and u in Alt: a metabolic e' with lambda^{-1} u = e' - sigma(e').
template <FieldScalar K>
AltIdempotent<K> skew_to_alt_idempotent(const InvolutionAlgebra<K>& alg, const Matrix<K>& u, const K& lambda) {
  detail::precondition(!lambda.is_zero(), "lambda!=0");
  auto base = skew_to_metabolic(alg, u, lambda);
  const Matrix<K> y = lambda.inv() * u;
  auto x = express_in_alt(alg, y);
  detail::precondition(x.has_value(), "u in Alt");
  const Matrix<K>& e = base.e;
  Matrix<K> ep = twist_metabolic(alg, e, alg.apply(*x));
  const auto sep = alg.apply(ep);
  ensure(ep - sep == y, "e' - sigma(e') = lambda^{-1} u");
  std::optional<Matrix<K>> h;
  const auto one = Matrix<K>::identity(alg.field(), alg.n());
  if (alg.char2()) {
    ensure(ep * sep == one + y, "e' sigma(e') = 1 + lambda^{-1} u");
    ensure(detail::half_ideal(ep * sep), "dim e' sigma(e') A = 1/2 dim A");
  } else {
    const K half = alg.field().from_int(2).inv();
    Matrix<K> hh = ep - half * (ep * sep);
    ensure(classify_idempotent(alg, hh).hyperbolic(), "h is hyperbolic");
    ensure(hh - alg.apply(hh) == y, "h - sigma(h) = lambda^{-1} u");
    h = std::move(hh);
  }
  return {e, *std::move(x), std::move(ep), std::move(h)};
}

/// sigma-invariant split quaternion subalgebra containing u in Alt(A, sigma);
/// none exactly in the char 2, lambda = 0, orthogonal case.
template <FieldScalar K>
QuatOutcome<K> invariant_quat_for_alt_element(const InvolutionAlgebra<K>& alg, const Matrix<K>& u, const K& lambda) {
  check_skew_hypotheses(alg, u, lambda);
  detail::precondition(in_alt(alg, u), "u in Alt");
  const auto& field = alg.field();
  if (lambda.is_zero() && alg.char2_orthogonal())
    return detail::none<K>("char 2, lambda = 0 and sigma orthogonal: Alt(Q) would contain no unit", {"exceptional"});

  QuatOutcome<K> out;
  if (!lambda.is_zero()) {
    const auto alt = skew_to_alt_idempotent(alg, u, lambda);
    if (!alg.char2()) {
      out = invariant_quat_for_hyperbolic(alg, *alt.h);
      out.route.insert(out.route.begin(), "alt-hyperbolic");
    } else {
      out = invariant_quat_for_metabolic(alg, alt.e_prime);
      ensure(out.constructed(), "metabolic criterion holds for e'");
      out.route.insert(out.route.begin(), "alt-metabolic");
    }
  } else {
    const auto base = skew_to_metabolic(alg, u, lambda);
    const auto half = find_half_unit(alg);
    ensure(half.has_value(), "half-unit exists outside the char-2 orthogonal case");
    const Matrix<K> h = base.e - base.e * *half * alg.apply(base.e);
    ensure(classify_idempotent(alg, h).hyperbolic(), "h is hyperbolic");
    ensure((u * h).is_zero() && h * u == u, "uh = 0, hu = u");
    out = invariant_quat_with_nilpotent(alg, h, u);
    out.route.insert(out.route.begin(), "alt-nilpotent");
  }
  ensure(out.constructed(), "alt element construction");
  detail::add_member(*out.algebra, "u", u);
  (void)field;
  return out;
}

/// sigma-invariant split quaternion subalgebra containing a skew u; refuses
/// the char-2 orthogonal case (see invariant_quat_for_symmetric_char2).
template <FieldScalar K>
QuatOutcome<K> invariant_quat_for_skew_element(const InvolutionAlgebra<K>& alg, const Matrix<K>& u, const K& lambda) {
  check_skew_hypotheses(alg, u, lambda);
  if (!alg.char2() || alg.is_unitary()) {
    ensure(in_alt(alg, u), "skew elements lie in Alt when char != 2 or sigma is unitary");
    auto out = invariant_quat_for_alt_element(alg, u, lambda);
    out.route.insert(out.route.begin(), "skew-is-alt");
    return out;
  }
  if (alg.char2_orthogonal()) fail(ErrorCode::ExceptionalCase, "char 2 and sigma orthogonal");

  const auto& field = alg.field();
  const auto one = Matrix<K>::identity(field, alg.n());
  std::vector<std::string> route{"char2-symplectic"};
  Matrix<K> u1 = u;
  K lambda1 = lambda;
  if (lambda.is_zero()) {
    u1 = u + one;
    lambda1 = field.one();
    route.push_back("u+1");
  }
  if (in_alt(alg, u1)) {
    auto out = invariant_quat_for_alt_element(alg, u1, lambda1);
    route.insert(route.end(), out.route.begin(), out.route.end());
    out.route = std::move(route);
    if (lambda.is_zero()) detail::add_member(*out.algebra, "u (original)", u);
    return out;
  }
  const auto tau = alg.twisted(u1);
  ensure(tau.classification().type == InvolutionType::orthogonal, "Int(u) o sigma is orthogonal");
  ensure(in_alt(tau, u1), "u in Alt(A, Int(u) o sigma)");
  auto inner = invariant_quat_for_alt_element(tau, u1, lambda1);
  ensure(inner.constructed(), "tau-invariant subalgebra");
  route.push_back("tau=Int(u)o sigma");
  route.insert(route.end(), inner.route.begin(), inner.route.end());
  const auto& qt = *inner.algebra;
  std::vector<std::pair<std::string, Matrix<K>>> members{{"u", u}};
  if (lambda.is_zero()) members.push_back({"u+1", u1});
  auto q = make_quaternion<K>(&alg, qt.basis, qt.labels, qt.witness, members);
  return detail::certified<K>(&alg, std::move(q), std::move(route));
}

/// For char 2, tau orthogonal on a tau-invariant quaternion Q and a
/// symmetric x in Q with x^2 in F: alpha with x + alpha in Alt(Q, tau).
template <FieldScalar K>
K quat_char2_alt_shift(const InvolutionAlgebra<K>& tau, const QuaternionSubalgebra<K>& q, const Matrix<K>& x) {
  using detail::precondition;
  const auto& field = tau.field();
  precondition(field.characteristic() == 2, "char F = 2");
  precondition(!tau.is_unitary(), "tau of the first kind");
  SpanBasis<K> span(field, q.basis);
  const auto xc = span.coordinates(x);
  precondition(xc.has_value(), "x in Q");
  require(tau.apply(x) == x, ErrorCode::NotSymmetric, "tau(x) != x");
  require((x * x).as_scalar().has_value(), ErrorCode::SquareNotCentral, "x^2 not in F");
  std::vector<std::vector<K>> images;
  for (const auto& b : q.basis) {
    auto c = span.coordinates(tau.apply(b));
    precondition(c.has_value(), "Q tau-invariant");
    images.push_back(*std::move(c));
  }
  // Alt(Q, tau) is spanned by b_i - tau(b_i); in coordinates e_i - images[i].
  Matrix<K> alt(field, 4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t a = 0; a < 4; ++a) alt(a, i) = (i == a ? field.one() : field.zero()) - images[i][a];
  std::vector<K> unit(4, field.zero());
  unit[0] = field.one();
  precondition(!solve_system(alt, unit).has_value(), "tau orthogonal on Q");
  // sum c_i (e_i - images[i]) - alpha e_0 = coords(x)
  Matrix<K> sys(field, 4, 5);
  sys.set_block(0, 0, alt);
  sys(0, 4) = -field.one();
  auto sol = solve_system(sys, *xc);
  ensure(sol.has_value(), "x + alpha in Alt(Q, tau) for some alpha");
  const K alpha = (*sol)[4];
  std::vector<K> shifted = *xc;
  shifted[0] += alpha;
  ensure(solve_system(alt, shifted).has_value(), "x + alpha in Alt(Q, tau)");
  return alpha;
}

/// char 2, sigma orthogonal, sigma(u) = u: an invariant quaternion subalgebra
/// containing u exists iff u + alpha in Alt(A, sigma) for some alpha != lambda.
template <FieldScalar K>
QuatOutcome<K> invariant_quat_for_symmetric_char2(const InvolutionAlgebra<K>& alg, const Matrix<K>& u,
                                                  const K& lambda) {
  using detail::precondition;
  const auto& field = alg.field();
  const std::size_t n = alg.n();
  require(u.is_square() && u.rows() == n, ErrorCode::SizeMismatch, "element size");
  precondition(field.characteristic() == 2, "char F = 2");
  precondition(alg.char2_orthogonal() && !alg.is_unitary(), "sigma orthogonal");
  precondition(alg.apply(u) == u, "sigma(u)=u");
  precondition(!u.as_scalar().has_value(), "u not in F");
  precondition(u * u == Matrix<K>::scalar(lambda * lambda, n), "u^2=lambda^2");
  precondition(detail::half_ideal(u + lambda), "dim(lambda+u)A = 1/2 dim A");

  // unknowns: entries of X, then alpha; X - sigma(X) - alpha = u
  const std::size_t nn = n * n;
  AdditiveMap<K> map(
      field, nn + 1, nn,
      [&](const std::vector<K>& z) {
        const auto x = unflatten<K>(field, n, std::vector<K>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(nn)));
        return flatten(Matrix<K>(x - alg.apply(x)) - z[nn]);
      },
      Scalars::center);
  const auto sol = map.solve(flatten(u));
  if (!sol) return detail::none<K>("u + alpha not in Alt(A, sigma) for every alpha", {"alt-shift"});
  K alpha = (*sol)[nn];
  if (alpha == lambda) {
    // The admissible alphas form a point or all of F.
    const K other = lambda + field.one();
    if (!in_alt(alg, u + other))
      return detail::none<K>("u + alpha in Alt(A, sigma) only for alpha = lambda", {"alt-shift"});
    alpha = other;
  }
  const Matrix<K> u1 = u + alpha;
  auto out = invariant_quat_for_alt_element(alg, u1, lambda + alpha);
  out.route.insert(out.route.begin(), "alt-shift");
  detail::add_member(*out.algebra, "u (original)", u);
  return out;
}

}  // namespace involquat
