#pragma once

// Property suites: per (field, n, involution type) cell, `trials` generated
// instances are pushed through the constructors and compared with the
// theorem criteria, the normal-form certificates and (over GF(2), n <= 4)
// the brute-force oracle. Trials run in parallel; results are reduced in
// trial order so the report does not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "involquat/construct.hpp"
#include "involquat/harness/generate.hpp"
#include "involquat/harness/oracle.hpp"

namespace involquat::harness {

enum class FuzzKind { square_central, metabolic, hyperbolic, skew, symmetric, alt_shift };

inline std::string_view to_string(FuzzKind k) {
  switch (k) {
    case FuzzKind::square_central: return "square-central";
    case FuzzKind::metabolic: return "metabolic";
    case FuzzKind::hyperbolic: return "hyperbolic";
    case FuzzKind::skew: return "skew";
    case FuzzKind::symmetric: return "symmetric";
    case FuzzKind::alt_shift: return "alt-shift";
  }
  return "?";
}

inline std::optional<FuzzKind> parse_fuzz_kind(std::string_view s) {
  for (auto k : {FuzzKind::square_central, FuzzKind::metabolic, FuzzKind::hyperbolic, FuzzKind::skew,
                 FuzzKind::symmetric, FuzzKind::alt_shift})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

/// Worker count: hardware concurrency capped by INVOLQUAT_THREADS.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("INVOLQUAT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

using Counters = std::map<std::string, std::uint64_t>;

/// An instance worth keeping: the algebra descriptor and the element.
struct Witness {
  Mat descriptor;
  Mat element;
};

struct TrialOutcome {
  Counters counts;
  std::optional<std::string> violation;
  std::optional<Witness> witness;
};

struct CellSummary {
  Cell cell;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  Counters counts;
  std::vector<std::string> messages;  // first few violations
  std::vector<Witness> witnesses;     // first few logged instances
};

struct FuzzReport {
  FuzzKind kind;
  std::uint64_t seed = 0;
  std::uint64_t trials_per_cell = 0;
  bool oracle = false;
  std::vector<CellSummary> cells;

  std::uint64_t violations() const {
    std::uint64_t v = 0;
    for (const auto& c : cells) v += c.violations;
    return v;
  }
  std::uint64_t total(const std::string& key) const {
    std::uint64_t v = 0;
    for (const auto& c : cells)
      if (auto it = c.counts.find(key); it != c.counts.end()) v += it->second;
    return v;
  }
};

inline std::vector<Cell> default_cells(FuzzKind kind) {
  using T = InvolutionType;
  std::vector<Cell> cells;
  switch (kind) {
    case FuzzKind::square_central:
      for (unsigned q : {2u, 3u, 5u, 4u})
        for (std::size_t n : {2u, 4u, 6u}) cells.push_back({q, n, T::orthogonal});
      return cells;
    case FuzzKind::metabolic:
    case FuzzKind::skew:
      for (unsigned q : {2u, 3u, 4u, 5u})
        for (T t : {T::orthogonal, T::symplectic})
          for (std::size_t n : {2u, 4u}) cells.push_back({q, n, t});
      for (unsigned q : {4u, 9u})
        for (std::size_t n : {2u, 4u}) cells.push_back({q, n, T::unitary});
      cells.push_back({3, 6, T::orthogonal});
      cells.push_back({2, 6, T::symplectic});
      return cells;
    case FuzzKind::hyperbolic:
      for (const auto& c : default_cells(FuzzKind::metabolic))
        if (!(c.q % 2 == 0 && c.type == T::orthogonal)) cells.push_back(c);
      return cells;
    case FuzzKind::symmetric:
    case FuzzKind::alt_shift:
      for (unsigned q : {2u, 4u, 8u})
        for (std::size_t n : {2u, 4u}) cells.push_back({q, n, T::orthogonal});
      return cells;
  }
  return cells;
}

namespace detail {

inline bool half_rank(const Mat& x) { return 2 * rank_right_ideal_dim(x).ideal_dim == x.rows() * x.rows(); }

inline bool oracle_cell(const Cell& c) { return c.q == 2 && c.n <= 4 && c.type != InvolutionType::unitary; }

struct Trial {
  TrialOutcome out;
  void count(const std::string& key) { ++out.counts[key]; }
  void check(bool ok, const std::string& what) {
    if (!ok && !out.violation) out.violation = what;
  }
};

inline bool contains(const QuaternionSubalgebra<Fq>& q, const Mat& x) {
  return SpanBasis<Fq>(q.field(), q.basis).contains(x);
}

inline void check_constructed(Trial& t, const Alg* alg, const QuatOutcome<Fq>& out, const Mat& member,
                              const std::string& what) {
  t.check(out.constructed(), what + ": expected a subalgebra");
  if (!out.constructed()) return;
  const auto v = validate_quaternion_subalgebra(alg, *out.algebra);
  t.check(v.ok(), what + ": validation failed" + (v.failures.empty() ? "" : ": " + v.failures.front()));
  t.check(contains(*out.algebra, member), what + ": required element missing");
  if (v.ok()) t.count("validated");
}

inline void oracle_compare(Trial& t, const Alg& alg, const Mat& x, bool constructed, const std::string& what) {
  const auto r = brute_force_quat_oracle(alg, x);
  t.count("oracle_checked");
  if (!r.algebra) t.count("oracle_none");
  t.check(r.algebra.has_value() == constructed, what + ": oracle disagrees");
}

inline void square_central_trial(Trial& t, const Cell& cell, Rng& rng) {
  const auto& f = cell.field();
  const auto inst = generate_square_central(f, cell.n, rng);
  const auto cert = square_central_normal_form(inst.u, inst.lambda);
  t.check(cert.verify(inst.u) && cert.plus + cert.minus + 2 * cert.jordan_blocks == cell.n, "normal form certificate");
  t.count("certificates");
  const bool criterion = half_rank(Mat(inst.u + inst.lambda));
  const auto out = split_quaternion_containing(inst.u, inst.lambda);
  t.check(out.constructed() == criterion, "verdict differs from dim (lambda+u)A = 1/2 dim A");
  if (criterion) {
    t.count("criterion_holds");
    check_constructed(t, nullptr, out, inst.u, "split quaternion");
  } else {
    t.count("none_by_theorem");
  }
}

inline void metabolic_trial(Trial& t, const Cell& cell, Rng& rng, bool use_oracle) {
  const auto alg = random_cell_algebra(cell, rng);
  const Mat e = generate_metabolic(alg, rng);
  const auto report = classify_idempotent(alg, e);
  t.check(report.metabolic(), "generator produced a non-metabolic idempotent");
  const auto cert = idempotent_normal_form(e);
  t.check(cert.verify(e) && 2 * cert.plus == cell.n, "idempotent normal form certificate");
  t.count("certificates");
  const bool criterion = report.hyperbolic() || half_rank(report.e_sigma_e);
  if (report.hyperbolic()) t.count("hyperbolic");
  else if (criterion) t.count("half_rank");
  if (!report.hyperbolic() && !alg.char2()) {
    t.count("metabolic_not_hyperbolic");
    t.out.witness = Witness{alg.descriptor(), e};
  }
  const auto out = invariant_quat_for_metabolic(alg, e);
  t.check(out.constructed() == criterion, "verdict differs from the metabolic criterion");
  if (criterion) check_constructed(t, &alg, out, e, "metabolic");
  else t.count("none_by_theorem");
  // half-units and hyperbolization
  const bool half = find_half_unit(alg).has_value();
  t.check(half != alg.char2_orthogonal(), "half unit exists iff not char-2 orthogonal");
  if (half) {
    const Mat h = hyperbolize_metabolic(alg, e);
    t.check(classify_idempotent(alg, h).hyperbolic(), "hyperbolized idempotent");
    t.count("hyperbolized");
  } else {
    t.count("no_half_unit");
  }
  if (use_oracle && oracle_cell(cell)) oracle_compare(t, alg, e, out.constructed(), "metabolic");
}

inline void hyperbolic_trial(Trial& t, const Cell& cell, Rng& rng) {
  const auto alg = random_cell_algebra(cell, rng);
  const Mat e = generate_hyperbolic(alg, rng);
  const auto cert = idempotent_normal_form(e);
  t.check(cert.verify(e), "idempotent normal form certificate");
  t.count("certificates");
  const auto out = invariant_quat_for_hyperbolic(alg, e);
  check_constructed(t, &alg, out, e, "hyperbolic");
  if (out.constructed()) t.check(contains(*out.algebra, alg.apply(e)), "sigma(e) in Q");
}

inline void skew_trial(Trial& t, const Cell& cell, Rng& rng, bool use_oracle) {
  const auto alg = random_cell_algebra(cell, rng);
  const auto& f = alg.field();
  Fq lambda = random_fixed_scalar(alg, rng);
  // orthogonal, char != 2: a square-zero skew u gives an alternating form of
  // rank rank(u) = n/2, so lambda = 0 needs n/2 even
  const bool nilpotent_ok = alg.char2() || alg.is_unitary() ||
                            alg.classification().type != InvolutionType::orthogonal || (cell.n / 2) % 2 == 0;
  while (lambda.is_zero() && !nilpotent_ok) lambda = random_fixed_scalar(alg, rng);
  const Mat u = generate_skew(alg, lambda, rng);
  const Mat one = Mat::identity(f, cell.n);
  if (lambda.is_zero()) t.count("lambda_zero");
  const auto cert = square_central_normal_form(u, lambda);
  t.check(cert.verify(u) && cert.plus + cert.minus + 2 * cert.jordan_blocks == cell.n, "normal form certificate");
  t.count("certificates");

  // identity chain
  const auto base = skew_to_metabolic(alg, u, lambda);
  const Mat se = alg.apply(base.e);
  const Fq two = f.from_int(2);
  t.check(base.e * u * se == lambda * (base.e * se) + lambda + u - (two * lambda) * base.e, "eq1 identity");
  t.count("eq1");
  const bool alt = in_alt(alg, u);
  if (alt) t.count("in_alt");
  if (alt && !lambda.is_zero()) {
    const auto chain = skew_to_alt_idempotent(alg, u, lambda);
    const Mat y = lambda.inv() * u;
    t.check(chain.e_prime - alg.apply(chain.e_prime) == y, "e' - sigma(e') = lambda^{-1} u");
    if (alg.char2()) t.check(chain.e_prime * alg.apply(chain.e_prime) == one + y, "e' sigma(e') = 1 + lambda^{-1} u");
    t.count("alt_chain");
  }

  bool constructed = false;
  if (!alg.char2_orthogonal()) {
    const auto out = invariant_quat_for_skew_element(alg, u, lambda);
    check_constructed(t, &alg, out, u, "skew element");
    constructed = out.constructed();
    if (std::find(out.route.begin(), out.route.end(), "tau=Int(u)o sigma") != out.route.end()) t.count("tau_branch");
  } else {
    bool refused = false;
    try {
      (void)invariant_quat_for_skew_element(alg, u, lambda);
    } catch (const Error& err) {
      refused = err.code() == ErrorCode::ExceptionalCase;
    }
    t.check(refused, "char-2 orthogonal skew element must be refused");
    t.count("exceptional");
    // settle the instance with the alt-element or symmetric-element criteria
    QuatOutcome<Fq> out;
    if (alt) {
      out = invariant_quat_for_alt_element(alg, u, lambda);
      t.check(out.constructed() == !lambda.is_zero(), "alt element: none exactly when lambda = 0");
    } else {
      out = invariant_quat_for_symmetric_char2(alg, u, lambda);
    }
    constructed = out.constructed();
    if (constructed) check_constructed(t, &alg, out, u, "exceptional-cell element");
    else t.count("none_by_theorem");
  }
  if (use_oracle && oracle_cell(cell)) oracle_compare(t, alg, u, constructed, "skew");
}

inline void symmetric_trial(Trial& t, const Cell& cell, Rng& rng, bool use_oracle) {
  const auto alg = random_cell_algebra(cell, rng);
  const Fq lambda = alg.field().random(rng);
  const Mat u = generate_symmetric_char2(alg, lambda, rng);
  const auto out = invariant_quat_for_symmetric_char2(alg, u, lambda);
  if (out.constructed()) check_constructed(t, &alg, out, u, "symmetric element");
  else t.count("none_by_theorem");
  if (use_oracle && oracle_cell(cell)) oracle_compare(t, alg, u, out.constructed(), "symmetric");
}

/// A tau-invariant quaternion Q in char 2 with tau orthogonal on Q: M_2 itself
/// for n = 2, a constructed invariant subalgebra for n = 4.
inline std::optional<std::pair<Alg, QuaternionSubalgebra<Fq>>> alt_shift_instance(const Cell& cell, Rng& rng) {
  const auto& f = cell.field();
  const auto alg = random_cell_algebra(cell, rng);
  if (cell.n == 2) {
    auto q = make_quaternion<Fq>(&alg, {Mat::identity(f, 2), Mat::unit(f, 2, 0, 0), Mat::unit(f, 2, 0, 1),
                                        Mat::unit(f, 2, 1, 0)},
                                 {"1", "E11", "E12", "E21"}, {Mat::unit(f, 2, 0, 0), WitnessKind::idempotent}, {});
    return std::pair{alg, std::move(q)};
  }
  const Fq lambda = f.random(rng);
  const Mat u = generate_symmetric_char2(alg, lambda, rng);
  auto out = invariant_quat_for_symmetric_char2(alg, u, lambda);
  if (!out.constructed()) return std::nullopt;
  return std::pair{alg, *std::move(out.algebra)};
}

inline void alt_shift_trial(Trial& t, const Cell& cell, Rng& rng) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto inst = alt_shift_instance(cell, rng);
    if (!inst) continue;
    const auto& [tau, q] = *inst;
    const auto& f = tau.field();
    // enumerate Q once: symmetric x with x^2 central, and Alt(Q, tau)
    const auto elems = f.elements();
    const std::size_t size = elems.size();
    std::vector<std::vector<Fq>> candidates;
    std::set<std::vector<std::uint16_t>> alt;
    SpanBasis<Fq> span(f, q.basis);
    bool tau_orthogonal_on_q = true;
    for (std::size_t code = 0; code < size * size * size * size; ++code) {
      std::vector<Fq> c;
      for (std::size_t k = 0, rest = code; k < 4; ++k, rest /= size) c.push_back(elems[rest % size]);
      const Mat x = q.element(c);
      const auto img = span.coordinates(Mat(x - tau.apply(x)));
      t.check(img.has_value(), "Q is tau-invariant");
      if (!img) return;
      std::vector<std::uint16_t> key;
      for (const auto& a : *img) key.push_back(a.code());
      alt.insert(key);
      if (tau.apply(x) == x && (x * x).as_scalar()) candidates.push_back(c);
    }
    std::vector<std::uint16_t> unit_key;
    for (const auto& a : *span.coordinates(Mat::identity(f, q.n()))) unit_key.push_back(a.code());
    if (alt.count(unit_key)) tau_orthogonal_on_q = false;
    if (!tau_orthogonal_on_q) {
      t.count("skipped_symplectic_restriction");
      continue;
    }
    const auto& c = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    const Mat x = q.element(c);
    const Fq alpha = quat_char2_alt_shift(tau, q, x);
    const auto shifted = span.coordinates(Mat(x + alpha));
    t.check(shifted.has_value(), "x + alpha in Q");
    if (!shifted) return;
    std::vector<std::uint16_t> key;
    for (const auto& a : *shifted) key.push_back(a.code());
    t.check(alt.count(key) == 1, "x + alpha in Alt(Q, tau)");
    t.count("shifted");
    return;
  }
  t.check(false, "no orthogonal tau-invariant quaternion instance found");
}

}  // namespace detail

inline TrialOutcome run_trial(FuzzKind kind, const Cell& cell, std::uint64_t seed, bool use_oracle) {
  detail::Trial t;
  Rng rng(seed);
  try {
    switch (kind) {
      case FuzzKind::square_central: detail::square_central_trial(t, cell, rng); break;
      case FuzzKind::metabolic: detail::metabolic_trial(t, cell, rng, use_oracle); break;
      case FuzzKind::hyperbolic: detail::hyperbolic_trial(t, cell, rng); break;
      case FuzzKind::skew: detail::skew_trial(t, cell, rng, use_oracle); break;
      case FuzzKind::symmetric: detail::symmetric_trial(t, cell, rng, use_oracle); break;
      case FuzzKind::alt_shift: detail::alt_shift_trial(t, cell, rng); break;
    }
  } catch (const Error& e) {
    t.check(false, std::string("error ") + std::string(to_string(e.code())) + ": " + e.detail());
  } catch (const std::exception& e) {
    t.check(false, std::string("exception: ") + e.what());
  }
  return std::move(t.out);
}

struct FuzzOptions {
  FuzzKind kind = FuzzKind::metabolic;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  bool oracle = true;
  std::vector<Cell> cells;  // empty: default_cells(kind)
  unsigned threads = 0;     // 0: thread_count()
};

inline FuzzReport run_fuzz(const FuzzOptions& opt) {
  FuzzReport report{opt.kind, opt.seed, opt.trials, opt.oracle, {}};
  const auto cells = opt.cells.empty() ? default_cells(opt.kind) : opt.cells;
  const unsigned threads = opt.threads ? opt.threads : thread_count();
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    std::vector<TrialOutcome> results(opt.trials);
    const std::uint64_t cell_seed = mix_seed(opt.seed, ci);
    parallel_for(opt.trials, threads, [&](std::size_t i) {
      results[i] = run_trial(opt.kind, cell, mix_seed(cell_seed, i), opt.oracle);
    });
    CellSummary s{cell, opt.trials, 0, {}, {}, {}};
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (const auto& [k, v] : results[i].counts) s.counts[k] += v;
      if (results[i].witness && s.witnesses.size() < 3) s.witnesses.push_back(*results[i].witness);
      if (results[i].violation) {
        ++s.violations;
        if (s.messages.size() < 5) s.messages.push_back("trial " + std::to_string(i) + ": " + *results[i].violation);
      }
    }
    report.cells.push_back(std::move(s));
  }
  return report;
}

}  // namespace involquat::harness
