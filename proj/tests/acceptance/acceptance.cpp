// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "involquat/harness/harness.hpp"

using namespace involquat;
using namespace involquat::harness;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t count(const CellSummary& c, const std::string& key) {
  const auto it = c.counts.find(key);
  return it == c.counts.end() ? 0 : it->second;
}

bool char2_orthogonal(const Cell& c) { return c.q % 2 == 0 && c.type == InvolutionType::orthogonal; }

void first_failure(Verdict& v, const FuzzReport& r) {
  for (const auto& c : r.cells)
    for (const auto& m : c.messages) v.require(false, c.cell.name() + ": " + m);
}

void claims(Verdict& v, const FixtureReport& r) {
  for (const auto& c : r.claims) v.require(c.pass, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  v.require(!r.claims.empty(), "no claims evaluated");
}

int failures = 0;

void report(int id, const std::string& title, const Verdict& v, double secs, double limit, const std::string& info) {
  const bool in_time = limit <= 0 || secs < limit;
  const bool ok = v.pass && in_time;
  if (!ok) ++failures;
  std::string detail = info;
  if (!v.pass) detail = v.detail;
  else if (!in_time) detail = "too slow";
  std::printf("%s criterion %d: %s [%.2fs%s] %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              limit > 0 ? (" < " + std::to_string(static_cast<int>(limit)) + "s").c_str() : "", detail.c_str());
  std::fflush(stdout);
}

FuzzReport suite(FuzzKind kind, std::uint64_t trials, std::uint64_t seed, std::vector<Cell> cells = {}) {
  FuzzOptions opt;
  opt.kind = kind;
  opt.trials = trials;
  opt.seed = seed;
  opt.cells = std::move(cells);
  return run_fuzz(opt);
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  {
    const auto t0 = clock::now();
    Verdict v;
    const auto r = verify_metabolic_example();
    claims(v, r);
    report(1, "metabolic example over GF(2), GF(3), GF(5), Q", v, seconds_since(t0), 1.0,
           std::to_string(r.claims.size()) + " claims");
  }
  {
    const auto t0 = clock::now();
    Verdict v;
    claims(v, verify_metabolic_example_oracle());
    report(2, "metabolic example, exhaustive GF(2) oracle", v, seconds_since(t0), 30.0, "65536 candidates, none");
  }
  {
    const auto t0 = clock::now();
    Verdict v;
    const auto r = verify_symmetric_example(true);
    claims(v, r);
    report(3, "char-2 symmetric example over GF(2), GF(4)", v, seconds_since(t0), 30.0,
           std::to_string(r.claims.size()) + " claims");
  }

  std::uint64_t certificates = 0;
  Verdict cert;
  auto certify = [&](const FuzzReport& r) {
    for (const auto& c : r.cells) {
      certificates += count(c, "certificates");
      cert.require(count(c, "certificates") == c.trials, c.cell.name() + ": missing normal form certificates");
    }
    for (const auto& c : r.cells)
      for (const auto& m : c.messages)
        if (m.find("certificate") != std::string::npos) cert.require(false, c.cell.name() + ": " + m);
  };

  {
    const auto t0 = clock::now();
    Verdict v;
    const auto r = suite(FuzzKind::square_central, 1000, 4);
    first_failure(v, r);
    v.require(r.violations() == 0, "violations");
    std::uint64_t yes = 0;
    for (const auto& c : r.cells) {
      v.require(count(c, "validated") == count(c, "criterion_holds"), c.cell.name() + ": unvalidated success");
      v.require(count(c, "criterion_holds") + count(c, "none_by_theorem") == c.trials, c.cell.name() + ": lost trials");
      yes += count(c, "criterion_holds");
    }
    certify(r);
    report(4, "split quaternion iff dim (lambda+u)A = 1/2 dim A", v, seconds_since(t0), 60.0,
           std::to_string(r.cells.size()) + " cells x 1000, " + std::to_string(yes) + " constructed, 0 violations");
  }

  FuzzReport metabolic;
  {
    const auto t0 = clock::now();
    Verdict v;
    metabolic = suite(FuzzKind::metabolic, 1000, 5);
    first_failure(v, metabolic);
    v.require(metabolic.violations() == 0, "violations");
    std::uint64_t negatives = 0, confirmed = 0;
    for (const auto& c : metabolic.cells) {
      v.require(count(c, "validated") + count(c, "none_by_theorem") == c.trials, c.cell.name() + ": unvalidated success");
      if (c.cell.q == 2 && c.cell.n == 4) {
        negatives += count(c, "none_by_theorem");
        confirmed += count(c, "oracle_none");
        v.require(count(c, "oracle_checked") == c.trials, c.cell.name() + ": oracle skipped");
        v.require(count(c, "oracle_none") == count(c, "none_by_theorem"), c.cell.name() + ": oracle mismatch");
      }
    }
    v.require(negatives > 0, "no GF(2)/n=4 negatives generated");
    certify(metabolic);
    report(5, "invariant quaternion for metabolic e iff criterion", v, seconds_since(t0), 300.0,
           std::to_string(metabolic.cells.size()) + " cells x 1000, GF(2)/n=4 negatives " + std::to_string(confirmed) +
               "/" + std::to_string(negatives) + " oracle-confirmed");
  }

  FuzzReport skew;
  {
    const auto t0 = clock::now();
    const auto hyper = suite(FuzzKind::hyperbolic, 1000, 6);
    Verdict v;
    first_failure(v, hyper);
    certify(hyper);
    skew = suite(FuzzKind::skew, 1000, 8);
    certify(skew);
    const double secs = seconds_since(t0);
    cert.require(v.pass, v.detail);
    report(6, "normal form certificates P x P^-1 = canonical, m+n+2k = side", cert, secs, 0,
           std::to_string(certificates) + " certificates");
  }
  {
    const auto t0 = clock::now();
    Verdict v;
    std::uint64_t converted = 0;
    for (const auto& c : metabolic.cells) {
      if (char2_orthogonal(c.cell)) {
        v.require(count(c, "no_half_unit") == c.trials, c.cell.name() + ": half unit found in char-2 orthogonal cell");
      } else {
        v.require(count(c, "no_half_unit") == 0, c.cell.name() + ": half unit missing");
        v.require(count(c, "hyperbolized") == c.trials, c.cell.name() + ": hyperbolization failed");
        converted += count(c, "hyperbolized");
      }
    }
    for (const auto& c : metabolic.cells)
      for (const auto& m : c.messages)
        if (m.find("half unit") != std::string::npos || m.find("hyperbolized") != std::string::npos)
          v.require(false, c.cell.name() + ": " + m);
    report(7, "half unit absent exactly on char-2 orthogonal cells; metabolic -> hyperbolic", v, seconds_since(t0), 0,
           std::to_string(converted) + " idempotents hyperbolized");
  }
  {
    const auto t0 = clock::now();
    Verdict v;
    first_failure(v, skew);
    v.require(skew.violations() == 0, "violations");
    std::uint64_t built = 0, exceptional = 0, chains = 0, oracle = 0;
    for (const auto& c : skew.cells) {
      v.require(count(c, "eq1") == c.trials, c.cell.name() + ": eq1 identity not checked on every trial");
      if (char2_orthogonal(c.cell)) {
        v.require(count(c, "exceptional") == c.trials, c.cell.name() + ": exceptional case not refused");
        exceptional += count(c, "exceptional");
      } else {
        v.require(count(c, "validated") == c.trials, c.cell.name() + ": constructor failed outside the exceptional case");
        built += count(c, "validated");
      }
      chains += count(c, "alt_chain");
      oracle += count(c, "oracle_checked");
    }
    v.require(chains > 0, "alt idempotent chain never exercised");
    report(8, "skew square-central chains", v, seconds_since(t0), 0,
           std::to_string(built) + " constructed, " + std::to_string(exceptional) + " exceptional, " +
               std::to_string(chains) + " e' chains, " + std::to_string(oracle) + " oracle checks");
  }
  {
    const auto t0 = clock::now();
    Verdict v;
    const std::vector<Cell> cells{{2, 2, InvolutionType::orthogonal},
                                  {4, 2, InvolutionType::orthogonal},
                                  {8, 2, InvolutionType::orthogonal},
                                  {2, 4, InvolutionType::orthogonal},
                                  {4, 4, InvolutionType::orthogonal}};
    const auto r = suite(FuzzKind::alt_shift, 20, 9, cells);
    first_failure(v, r);
    v.require(r.violations() == 0, "violations");
    v.require(r.total("shifted") == 100, "expected 100 shifted elements");
    report(9, "alt shift x + alpha in Alt(Q, tau)", v, seconds_since(t0), 1.0,
           std::to_string(r.total("shifted")) + " elements");
  }
  return failures == 0 ? 0 : 1;
}
