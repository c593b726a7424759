#include <gtest/gtest.h>

#include "involquat/harness/fixtures.hpp"
#include "involquat/harness/fuzz.hpp"

using namespace involquat;
using namespace involquat::harness;

namespace {

FuzzReport run(FuzzKind kind, std::uint64_t trials, unsigned threads) {
  FuzzOptions opt;
  opt.kind = kind;
  opt.trials = trials;
  opt.seed = 99;
  opt.threads = threads;
  return run_fuzz(opt);
}

}  // namespace

TEST(Fuzz, KindNamesRoundTrip) {
  for (auto k : {FuzzKind::square_central, FuzzKind::metabolic, FuzzKind::hyperbolic, FuzzKind::skew,
                 FuzzKind::symmetric, FuzzKind::alt_shift})
    EXPECT_EQ(parse_fuzz_kind(to_string(k)), k);
  EXPECT_FALSE(parse_fuzz_kind("bogus"));
}

TEST(Fuzz, EveryKindIsClean) {
  for (auto k : {FuzzKind::square_central, FuzzKind::metabolic, FuzzKind::hyperbolic, FuzzKind::skew,
                 FuzzKind::symmetric, FuzzKind::alt_shift}) {
    const auto r = run(k, 12, 2);
    for (const auto& c : r.cells)
      for (const auto& m : c.messages) ADD_FAILURE() << to_string(k) << " " << c.cell.name() << ": " << m;
    EXPECT_EQ(r.violations(), 0u) << to_string(k);
  }
}

TEST(Fuzz, ReportIndependentOfThreadCount) {
  const auto a = run(FuzzKind::skew, 10, 1);
  const auto b = run(FuzzKind::skew, 10, 4);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].counts, b.cells[i].counts);
}

TEST(Fixtures, AllClaimsPass) {
  const auto r = verify_worked_examples();
  for (const auto& c : r.claims) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
  EXPECT_EQ(r.claims.size(), 45u);
}
