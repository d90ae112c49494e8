#include "sharpcount/bounded_enum.hpp"

#include <gtest/gtest.h>

#include "sharpcount/rng.hpp"
#include "test_util.hpp"

using namespace sharpcount;
using sharpcount::testing::allModels;

namespace {

Count oracle(const CnfFormula& f) { return allModels(f).size(); }

}  // namespace

TEST(CountUpToTest, SingleClause) {
  const CnfFormula f(3, {Clause{1, 2, 3}});
  EXPECT_EQ(countUpTo(f, 3, 10, 0.01, 1).result, EnumResult::exact(7, true));
  EXPECT_EQ(countUpTo(f, 3, 7, 0.01, 1).result, EnumResult::exact(7, true));
  EXPECT_EQ(countUpTo(f, 3, 5, 0.01, 1).result, EnumResult::moreThan(5));
  EXPECT_EQ(countUpTo(f, 3, 6, 0.01, 1).result, EnumResult::moreThan(6));
}

TEST(CountUpToTest, RandomMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CnfFormula f = randomKCnf(12, 50, 3, seed);
    const EnumOutcome out = countUpTo(f, 3, Count{1} << 12, 1e-3, seed);
    ASSERT_TRUE(out.result.isExact());
    EXPECT_EQ(out.result.value, bruteForceCount(f)) << "seed " << seed;
    EXPECT_TRUE(out.stats.completed);
  }
}

TEST(CountUpToTest, Errors) {
  const CnfFormula f(3, {Clause{1}});
  EXPECT_THROW(countUpTo(f, 3, 0, 0.1, 1), std::invalid_argument);
  EXPECT_THROW(countUpTo(f, 3, 4, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(countUpTo(f, 3, 4, 1.0, 1), std::invalid_argument);
}

TEST(CountUpToTest, EmptyResidualShortcut) {
  // No clauses at all: one node, no branching.
  const EnumOutcome out = countUpTo(CnfFormula(20), 3, Count{1} << 20, 0.1, 3);
  EXPECT_EQ(out.result, EnumResult::exact(Count{1} << 20, true));
  EXPECT_EQ(out.stats.nodesVisited, 1u);
  EXPECT_EQ(out.stats.solutionLeaves, 1u);
}

TEST(CountUpToTest, PerQueryDelta) {
  EXPECT_DOUBLE_EQ(perQueryDelta(10, 99, 0.5), 0.5 / (2.0 * 10 * 100));
  const EnumOutcome out = countUpTo(CnfFormula(4, {Clause{1, 2}}), 3, 15, 0.3, 1);
  EXPECT_DOUBLE_EQ(out.perQueryDelta, 0.3 / (2.0 * 4 * 16));
}

TEST(CountUpToTest, Deterministic) {
  const CnfFormula f = randomKCnf(14, 45, 3, 8);
  const EnumOutcome a = countUpTo(f, 3, 200, 0.01, 5);
  const EnumOutcome b = countUpTo(f, 3, 200, 0.01, 5);
  EXPECT_EQ(a.result, b.result);
  EXPECT_EQ(a.stats, b.stats);
}

TEST(LowerBoundReportTest, Examples) {
  const LowerBoundReport unsat = lowerBoundReport(CnfFormula(2, {Clause{1}, Clause{-1}}), 3, 1, 0.1, 1);
  EXPECT_FALSE(unsat.exceeds);
  EXPECT_EQ(unsat.count, Count{0});

  const LowerBoundReport empty = lowerBoundReport(CnfFormula(10), 3, 100, 0.1, 1);
  EXPECT_TRUE(empty.exceeds);
  EXPECT_FALSE(empty.count.has_value());
  EXPECT_EQ(empty.threshold, 100u);

  const LowerBoundReport unit = lowerBoundReport(CnfFormula(6, {Clause{1}}), 3, 40, 0.1, 1);
  EXPECT_FALSE(unit.exceeds);
  EXPECT_EQ(unit.count, Count{32});
}

// Randomized suite checking the enumeration invariants against the
// truth-table oracle.
TEST(CountUpToProperty, OracleSoundnessAndTreeLaws) {
  int exactRuns = 0, moreThanRuns = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    SplitMix64 rng(deriveSeed(seed, 99));
    const std::size_t n = 4 + rng.below(12);
    const double density = 1.0 + 4.5 * static_cast<double>(rng.below(1000)) / 1000.0;
    const auto m = static_cast<std::size_t>(density * static_cast<double>(n));
    const CnfFormula f = randomKCnf(n, m, 3, seed);
    const Count truth = oracle(f);
    // Mix thresholds that are below, at, and above the count.
    const Count threshold = seed % 3 == 0 ? Count{1} << n : 1 + rng.below(std::max<Count>(truth * 2, 2));

    const EnumOutcome out = countUpTo(f, 3, threshold, 1e-3, seed);
    const TreeStats& s = out.stats;
    EXPECT_LE(s.satQueries, 2 * s.nodesVisited);
    EXPECT_LE(s.maxDepth, n);
    if (out.result.isExact()) {
      ++exactRuns;
      EXPECT_LE(out.result.value, threshold);
      EXPECT_EQ(out.result.value, truth) << toDimacs(f);
      ASSERT_TRUE(s.completed);
      EXPECT_LE(s.nodesVisited, n * s.solutionLeaves + 1);
    } else {
      ++moreThanRuns;
      EXPECT_EQ(out.result.value, threshold);
      ASSERT_GT(truth, threshold) << toDimacs(f);  // never wrong
      EXPECT_FALSE(s.completed);
    }
  }
  EXPECT_GT(exactRuns, 50);
  EXPECT_GT(moreThanRuns, 50);
}

TEST(CountUpToProperty, ExhaustiveSolverGivesIdenticalCounts) {
  SolverConfig exact;
  exact.kind = SolverKind::kDeterministicExhaustive;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const CnfFormula f = randomKCnf(11, 40, 3, seed);
    const EnumOutcome out = countUpTo(f, 3, Count{1} << 11, 0.5, seed, exact);
    EXPECT_EQ(out.result, EnumResult::exact(bruteForceCount(f), true));
  }
}
