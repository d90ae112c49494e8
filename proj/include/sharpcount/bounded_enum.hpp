#pragma once

#include <cstdint>
#include <optional>

#include "sharpcount/formula.hpp"
#include "sharpcount/sat_engine.hpp"

namespace sharpcount {

/// Either the exact model count (at most the threshold) or a certified
/// "more than threshold" verdict.
struct EnumResult {
  enum class Kind { kExactCount, kMoreThan };

  Kind kind = Kind::kExactCount;
  /// The exact count, or the threshold N for kMoreThan.
  Count value = 0;
  /// Exact counts only: false if some SAT query ran out of its try ceiling
  /// before meeting its failure bound.
  bool certified = true;

  static EnumResult exact(Count count, bool certified) { return {Kind::kExactCount, count, certified}; }
  static EnumResult moreThan(Count threshold) { return {Kind::kMoreThan, threshold, true}; }

  bool isExact() const { return kind == Kind::kExactCount; }

  friend bool operator==(const EnumResult&, const EnumResult&) = default;
};

struct TreeStats {
  std::uint64_t nodesVisited = 0;
  /// Nodes whose residual had no clauses left (each stands for 2^v solutions).
  std::uint64_t solutionLeaves = 0;
  std::uint64_t satQueries = 0;
  std::uint64_t maxDepth = 0;
  std::uint64_t bestEffortQueries = 0;
  /// The whole tree was explored (no early MoreThan exit).
  bool completed = false;

  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

struct EnumOutcome {
  EnumResult result;
  TreeStats stats;
  double perQueryDelta = 0.0;
};

/// Per-query failure bound delta_total / (2 n (N + 1)).
double perQueryDelta(std::size_t numVars, Count threshold, double deltaTotal);

/// Depth-first enumeration of the satisfiable restrictions of `formula`,
/// counting solutions exactly up to `threshold`. A kMoreThan verdict is only
/// issued once more than `threshold` verified solutions are known, so it is
/// never wrong; kExactCount is correct with probability >= 1 - deltaTotal.
EnumOutcome countUpTo(const CnfFormula& formula, int k, Count threshold, double deltaTotal, std::uint64_t seed,
                      const SolverConfig& solver = {});

struct LowerBoundReport {
  /// #F > L, reported with certainty.
  bool exceeds = false;
  Count threshold = 0;
  /// #F when it does not exceed the threshold.
  std::optional<Count> count;
  TreeStats stats;
  bool certified = true;
};

LowerBoundReport lowerBoundReport(const CnfFormula& formula, int k, Count threshold, double deltaTotal,
                                  std::uint64_t seed, const SolverConfig& solver = {});

}  // namespace sharpcount
