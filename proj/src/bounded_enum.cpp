#include "sharpcount/bounded_enum.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sharpcount/rng.hpp"

namespace sharpcount {

namespace {

struct SearchNode {
  CnfFormula residual;
  std::uint64_t depth = 0;
};

/// Lowest-index variable among the shortest clauses of `residual`.
Var branchVariable(const CnfFormula& residual) {
  std::size_t shortest = SIZE_MAX;
  Var best = 0;
  for (const Clause& clause : residual.clauses()) {
    if (clause.empty() || clause.size() > shortest)
      continue;
    const Var first = clause.literals().front().var();
    if (clause.size() < shortest || first < best) {
      shortest = clause.size();
      best = first;
    }
  }
  return best;
}

Count saturatingPow2(std::uint64_t exponent) {
  return exponent >= 63 ? std::numeric_limits<Count>::max() : Count{1} << exponent;
}

}  // namespace

double perQueryDelta(std::size_t numVars, Count threshold, double deltaTotal) {
  const double n = static_cast<double>(std::max<std::size_t>(numVars, 1));
  return deltaTotal / (2.0 * n * (static_cast<double>(threshold) + 1.0));
}

EnumOutcome countUpTo(const CnfFormula& formula, int k, Count threshold, double deltaTotal, std::uint64_t seed,
                      const SolverConfig& solver) {
  if (threshold == 0)
    throw std::invalid_argument("enumeration threshold N must be at least 1");
  if (threshold > (Count{1} << 62))
    throw std::invalid_argument("enumeration threshold N must not exceed 2^62");
  if (!(deltaTotal > 0.0 && deltaTotal < 1.0))
    throw std::invalid_argument("overall failure bound must lie in (0,1)");

  EnumOutcome out;
  out.perQueryDelta = perQueryDelta(formula.numVars(), threshold, deltaTotal);
  TreeStats& stats = out.stats;

  std::uint64_t queryIndex = 0;
  auto query = [&](const CnfFormula& f) {
    ++stats.satQueries;
    SatOutcome o = decide(f, k, out.perQueryDelta, deriveSeed(seed, queryIndex++), solver);
    if (!o.found() && o.bestEffort)
      ++stats.bestEffortQueries;
    return o.found();
  };

  stats.nodesVisited = 1;
  if (!query(formula)) {
    stats.completed = true;
    out.result = EnumResult::exact(0, stats.bestEffortQueries == 0);
    return out;
  }

  // Every node on the stack has a verified witness in its own subtree, and
  // the subtrees are disjoint from each other and from finished leaves, so
  // `finished + stack.size()` is a certified lower bound on #F.
  std::vector<SearchNode> stack;
  stack.push_back({restrict(formula, {}), 0});
  Count finished = 0;
  auto exceeded = [&] { return finished + stack.size() > threshold; };

  while (!stack.empty()) {
    SearchNode node = std::move(stack.back());
    stack.pop_back();

    if (node.residual.numClauses() == 0) {
      ++stats.solutionLeaves;
      const Count room = threshold + 1 - finished - stack.size();
      finished += std::min(saturatingPow2(formula.numVars() - node.depth), room);
      if (exceeded()) {
        out.result = EnumResult::moreThan(threshold);
        return out;
      }
      continue;
    }

    const Var x = branchVariable(node.residual);
    for (bool value : {true, false}) {
      CnfFormula child = restrict(node.residual, PartialAssignment{{x, value}});
      if (!query(child))
        continue;
      ++stats.nodesVisited;
      stats.maxDepth = std::max(stats.maxDepth, node.depth + 1);
      stack.push_back({std::move(child), node.depth + 1});
      if (exceeded()) {
        out.result = EnumResult::moreThan(threshold);
        return out;
      }
    }
  }

  stats.completed = true;
  out.result = EnumResult::exact(finished, stats.bestEffortQueries == 0);
  return out;
}

LowerBoundReport lowerBoundReport(const CnfFormula& formula, int k, Count threshold, double deltaTotal,
                                  std::uint64_t seed, const SolverConfig& solver) {
  EnumOutcome run = countUpTo(formula, k, threshold, deltaTotal, seed, solver);
  LowerBoundReport report;
  report.threshold = threshold;
  report.stats = run.stats;
  report.exceeds = !run.result.isExact();
  report.certified = run.result.certified;
  if (run.result.isExact())
    report.count = run.result.value;
  return report;
}

}  // namespace sharpcount
