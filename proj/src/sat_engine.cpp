#include "sharpcount/sat_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sharpcount/rng.hpp"

namespace sharpcount {

namespace {

void requireWidth(int k) {
  if (k < 3)
    throw std::invalid_argument("k must be at least 3, got " + std::to_string(k));
}

/// Integral of 1/(x(x+a)) from x to infinity.
double seriesTailIntegral(double a, double x) { return std::log1p(a / x) / a; }

}  // namespace

double muPartialSum(int k, std::uint64_t terms) {
  requireWidth(k);
  const double a = 1.0 / (k - 1);
  // Smallest terms first to keep the rounding error near one ulp of the result.
  double sum = 0.0;
  for (std::uint64_t j = terms; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    sum += 1.0 / (jd * (jd + a));
  }
  return sum;
}

double computeMu(int k, double tol) {
  requireWidth(k);
  if (!(tol > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  const double a = 1.0 / (k - 1);
  // The tail after J terms lies between the integrals from J+1 and from J;
  // adding the midpoint leaves an error of at most half the bracket width,
  // which is below 1/(2J^2).
  auto terms = static_cast<std::uint64_t>(std::ceil(1.0 / std::sqrt(tol)));
  terms = std::max<std::uint64_t>(terms, 1);
  double lower = seriesTailIntegral(a, static_cast<double>(terms + 1));
  double upper = seriesTailIntegral(a, static_cast<double>(terms));
  while ((upper - lower) / 2 >= tol) {
    terms *= 2;
    lower = seriesTailIntegral(a, static_cast<double>(terms + 1));
    upper = seriesTailIntegral(a, static_cast<double>(terms));
  }
  return muPartialSum(k, terms) + (lower + upper) / 2;
}

double betaFor(int k, BetaKind kind) {
  requireWidth(k);
  switch (kind) {
    case BetaKind::kAnalysis:
      return 1.0 - computeMu(k) / (k - 1);
    case BetaKind::kDeterministic:
      if (k == 3)
        return 0.4151;
      [[fallthrough]];
    case BetaKind::kSubroutine:
      return std::log2(2.0 * (k - 1) / k);
  }
  return 1.0;
}

//===----------------------------------------------------------------------===//
// Random walk
//===----------------------------------------------------------------------===//

namespace {

/// Clause database for repeated walk tries on one formula: true-literal
/// counts per clause, an indexed list of falsified clauses, and literal
/// occurrence lists so a flip touches only the clauses it affects.
class Walker {
 public:
  explicit Walker(const CnfFormula& formula)
      : numVars_(formula.numVars()), occurrences_(2 * (formula.numVars() + 1)), values_(formula.numVars() + 1, 0) {
    for (const Clause& clause : formula.clauses()) {
      if (clause.tautological())
        continue;
      if (clause.empty())
        hasEmptyClause_ = true;
      const auto id = static_cast<std::uint32_t>(starts_.size());
      starts_.push_back(static_cast<std::uint32_t>(literals_.size()));
      for (Literal lit : clause.literals()) {
        literals_.push_back(lit);
        occurrences_[slot(lit)].push_back(id);
      }
    }
    starts_.push_back(static_cast<std::uint32_t>(literals_.size()));
    const std::size_t numClauses = starts_.size() - 1;
    numTrue_.assign(numClauses, 0);
    whereFalse_.assign(numClauses, kNotFalse);
    numOccurring_ = formula.occurringVars().size();
  }

  std::size_t numOccurring() const { return numOccurring_; }

  std::optional<Assignment> run(SplitMix64& rng, std::uint64_t maxFlips) {
    if (hasEmptyClause_)
      return std::nullopt;
    for (Var v = 1; v <= numVars_; ++v)
      values_[v] = rng.coin();
    resetCounts();
    for (std::uint64_t step = 0; step < maxFlips && !falseClauses_.empty(); ++step) {
      const std::uint32_t c = falseClauses_[rng.below(falseClauses_.size())];
      const std::uint32_t width = starts_[c + 1] - starts_[c];
      flip(literals_[starts_[c] + rng.below(width)].var());
    }
    if (!falseClauses_.empty())
      return std::nullopt;
    Assignment result(numVars_);
    for (Var v = 1; v <= numVars_; ++v)
      result.set(v, values_[v]);
    return result;
  }

 private:
  static constexpr std::uint32_t kNotFalse = std::numeric_limits<std::uint32_t>::max();

  static std::size_t slot(Literal lit) { return 2 * lit.var() + (lit.positive() ? 1 : 0); }

  void resetCounts() {
    falseClauses_.clear();
    for (std::uint32_t c = 0; c + 1 < starts_.size(); ++c) {
      std::uint32_t count = 0;
      for (std::uint32_t i = starts_[c]; i < starts_[c + 1]; ++i)
        count += literals_[i].satisfiedBy(values_[literals_[i].var()]);
      numTrue_[c] = count;
      whereFalse_[c] = kNotFalse;
      if (count == 0)
        markFalse(c);
    }
  }

  void markFalse(std::uint32_t c) {
    whereFalse_[c] = static_cast<std::uint32_t>(falseClauses_.size());
    falseClauses_.push_back(c);
  }

  void unmarkFalse(std::uint32_t c) {
    const std::uint32_t pos = whereFalse_[c];
    const std::uint32_t last = falseClauses_.back();
    falseClauses_[pos] = last;
    whereFalse_[last] = pos;
    falseClauses_.pop_back();
    whereFalse_[c] = kNotFalse;
  }

  void flip(Var v) {
    const bool old = values_[v];
    values_[v] = !old;
    // Literal that held before the flip, then its complement.
    const Literal wasTrue(v, old);
    for (std::uint32_t c : occurrences_[slot(wasTrue)])
      if (--numTrue_[c] == 0)
        markFalse(c);
    for (std::uint32_t c : occurrences_[slot(~wasTrue)])
      if (numTrue_[c]++ == 0)
        unmarkFalse(c);
  }

  std::size_t numVars_;
  std::size_t numOccurring_ = 0;
  bool hasEmptyClause_ = false;
  std::vector<Literal> literals_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
  std::vector<std::uint8_t> values_;
  std::vector<std::uint32_t> numTrue_;
  std::vector<std::uint32_t> whereFalse_;
  std::vector<std::uint32_t> falseClauses_;
};

std::uint64_t flipBudget(std::size_t occurring, const SolverConfig& config) {
  return static_cast<std::uint64_t>(std::ceil(config.walkLengthFactor * static_cast<double>(occurring)));
}

}  // namespace

SatOutcome walkTry(const CnfFormula& formula, std::uint64_t seed, const SolverConfig& config) {
  Walker walker(formula);
  SplitMix64 rng(seed);
  SatOutcome outcome;
  outcome.tries = 1;
  if (auto found = walker.run(rng, flipBudget(walker.numOccurring(), config)); found && evaluate(formula, *found))
    outcome.witness = std::move(found);
  return outcome;
}

double walkSuccessBound(std::size_t numVars, int k) {
  requireWidth(k);
  return std::pow(k / (2.0 * (k - 1)), static_cast<double>(numVars));
}

std::uint64_t requiredTries(std::size_t numVars, int k, double delta) {
  const double q = walkSuccessBound(numVars, k);
  if (q >= 1.0)
    return 1;
  const double tries = std::ceil(std::log(1.0 / delta) / -std::log1p(-q));
  if (!(tries < 1.8e19))
    return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(tries));
}

SatOutcome decide(const CnfFormula& formula, int k, double delta, std::uint64_t seed, const SolverConfig& config) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("failure bound delta must lie in (0,1)");
  if (config.maxTries < 1)
    throw std::invalid_argument("maxTries must be at least 1");
  SatOutcome outcome;
  if (formula.hasEmptyClause())
    return outcome;

  // Unit propagation only ever refutes unsatisfiable formulas, so running it
  // first keeps the error one-sided.
  auto forced = unitPropagate(formula);
  if (!forced)
    return outcome;
  const CnfFormula residual = restrict(formula, *forced);

  auto accept = [&](const BitVector& bits) {
    Assignment witness(bits);
    for (auto [var, value] : forced->entries())
      witness.set(var, value);
    if (evaluate(formula, witness))
      outcome.witness = std::move(witness);
  };

  if (residual.numClauses() == 0) {
    accept(BitVector(formula.numVars()));
    return outcome;
  }

  if (config.kind == SolverKind::kDeterministicExhaustive) {
    const std::size_t occurring = residual.occurringVars().size();
    if (occurring > kBruteForceMaxVars)
      throw GuardError("exhaustive decision is limited to " + std::to_string(kBruteForceMaxVars) +
                       " free variables, residual has " + std::to_string(occurring));
    if (auto solution = findSolution(residual))
      accept(solution->bits());
    return outcome;
  }

  Walker walker(residual);
  const int width = std::max({k, static_cast<int>(residual.width()), 3});
  const std::uint64_t needed = requiredTries(walker.numOccurring(), width, delta);
  const std::uint64_t budget = std::min(needed, config.maxTries);
  outcome.bestEffort = needed > config.maxTries;
  const std::uint64_t flips = flipBudget(walker.numOccurring(), config);
  for (std::uint64_t t = 0; t < budget; ++t) {
    SplitMix64 rng(deriveSeed(seed, t));
    ++outcome.tries;
    if (auto found = walker.run(rng, flips)) {
      accept(found->bits());
      if (outcome.found())
        return outcome;
    }
  }
  return outcome;
}

}  // namespace sharpcount
