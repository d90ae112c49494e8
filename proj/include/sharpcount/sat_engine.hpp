#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sharpcount/formula.hpp"

namespace sharpcount {

enum class SolverKind {
  kSchoeningRandomized,
  kDeterministicExhaustive,
};

struct SolverConfig {
  SolverKind kind = SolverKind::kSchoeningRandomized;
  /// Flips per walk try, in units of the number of occurring variables.
  double walkLengthFactor = 3.0;
  /// Ceiling on walk tries per decide() call. Calls that would need more
  /// tries for their failure bound stop here and are flagged best-effort.
  std::uint64_t maxTries = std::uint64_t{1} << 16;
};

/// Result of a one-sided SAT query. A witness, when present, has been
/// checked against the queried formula.
struct SatOutcome {
  std::optional<Assignment> witness;
  std::uint64_t tries = 0;
  /// The requested failure bound needed more tries than maxTries allowed.
  bool bestEffort = false;

  bool found() const { return witness.has_value(); }
};

/// Partial sum of sum_{j=1..terms} 1 / (j (j + 1/(k-1))).
double muPartialSum(int k, std::uint64_t terms);

/// The PPSZ series constant mu_k to absolute error below `tol`.
double computeMu(int k, double tol = 1e-12);

enum class BetaKind {
  /// 1 - mu_k / (k - 1): the PPSZ / Hertli exponent used for the cutoff.
  kAnalysis,
  /// 0.4151 for k = 3, log2(2(k-1)/k) otherwise.
  kDeterministic,
  /// log2(2(k-1)/k): the exponent of the random walk actually run here.
  kSubroutine,
};

double betaFor(int k, BetaKind kind);

/// One random-walk try: uniform start, then up to walkLengthFactor * n'
/// flips of a uniformly chosen variable from a uniformly chosen unsatisfied
/// clause (n' = variables occurring in `formula`).
SatOutcome walkTry(const CnfFormula& formula, std::uint64_t seed, const SolverConfig& config = {});

/// Single-try success bound q = (k / (2(k-1)))^n used to size repetitions.
double walkSuccessBound(std::size_t numVars, int k);

/// ceil(ln(1/delta) / ln(1/(1-q))), before applying the try ceiling.
std::uint64_t requiredTries(std::size_t numVars, int k, double delta);

/// Boosted one-sided decision. Never returns a witness for an unsatisfiable
/// formula; for a satisfiable one misses with probability <= delta unless
/// the outcome is flagged best-effort.
SatOutcome decide(const CnfFormula& formula, int k, double delta, std::uint64_t seed,
                  const SolverConfig& config = {});

}  // namespace sharpcount
