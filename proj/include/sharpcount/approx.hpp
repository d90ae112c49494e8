#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sharpcount/bounded_enum.hpp"
#include "sharpcount/formula.hpp"
#include "sharpcount/sat_engine.hpp"
#include "sharpcount/vv_upper.hpp"

namespace sharpcount {

struct SchemeConfig {
  /// Exponent used for the cutoff; defaults to betaFor(k, kAnalysis).
  std::optional<double> beta;
  /// Forces the enumeration threshold N instead of computing it.
  std::optional<Count> cutoffOverride;
  /// Failure budget of the enumeration phase.
  double enumerationDelta = 1.0 / 12.0;
  /// T = monteCarloConstant * 2^n / (eps^2 * N).
  double monteCarloConstant = 8.0;
  std::uint64_t maxSamples = std::uint64_t{1} << 36;
  unsigned workers = 1;
  SolverConfig solver;
};

struct Cutoff {
  /// f = (1 - beta) / (2 - beta), so that log2 N = f n.
  double fraction = 0.0;
  Count threshold = 1;
};

double cutoffFraction(double beta);

/// N = ceil(2^(f n)), saturating at 2^n. Throws GuardError above 2^62.
Cutoff cutoff(int k, double beta, std::size_t numVars);

/// ceil(constant * 2^n / (eps^2 * floor)); throws GuardError above maxSamples.
std::uint64_t sampleCount(std::size_t numVars, double epsilon, Count floor, const SchemeConfig& config = {});

struct SampleEstimate {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

/// X 2^n / T over T uniform assignments. Sample i is drawn from a stream
/// keyed by (seed, i / block) so the result does not depend on `workers`.
SampleEstimate sampleEstimate(const CnfFormula& formula, double epsilon, Count floor, std::uint64_t seed,
                              const SchemeConfig& config = {});

enum class ApproxMode { kExactFromEnumeration, kMonteCarloSampled };

const char* toString(ApproxMode mode);

struct ApproxResult {
  double estimate = 0.0;
  ApproxMode mode = ApproxMode::kExactFromEnumeration;
  Count cutoff = 0;
  double cutoffFraction = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  /// False when an enumeration query ran past its try ceiling.
  bool certified = true;
  TreeStats enumeration;
  double elapsedSeconds = 0.0;
};

/// Enumerate up to N solutions; if there are more, switch to sampling with
/// the certified floor #F > N.
ApproxResult approximateCount(const CnfFormula& formula, int k, double epsilon, std::uint64_t seed,
                              const SchemeConfig& config = {});

struct SixteenApproxResult {
  double estimate = 0.0;
  /// 2^u from the upper-bound scan (u > mu); otherwise enumeration decided.
  bool fromUpperBound = false;
  UpperResult upper;
  std::optional<EnumResult> enumeration;
};

/// Upper-bound scan, falling back to enumeration up to 2^(mu + 3) when the
/// scan bottoms out at u = mu.
SixteenApproxResult sixteenApprox(const CnfFormula& formula, int k, std::size_t mu, std::uint64_t seed,
                                  const SchemeConfig& config = {});

}  // namespace sharpcount
