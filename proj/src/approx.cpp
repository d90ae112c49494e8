#include "sharpcount/approx.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sharpcount/rng.hpp"

namespace sharpcount {

namespace {

constexpr std::uint64_t kSampleBlock = 4096;

void requireEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be a positive real");
}

}  // namespace

double cutoffFraction(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1), got " + std::to_string(beta));
  return (1.0 - beta) / (2.0 - beta);
}

Cutoff cutoff(int /*k*/, double beta, std::size_t numVars) {
  Cutoff result;
  result.fraction = cutoffFraction(beta);
  if (numVars == 0)
    throw std::invalid_argument("cutoff needs at least one variable");
  const double raw = std::ceil(std::exp2(result.fraction * static_cast<double>(numVars)));
  const double all = std::exp2(static_cast<double>(numVars));
  const double threshold = std::max(1.0, std::min(raw, all));
  if (threshold > std::exp2(static_cast<double>(kExactCountMaxVars)))
    throw GuardError("cutoff threshold 2^" + std::to_string(std::log2(threshold)) + " exceeds 2^" +
                     std::to_string(kExactCountMaxVars));
  result.threshold = static_cast<Count>(threshold);
  return result;
}

std::uint64_t sampleCount(std::size_t numVars, double epsilon, Count floor, const SchemeConfig& config) {
  requireEpsilon(epsilon);
  if (floor == 0)
    throw std::invalid_argument("sampling floor must be at least 1");
  const double t = std::ceil(config.monteCarloConstant * std::exp2(static_cast<double>(numVars)) /
                             (epsilon * epsilon * static_cast<double>(floor)));
  if (!(t <= static_cast<double>(config.maxSamples)))
    throw GuardError("Monte Carlo would need " + std::to_string(t) + " samples, ceiling is " +
                     std::to_string(config.maxSamples));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

SampleEstimate sampleEstimate(const CnfFormula& formula, double epsilon, Count floor, std::uint64_t seed,
                              const SchemeConfig& config) {
  SampleEstimate out;
  out.samples = sampleCount(formula.numVars(), epsilon, floor, config);
  const std::uint64_t blocks = (out.samples + kSampleBlock - 1) / kSampleBlock;
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(blocks)));

  std::atomic<std::uint64_t> nextBlock{0};
  std::atomic<std::uint64_t> hits{0};
  auto work = [&] {
    BitVector x(formula.numVars());
    std::uint64_t local = 0;
    for (std::uint64_t b = nextBlock++; b < blocks; b = nextBlock++) {
      SplitMix64 rng(deriveSeed(seed, b));
      const std::uint64_t end = std::min(out.samples, (b + 1) * kSampleBlock);
      for (std::uint64_t i = b * kSampleBlock; i < end; ++i) {
        for (auto& word : x.words())
          word = rng();
        x.clearPadding();
        local += evaluateBits(formula, x);
      }
    }
    hits += local;
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w)
      pool.emplace_back(work);
    work();
  }
  out.hits = hits;
  out.estimate = static_cast<double>(out.hits) * std::exp2(static_cast<double>(formula.numVars())) /
                 static_cast<double>(out.samples);
  return out;
}

const char* toString(ApproxMode mode) {
  return mode == ApproxMode::kExactFromEnumeration ? "exact-from-enumeration" : "monte-carlo-sampled";
}

ApproxResult approximateCount(const CnfFormula& formula, int k, double epsilon, std::uint64_t seed,
                              const SchemeConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  requireEpsilon(epsilon);
  if (k < 3)
    throw std::invalid_argument("k must be at least 3");

  ApproxResult result;
  result.epsilon = epsilon;
  result.seed = seed;
  result.beta = config.beta.value_or(betaFor(k, BetaKind::kAnalysis));
  const Cutoff cut = cutoff(k, result.beta, std::max<std::size_t>(formula.numVars(), 1));
  result.cutoffFraction = cut.fraction;
  result.cutoff = config.cutoffOverride.value_or(cut.threshold);

  const EnumOutcome enumeration = countUpTo(formula, k, result.cutoff, config.enumerationDelta,
                                            deriveSeed(seed, Stream::kEnumeration), config.solver);
  result.enumeration = enumeration.stats;
  result.certified = enumeration.result.certified;
  if (enumeration.result.isExact()) {
    result.mode = ApproxMode::kExactFromEnumeration;
    result.estimate = static_cast<double>(enumeration.result.value);
  } else {
    result.mode = ApproxMode::kMonteCarloSampled;
    const SampleEstimate sampled =
        sampleEstimate(formula, epsilon, result.cutoff, deriveSeed(seed, Stream::kSampling), config);
    result.estimate = sampled.estimate;
    result.samples = sampled.samples;
    result.hits = sampled.hits;
  }
  result.elapsedSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SixteenApproxResult sixteenApprox(const CnfFormula& formula, int k, std::size_t mu, std::uint64_t seed,
                                  const SchemeConfig& config) {
  SixteenApproxResult result;
  result.upper = upperBound(formula, mu, deriveSeed(seed, Stream::kHashing));
  if (result.upper.u > mu) {
    result.fromUpperBound = true;
    result.estimate = std::ldexp(1.0, static_cast<int>(result.upper.u));
    return result;
  }
  if (mu + 3 > kExactCountMaxVars)
    throw GuardError("enumeration threshold 2^" + std::to_string(mu + 3) + " is too large");
  const Count threshold = Count{1} << (mu + 3);
  const EnumOutcome run = countUpTo(formula, k, threshold, config.enumerationDelta,
                                    deriveSeed(seed, Stream::kEnumeration), config.solver);
  result.enumeration = run.result;
  result.estimate = run.result.isExact() ? static_cast<double>(run.result.value) : static_cast<double>(threshold);
  return result;
}

}  // namespace sharpcount
