#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sharpcount/approx.hpp"
#include "sharpcount/bounded_enum.hpp"
#include "sharpcount/vv_upper.hpp"

namespace sharpcount {

inline constexpr const char* kReportSchema = "sharpcount-report/1";

struct InstanceDescriptor {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  /// Generator seed for random instances.
  std::optional<std::uint64_t> seed;
  /// Source path for file instances ("-" for stdin).
  std::optional<std::string> file;
};

InstanceDescriptor describe(const CnfFormula& formula);

/// One CLI or harness run, with every seed needed to replay it.
struct RunRecord {
  std::string command;
  InstanceDescriptor instance;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  double wallSeconds = 0.0;
  std::uint64_t satQueries = 0;
  std::uint64_t samples = 0;

  nlohmann::json toJson() const;
};

struct ScalingPoint {
  std::size_t n = 0;
  double medianSeconds = 0.0;
  std::size_t trials = 0;
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  /// Least-squares slope of log2(median time) against n.
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit, in log2 units.
  double residual = 0.0;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fits log2(median wall time) = slope * n + intercept. Needs at least 4
/// distinct n, each with at least 3 trials.
ScalingFit fitExponent(std::span<const RunRecord> records);

struct BenchConfig {
  std::size_t nMin = 20;
  std::size_t nMax = 32;
  std::size_t nStep = 1;
  std::size_t k = 3;
  double density = 4.26;
  std::size_t trials = 5;
  double epsilon = 0.2;
  std::uint64_t masterSeed = 1;
  unsigned workers = 1;
  SchemeConfig scheme;
};

/// Runs the hybrid counter on fresh random k-CNF instances for every n and
/// trial. Trial (n, t) uses seed deriveSeed(masterSeed, n * 2^20 + t).
std::vector<RunRecord> runBench(const BenchConfig& config);

nlohmann::json toJson(const TreeStats& stats);
nlohmann::json toJson(const EnumResult& result);
nlohmann::json toJson(const ApproxResult& result);
nlohmann::json toJson(const UpperResult& result);
nlohmann::json toJson(const ScalingFit& fit);
nlohmann::json toJson(const InstanceDescriptor& instance);

/// JSON object with mu_k, the three beta_k values, and 2^(1/(2-beta_k)).
nlohmann::json constantsFor(int k);
/// CSV table "k,mu,beta_analysis,beta_deterministic,beta_subroutine,growth".
std::string constantsCsv(int kMin, int kMax);

/// Flat CSV of bench records, one row per run.
std::string recordsCsv(std::span<const RunRecord> records);

}  // namespace sharpcount
