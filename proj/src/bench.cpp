#include "sharpcount/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "sharpcount/rng.hpp"

namespace sharpcount {

using nlohmann::json;

InstanceDescriptor describe(const CnfFormula& formula) {
  return {formula.numVars(), formula.numClauses(), formula.width(), std::nullopt, std::nullopt};
}

json toJson(const InstanceDescriptor& instance) {
  json j = {{"n", instance.n}, {"m", instance.m}, {"k", instance.k}};
  if (instance.seed)
    j["seed"] = *instance.seed;
  if (instance.file)
    j["file"] = *instance.file;
  return j;
}

json RunRecord::toJson() const {
  json j = result;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["instance"] = sharpcount::toJson(instance);
  j["seed"] = seed;
  j["params"] = params;
  j["wall_seconds"] = wallSeconds;
  j["sat_queries"] = satQueries;
  j["samples"] = samples;
  return j;
}

json toJson(const TreeStats& stats) {
  return {{"nodes_visited", stats.nodesVisited},
          {"solution_leaves", stats.solutionLeaves},
          {"sat_queries", stats.satQueries},
          {"max_depth", stats.maxDepth},
          {"best_effort_queries", stats.bestEffortQueries},
          {"completed", stats.completed}};
}

json toJson(const EnumResult& result) {
  if (result.isExact())
    return {{"verdict", "exact"}, {"count", result.value}, {"certified", result.certified}};
  return {{"verdict", "more-than"}, {"threshold", result.value}};
}

json toJson(const ApproxResult& result) {
  return {{"mode", toString(result.mode)},
          {"estimate", result.estimate},
          {"cutoff", result.cutoff},
          {"cutoff_fraction", result.cutoffFraction},
          {"beta", result.beta},
          {"epsilon", result.epsilon},
          {"seed", result.seed},
          {"samples", result.samples},
          {"hits", result.hits},
          {"certified", result.certified},
          {"enumeration", toJson(result.enumeration)},
          {"elapsed_seconds", result.elapsedSeconds}};
}

json toJson(const UpperResult& result) {
  json trace = json::array();
  for (const auto& entry : result.trace)
    trace.push_back({{"nu", entry.nu}, {"sat", entry.satisfiable}, {"rank", entry.rank},
                     {"enumerated", entry.enumerated}});
  return {{"u", result.u},
          {"U", result.bound()},
          {"mu", result.mu},
          {"n", result.n},
          {"all_sat", result.allSatisfiable},
          {"rank_at_stop", result.rankAtStop},
          {"enumerated_total", result.enumeratedTotal},
          {"trace", trace}};
}

json toJson(const ScalingFit& fit) {
  json points = json::array();
  for (const auto& p : fit.points)
    points.push_back({{"n", p.n}, {"median_seconds", p.medianSeconds}, {"trials", p.trials}});
  return {{"points", points}, {"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual}};
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

}  // namespace

ScalingFit fitExponent(std::span<const RunRecord> records) {
  std::map<std::size_t, std::vector<double>> byN;
  for (const RunRecord& r : records)
    byN[r.instance.n].push_back(r.wallSeconds);
  if (byN.size() < 4)
    throw InsufficientDataError("scaling fit needs at least 4 distinct n values, got " + std::to_string(byN.size()));

  ScalingFit fit;
  for (auto& [n, times] : byN) {
    if (times.size() < 3)
      throw InsufficientDataError("scaling fit needs at least 3 trials per n, n = " + std::to_string(n) + " has " +
                                  std::to_string(times.size()));
    const double med = median(times);
    if (!(med > 0.0))
      throw InsufficientDataError("median time at n = " + std::to_string(n) + " is not positive");
    fit.points.push_back({n, med, times.size()});
  }

  const double count = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& p : fit.points) {
    sx += static_cast<double>(p.n);
    sy += std::log2(p.medianSeconds);
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0;
  for (const auto& p : fit.points) {
    const double dx = static_cast<double>(p.n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(p.medianSeconds) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& p : fit.points) {
    const double r = std::log2(p.medianSeconds) - (fit.slope * static_cast<double>(p.n) + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

std::vector<RunRecord> runBench(const BenchConfig& config) {
  if (config.nStep == 0 || config.nMin > config.nMax || config.trials == 0)
    throw std::invalid_argument("empty bench range");
  struct Job {
    std::size_t n;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t n = config.nMin; n <= config.nMax; n += config.nStep)
    for (std::size_t t = 0; t < config.trials; ++t)
      jobs.push_back({n, t});

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto [n, trial] = jobs[i];
      const std::uint64_t instanceSeed = deriveSeed(config.masterSeed, (std::uint64_t{n} << 20) | trial);
      const auto m = static_cast<std::size_t>(std::llround(config.density * static_cast<double>(n)));
      const CnfFormula formula = randomKCnf(n, m, config.k, instanceSeed);
      const std::uint64_t runSeed = deriveSeed(instanceSeed, Stream::kTrials);

      const auto start = std::chrono::steady_clock::now();
      const ApproxResult result =
          approximateCount(formula, static_cast<int>(config.k), config.epsilon, runSeed, config.scheme);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      RunRecord& record = records[i];
      record.command = "count";
      record.instance = describe(formula);
      record.instance.k = config.k;
      record.instance.seed = instanceSeed;
      record.seed = runSeed;
      record.params = {{"epsilon", config.epsilon}, {"delta", config.scheme.enumerationDelta},
                       {"density", config.density}, {"cutoff", result.cutoff}};
      record.result = toJson(result);
      record.wallSeconds = wall;
      record.satQueries = result.enumeration.satQueries;
      record.samples = result.samples;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < std::max(1u, config.workers); ++w)
      pool.emplace_back(work);
    work();
  }
  return records;
}

json constantsFor(int k) {
  const double mu = computeMu(k);
  const double analysis = betaFor(k, BetaKind::kAnalysis);
  return {{"k", k},
          {"mu", mu},
          {"beta_analysis", analysis},
          {"beta_deterministic", betaFor(k, BetaKind::kDeterministic)},
          {"beta_subroutine", betaFor(k, BetaKind::kSubroutine)},
          {"cutoff_fraction", cutoffFraction(analysis)},
          {"growth", std::exp2(1.0 / (2.0 - analysis))}};
}

std::string constantsCsv(int kMin, int kMax) {
  std::ostringstream out;
  out.precision(10);
  out << "k,mu,beta_analysis,beta_deterministic,beta_subroutine,growth\n";
  for (int k = kMin; k <= kMax; ++k) {
    const json c = constantsFor(k);
    out << k << ',' << c["mu"].get<double>() << ',' << c["beta_analysis"].get<double>() << ','
        << c["beta_deterministic"].get<double>() << ',' << c["beta_subroutine"].get<double>() << ','
        << c["growth"].get<double>() << '\n';
  }
  return out.str();
}

std::string recordsCsv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out.precision(10);
  out << "command,n,m,k,instance_seed,seed,mode,estimate,cutoff,sat_queries,samples,wall_seconds\n";
  for (const RunRecord& r : records) {
    out << r.command << ',' << r.instance.n << ',' << r.instance.m << ',' << r.instance.k << ','
        << r.instance.seed.value_or(0) << ',' << r.seed << ',' << r.result.value("mode", std::string()) << ','
        << r.result.value("estimate", 0.0) << ',' << r.result.value("cutoff", Count{0}) << ',' << r.satQueries
        << ',' << r.samples << ',' << r.wallSeconds << '\n';
  }
  return out.str();
}

}  // namespace sharpcount
