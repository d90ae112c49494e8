// sharpcount: approximate and exact model counting for k-CNF formulas.
//
// Every subcommand except `gen` prints one JSON report on stdout; `gen`
// prints DIMACS. Diagnostics go to stderr. Exit status: 0 success, 1 input
// error, 2 instance too large for the requested mode.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sharpcount/approx.hpp"
#include "sharpcount/bench.hpp"
#include "sharpcount/bounded_enum.hpp"
#include "sharpcount/formula.hpp"
#include "sharpcount/sat_engine.hpp"
#include "sharpcount/vv_upper.hpp"

namespace {

using namespace sharpcount;
using nlohmann::json;

constexpr int kExitInput = 1;
constexpr int kExitGuard = 2;
constexpr std::size_t kVerifyMaxVars = 16;
constexpr std::size_t kUpperMaxLog2Solutions = 26;

/// Bad user input that is not a DIMACS parse error.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t defaultSeed() {
  if (const char* env = std::getenv("SHARPCOUNT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("SHARPCOUNT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

CnfFormula loadFormula(const std::string& path) {
  if (path == "-")
    return parseDimacs(std::cin);
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  return parseDimacs(in);
}

int resolveK(int requested, const CnfFormula& formula) {
  if (requested != 0) {
    if (requested < 3)
      throw InputError("--k must be at least 3");
    if (static_cast<std::size_t>(requested) < formula.width())
      throw InputError("formula has clauses of width " + std::to_string(formula.width()) + " > --k " +
                       std::to_string(requested));
    return requested;
  }
  return std::max(3, static_cast<int>(formula.width()));
}

double resolveBeta(const std::string& choice, int k) {
  if (choice == "analysis")
    return betaFor(k, BetaKind::kAnalysis);
  if (choice == "subroutine")
    return betaFor(k, BetaKind::kSubroutine);
  try {
    std::size_t used = 0;
    const double value = std::stod(choice, &used);
    if (used != choice.size())
      throw InputError("");
    return value;
  } catch (const std::exception&) {
    throw InputError("--cutoff-beta must be 'analysis', 'subroutine' or a number, got '" + choice + "'");
  }
}

RunRecord baseRecord(const std::string& command, const std::string& path, const CnfFormula& formula,
                     std::uint64_t seed) {
  RunRecord record;
  record.command = command;
  record.instance = describe(formula);
  record.instance.file = path;
  record.seed = seed;
  return record;
}

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit(const json& report) { std::cout << report.dump() << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate and exact model counting for k-CNF formulas"};
  app.require_subcommand(1);

  std::string path = "-";
  int k = 0;
  double epsilon = 0.2;
  double delta = 1.0 / 12.0;
  std::optional<std::uint64_t> seedFlag;
  unsigned workers = 1;

  auto addSeed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seedFlag, "Master seed (default: $SHARPCOUNT_SEED or 1)");
  };

  // count
  auto* count = app.add_subcommand("count", "Hybrid approximate counter (enumerate, then sample)");
  std::string cutoffBeta = "analysis";
  std::optional<Count> forcedCutoff;
  bool verify = false;
  count->add_option("file", path, "DIMACS file or '-' for stdin");
  count->add_option("--k", k, "Clause width bound (default: formula width, at least 3)");
  count->add_option("--epsilon", epsilon, "Target e^epsilon approximation")->check(CLI::PositiveNumber);
  count->add_option("--delta", delta, "Failure budget of the enumeration phase")->check(CLI::Range(0.0, 1.0));
  count->add_option("--cutoff-beta", cutoffBeta, "analysis | subroutine | <value>");
  count->add_option("--cutoff", forcedCutoff, "Force the enumeration threshold N");
  count->add_option("--workers", workers, "Sampling threads")->check(CLI::PositiveNumber);
  count->add_flag("--verify", verify, "Also report the brute-force count (n <= 16)");
  addSeed(count);

  // lower
  auto* lower = app.add_subcommand("lower", "Exact count if #F <= L, else a certified '#F > L'");
  Count threshold = 1000;
  lower->add_option("file", path, "DIMACS file or '-' for stdin");
  lower->add_option("--k", k, "Clause width bound");
  lower->add_option("-L,--threshold", threshold, "Threshold L")->check(CLI::PositiveNumber);
  lower->add_option("--delta", delta, "Overall failure bound")->check(CLI::Range(0.0, 1.0));
  addSeed(lower);

  // upper
  auto* upper = app.add_subcommand("upper", "Hashing upper bound U = 2^(u+3)");
  std::size_t mu = 0;
  upper->add_option("file", path, "DIMACS file or '-' for stdin");
  upper->add_option("--mu", mu, "Lowest prefix length scanned");
  addSeed(upper);

  // exact
  auto* exact = app.add_subcommand("exact", "Exact count by DPLL (n <= 30)");
  std::string method = "dpll";
  exact->add_option("file", path, "DIMACS file or '-' for stdin");
  exact->add_option("--method", method, "dpll | brute")->check(CLI::IsMember({"dpll", "brute"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Random k-CNF instance in DIMACS");
  std::size_t genN = 20;
  std::optional<std::size_t> genM;
  double density = 4.26;
  gen->add_option("--n", genN, "Variables")->required();
  gen->add_option("--m", genM, "Clauses (default: density * n)");
  gen->add_option("--k", k, "Clause width (default 3)");
  gen->add_option("--density", density, "Clauses per variable");
  addSeed(gen);

  // bench
  auto* bench = app.add_subcommand("bench", "Scaling harness for the count command");
  std::string nRange = "20:32";
  std::size_t trials = 5;
  bool csv = false;
  bench->add_option("--n-range", nRange, "lo:hi[:step]");
  bench->add_option("--k", k, "Clause width (default 3)");
  bench->add_option("--density", density, "Clauses per variable");
  bench->add_option("--trials", trials, "Trials per n")->check(CLI::PositiveNumber);
  bench->add_option("--epsilon", epsilon, "Target e^epsilon approximation")->check(CLI::PositiveNumber);
  bench->add_option("--delta", delta, "Failure budget of the enumeration phase")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--cutoff-beta", cutoffBeta, "analysis | subroutine | <value>");
  bench->add_option("--workers", workers, "Concurrent trials")->check(CLI::PositiveNumber);
  bench->add_flag("--csv", csv, "CSV rows instead of JSON");
  addSeed(bench);

  // constants
  auto* constants = app.add_subcommand("constants", "mu_k / beta_k table");
  int kMax = 0;
  constants->add_option("--k", k, "Width (default 3)");
  constants->add_option("--k-max", kMax, "Emit a table for k..k-max");
  constants->add_flag("--csv", csv, "CSV table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    const std::uint64_t seed = seedFlag ? *seedFlag : defaultSeed();

    if (*count) {
      const CnfFormula formula = loadFormula(path);
      const int width = resolveK(k, formula);
      if (verify && formula.numVars() > kVerifyMaxVars)
        throw GuardError("--verify is limited to " + std::to_string(kVerifyMaxVars) + " variables");
      SchemeConfig config;
      config.beta = resolveBeta(cutoffBeta, width);
      config.cutoffOverride = forcedCutoff;
      config.enumerationDelta = delta;
      config.workers = workers;
      const auto start = std::chrono::steady_clock::now();
      const ApproxResult result = approximateCount(formula, width, epsilon, seed, config);
      RunRecord record = baseRecord("count", path, formula, seed);
      record.instance.k = static_cast<std::size_t>(width);
      record.params = {{"epsilon", epsilon}, {"delta", delta}, {"cutoff_beta", cutoffBeta}};
      if (forcedCutoff)
        record.params["cutoff"] = *forcedCutoff;
      record.result = toJson(result);
      record.result["growth_theory"] = std::exp2(1.0 / (2.0 - result.beta));
      if (verify)
        record.result["brute_force_count"] = bruteForceCount(formula);
      record.wallSeconds = secondsSince(start);
      record.satQueries = result.enumeration.satQueries;
      record.samples = result.samples;
      emit(record.toJson());
    } else if (*lower) {
      const CnfFormula formula = loadFormula(path);
      const int width = resolveK(k, formula);
      const auto start = std::chrono::steady_clock::now();
      const LowerBoundReport report = lowerBoundReport(formula, width, threshold, delta, seed);
      RunRecord record = baseRecord("lower", path, formula, seed);
      record.instance.k = static_cast<std::size_t>(width);
      record.params = {{"L", threshold}, {"delta", delta}};
      record.result = {{"verdict", report.exceeds ? "more-than" : "at-most"},
                       {"threshold", report.threshold},
                       {"certified", report.certified},
                       {"enumeration", toJson(report.stats)}};
      if (report.count)
        record.result["count"] = *report.count;
      record.wallSeconds = secondsSince(start);
      record.satQueries = report.stats.satQueries;
      emit(record.toJson());
    } else if (*upper) {
      const CnfFormula formula = loadFormula(path);
      if (mu > formula.numVars())
        throw InputError("--mu exceeds the number of variables");
      if (formula.numVars() - mu > kUpperMaxLog2Solutions)
        throw GuardError("upper needs 2^(n - mu) <= 2^" + std::to_string(kUpperMaxLog2Solutions) +
                         " enumerations; raise --mu");
      const auto start = std::chrono::steady_clock::now();
      const UpperResult result = upperBound(formula, mu, seed);
      RunRecord record = baseRecord("upper", path, formula, seed);
      record.params = {{"mu", mu}};
      record.result = toJson(result);
      record.wallSeconds = secondsSince(start);
      emit(record.toJson());
    } else if (*exact) {
      const CnfFormula formula = loadFormula(path);
      if (formula.numVars() > kBruteForceMaxVars)
        throw GuardError("exact counting is limited to " + std::to_string(kBruteForceMaxVars) +
                         " variables, formula has " + std::to_string(formula.numVars()));
      const auto start = std::chrono::steady_clock::now();
      const Count models = method == "brute" ? bruteForceCount(formula) : dpllCount(formula);
      RunRecord record = baseRecord("exact", path, formula, 0);
      record.params = {{"method", method}};
      record.result = {{"count", models}};
      record.wallSeconds = secondsSince(start);
      emit(record.toJson());
    } else if (*gen) {
      const std::size_t width = k == 0 ? 3 : static_cast<std::size_t>(k);
      const std::size_t clauses =
          genM.value_or(static_cast<std::size_t>(std::llround(density * static_cast<double>(genN))));
      const CnfFormula formula = randomKCnf(genN, clauses, width, seed);
      const std::string note = "n=" + std::to_string(genN) + " m=" + std::to_string(clauses) +
                               " k=" + std::to_string(width) + " seed=" + std::to_string(seed);
      std::cout << toDimacs(formula, std::span<const std::string>(&note, 1));
    } else if (*bench) {
      BenchConfig config;
      char sep = 0;
      std::istringstream range(nRange);
      if (!(range >> config.nMin >> sep >> config.nMax) || sep != ':')
        throw InputError("--n-range must look like lo:hi or lo:hi:step");
      if (range >> sep) {
        if (sep != ':' || !(range >> config.nStep))
          throw InputError("--n-range must look like lo:hi or lo:hi:step");
      }
      config.k = k == 0 ? 3 : static_cast<std::size_t>(k);
      config.density = density;
      config.trials = trials;
      config.epsilon = epsilon;
      config.masterSeed = seed;
      config.workers = workers;
      config.scheme.enumerationDelta = delta;
      config.scheme.beta = resolveBeta(cutoffBeta, static_cast<int>(config.k));
      if (config.nMax > kExactCountMaxVars)
        throw GuardError("bench is limited to n <= " + std::to_string(kExactCountMaxVars));
      const auto records = runBench(config);
      if (csv) {
        std::cout << recordsCsv(records);
      } else {
        json runs = json::array();
        for (const auto& r : records)
          runs.push_back(r.toJson());
        json report = {{"schema", kReportSchema}, {"command", "bench"}, {"seed", seed}, {"runs", runs},
                       {"params", {{"n_range", nRange}, {"k", config.k}, {"density", density},
                                   {"trials", trials}, {"epsilon", epsilon}, {"cutoff_beta", cutoffBeta}}}};
        const double beta = *config.scheme.beta;
        report["theoretical_slope"] = 1.0 / (2.0 - beta);
        try {
          report["fit"] = toJson(fitExponent(records));
        } catch (const InsufficientDataError& e) {
          report["fit"] = nullptr;
          report["fit_error"] = e.what();
        }
        emit(report);
      }
    } else if (*constants) {
      const int kMin = k == 0 ? 3 : k;
      if (kMin < 3)
        throw InputError("--k must be at least 3");
      const int kLast = std::max(kMin, kMax);
      if (csv) {
        std::cout << constantsCsv(kMin, kLast);
      } else if (kLast == kMin) {
        json report = constantsFor(kMin);
        report["schema"] = kReportSchema;
        report["command"] = "constants";
        emit(report);
      } else {
        json table = json::array();
        for (int w = kMin; w <= kLast; ++w)
          table.push_back(constantsFor(w));
        emit({{"schema", kReportSchema}, {"command", "constants"}, {"table", table}});
      }
    }
  } catch (const GuardError& e) {
    std::cerr << "sharpcount: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "sharpcount: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
