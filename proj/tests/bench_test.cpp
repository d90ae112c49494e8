#include "sharpcount/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sharpcount/rng.hpp"

using namespace sharpcount;

namespace {

std::vector<RunRecord> synthetic(double slope, double noise, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<RunRecord> records;
  for (std::size_t n = 10; n <= 30; n += 2) {
    for (int t = 0; t < 5; ++t) {
      RunRecord r;
      r.instance.n = n;
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      r.wallSeconds = 1e-3 * std::exp2(slope * static_cast<double>(n)) * (1.0 + noise * (2.0 * u - 1.0));
      records.push_back(r);
    }
  }
  return records;
}

}  // namespace

TEST(FitExponentTest, ExactLine) {
  const ScalingFit fit = fitExponent(synthetic(0.5, 0.0, 1));
  EXPECT_NEAR(fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log2(1e-3), 1e-9);
  EXPECT_NEAR(fit.residual, 0.0, 1e-9);
  EXPECT_EQ(fit.points.size(), 11u);
}

TEST(FitExponentTest, NoisyLine) {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_NEAR(fitExponent(synthetic(0.62, 0.05, seed)).slope, 0.62, 0.03);
}

TEST(FitExponentTest, InsufficientData) {
  std::vector<RunRecord> records;
  for (std::size_t n : {10u, 12u, 14u})
    for (int t = 0; t < 5; ++t) {
      RunRecord r;
      r.instance.n = n;
      r.wallSeconds = 1.0;
      records.push_back(r);
    }
  EXPECT_THROW(fitExponent(records), InsufficientDataError);

  // Four points but only two trials at one of them.
  RunRecord extra;
  extra.instance.n = 16;
  extra.wallSeconds = 1.0;
  records.push_back(extra);
  records.push_back(extra);
  EXPECT_THROW(fitExponent(records), InsufficientDataError);
  records.push_back(extra);
  EXPECT_NO_THROW(fitExponent(records));
}

TEST(RunBenchTest, ReplayReproducesPayload) {
  BenchConfig config;
  config.nMin = 10;
  config.nMax = 13;
  config.trials = 3;
  config.masterSeed = 42;
  const std::vector<RunRecord> records = runBench(config);
  ASSERT_EQ(records.size(), 12u);
  EXPECT_NO_THROW(fitExponent(records));
  for (const RunRecord& r : records) {
    ASSERT_TRUE(r.instance.seed);
    const CnfFormula f = randomKCnf(r.instance.n, r.instance.m, static_cast<int>(r.instance.k), *r.instance.seed);
    nlohmann::json replay = toJson(approximateCount(f, 3, r.params["epsilon"].get<double>(), r.seed));
    nlohmann::json original = r.result;
    replay.erase("elapsed_seconds");
    original.erase("elapsed_seconds");
    EXPECT_EQ(replay, original);
  }
}

TEST(RunBenchTest, WorkerCountDoesNotChangeResults) {
  BenchConfig config;
  config.nMin = 10;
  config.nMax = 12;
  config.trials = 2;
  const auto one = runBench(config);
  config.workers = 3;
  const auto three = runBench(config);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].seed, three[i].seed);
    EXPECT_EQ(one[i].result["estimate"], three[i].result["estimate"]);
  }
}

TEST(RunRecordTest, JsonFields) {
  RunRecord r;
  r.command = "count";
  r.instance = describe(CnfFormula(3, {Clause{1, 2, 3}}));
  r.instance.file = "f.cnf";
  r.seed = 7;
  r.result = {{"estimate", 7.0}};
  const nlohmann::json j = r.toJson();
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["estimate"], 7.0);
  EXPECT_EQ(j["instance"]["n"], 3);
  EXPECT_EQ(j["instance"]["k"], 3);
  EXPECT_EQ(j["instance"]["file"], "f.cnf");
  for (const char* key : {"command", "params", "wall_seconds", "sat_queries", "samples"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(ConstantsTest, Values) {
  const nlohmann::json c3 = constantsFor(3);
  EXPECT_NEAR(c3["mu"].get<double>(), 4 - 4 * std::log(2.0), 1e-9);
  EXPECT_NEAR(c3["beta_analysis"].get<double>(), 0.3864, 1e-3);
  EXPECT_DOUBLE_EQ(c3["beta_deterministic"].get<double>(), 0.4151);
  EXPECT_NEAR(c3["growth"].get<double>(), 1.5366, 2e-4);
  EXPECT_NEAR(constantsFor(4)["growth"].get<double>(), 1.6155, 2e-4);

  std::istringstream csv(constantsCsv(3, 5));
  std::string line;
  int lines = 0;
  while (std::getline(csv, line))
    ++lines;
  EXPECT_EQ(lines, 4);
}

TEST(JsonTest, UpperResult) {
  const UpperResult r = upperBound(CnfFormula(6, {Clause{1}, Clause{-1}}), 2, 1);
  const nlohmann::json j = toJson(r);
  EXPECT_EQ(j["u"], 2);
  EXPECT_EQ(j["U"], 32.0);
  EXPECT_EQ(j["trace"].size(), 5u);
  EXPECT_EQ(j["trace"][0]["nu"], 6);
  EXPECT_EQ(j["trace"][0]["sat"], false);
}
