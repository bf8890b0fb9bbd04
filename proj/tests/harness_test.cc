// Copyright 2026 The fairtest-sym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fairtest/errors.h"
#include "fairtest/harness.h"
#include "json.hpp"

namespace fairtest {
namespace {

FeatureSchema AgeGender() {
  return FeatureSchema({{"age", {1, 9}, FeatureKind::kNumeric, {}},
                        {"gender", {0, 1}, FeatureKind::kCategorical, {"F", "M"}}},
                       {"gender"});
}

// ---- random baseline ----

TEST(RandomBaseline, ConstantModel) {
  const FunctionModel m([](const Instance&) { return 1; });
  Rng rng(1);
  BaselineOptions opt;
  opt.limit = 5;
  const RunReport r = RandomBaseline(m, AgeGender(), opt, rng);
  EXPECT_EQ(r.mode, "random");
  EXPECT_EQ(r.at(Source::kRandom).generated, 5u);
  EXPECT_EQ(r.at(Source::kRandom).discriminatory, 0u);
}

TEST(RandomBaseline, PlantedModel) {
  const FeatureSchema s = SynthSchema();
  const FunctionModel m([](const Instance& x) { return x[2]; });
  Rng rng(2);
  const RunReport r = RandomBaseline(m, s, {}, rng);
  EXPECT_EQ(r.at(Source::kRandom).generated, 1000u);
  EXPECT_EQ(r.at(Source::kRandom).discriminatory, 1000u);
  EXPECT_EQ(r.witnesses.size(), 1000u);
}

TEST(RandomBaseline, DedupCapsAtDistinctNonProtectedVectors) {
  const FeatureSchema s({{"k", {0, 2}, FeatureKind::kNumeric, {}},
                         {"g", {0, 1}, FeatureKind::kNumeric, {}}},
                        {"g"});
  const FunctionModel m([](const Instance&) { return 0; });
  Rng rng(3);
  const RunReport r = RandomBaseline(m, s, {}, rng);
  EXPECT_EQ(r.at(Source::kRandom).generated, 3u);
  EXPECT_EQ(r.iterations, 50u * 1000u);
}

TEST(RandomBaseline, ZeroLimitRejected) {
  const FunctionModel m([](const Instance&) { return 0; });
  Rng rng(1);
  BaselineOptions opt;
  opt.limit = 0;
  EXPECT_THROW(RandomBaseline(m, AgeGender(), opt, rng), PreconditionError);
}

// ---- synthetic data ----

double PositiveRate(const Dataset& d, int gender) {
  int n = 0, pos = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.rows[i][2] != gender) continue;
    ++n;
    pos += d.labels[i];
  }
  return static_cast<double>(pos) / n;
}

TEST(SynthBiasedDataset, NoBiasMeansEqualRates) {
  Rng rng(4);
  const Dataset d = SynthBiasedDataset(0.0, 10000, rng);
  EXPECT_NEAR(PositiveRate(d, 0), PositiveRate(d, 1), 0.03);
}

TEST(SynthBiasedDataset, FullBiasGap) {
  // Expected gap: mean over uniform income of sigmoid(x + 2) - sigmoid(x - 2).
  double analytic = 0;
  for (int income = 0; income <= 10; ++income) {
    const double x = income - 5.0;
    analytic += 1 / (1 + std::exp(-(x + 2))) - 1 / (1 + std::exp(-(x - 2)));
  }
  analytic /= 11;
  Rng rng(5);
  const Dataset d = SynthBiasedDataset(1.0, 10000, rng);
  const double gap = PositiveRate(d, 1) - PositiveRate(d, 0);
  EXPECT_GE(gap, 0.25);
  EXPECT_NEAR(gap, analytic, 0.03);
}

TEST(SynthBiasedDataset, DeterministicAndValid) {
  Rng a(6), b(6);
  const Dataset x = SynthBiasedDataset(0.5, 200, a);
  const Dataset y = SynthBiasedDataset(0.5, 200, b);
  EXPECT_EQ(x.rows, y.rows);
  EXPECT_EQ(x.labels, y.labels);
  for (const Instance& r : x.rows) EXPECT_TRUE(IsValid(r, x.schema));
  EXPECT_EQ(x.schema.protected_indices(), std::vector<std::size_t>{2});
}

TEST(SynthBiasedDataset, Preconditions) {
  Rng rng(1);
  EXPECT_THROW(SynthBiasedDataset(0.5, 99, rng), PreconditionError);
  EXPECT_THROW(SynthBiasedDataset(1.5, 200, rng), PreconditionError);
}

TEST(SynthClusteredDataset, GroupsInOrder) {
  Rng rng(7);
  const Dataset d = SynthClusteredDataset(0.8, {5, 4, 3, 2}, rng);
  ASSERT_EQ(d.size(), 14u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_GE(d.rows[i][1], 9);
  for (std::size_t i = 5; i < 9; ++i) EXPECT_LE(d.rows[i][1], 1);
  for (const Instance& r : d.rows) EXPECT_TRUE(IsValid(r, d.schema));
  EXPECT_THROW(SynthClusteredDataset(0.8, {1, 2}, rng), PreconditionError);
}

// ---- reports ----

TEST(Report, EmptyTableShowsNa) {
  RunReport r;
  r.mode = "symbolic";
  const std::string text = EmitReport(r, ReportFormat::kText);
  EXPECT_NE(text.find("n/a"), std::string::npos);
  EXPECT_EQ(text.find('%'), std::string::npos);
  EXPECT_FALSE(r.SuccessRate().has_value());
}

TEST(Report, SuccessRateFormatting) {
  EXPECT_EQ(FormatSuccessRate(598, 1000), "59.8%");
  EXPECT_EQ(FormatSuccessRate(0, 0), "n/a");
  EXPECT_EQ(FormatSuccessRate(1, 3), "33.3%");
  RunReport r;
  r.at(Source::kSeed) = {1000, 598};
  EXPECT_NE(EmitReport(r, ReportFormat::kText).find("59.8%"), std::string::npos);
}

RunReport Sample() {
  RunReport r;
  r.mode = "symbolic";
  r.at(Source::kSeed) = {10, 3};
  r.at(Source::kDirected) = {4, 4};
  r.witnesses.push_back({Source::kDirected, Instance{{1, 0}}, Instance{{1, 1}}});
  r.checkpoints.push_back({14, 14, 7});
  r.config_json = R"({"limit":14})";
  r.iterations = 14;
  r.model_probes = 99;
  r.solver_calls = 5;
  r.unsat_constraints = 1;
  r.visited_constraints = 5;
  return r;
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  RunReport r = Sample();
  const std::string once = EmitReport(r, ReportFormat::kJson);
  EXPECT_EQ(EmitReport(ParseReportJson(once), ReportFormat::kJson), once);
  r.duration_ms = 12.5;
  const std::string timed = EmitReport(r, ReportFormat::kJson);
  EXPECT_EQ(EmitReport(ParseReportJson(timed), ReportFormat::kJson), timed);
  EXPECT_EQ(once.find("duration_ms"), std::string::npos);
  EXPECT_NE(timed.find("duration_ms"), std::string::npos);
}

TEST(Report, JsonIsVersioned) {
  const auto doc = nlohmann::json::parse(EmitReport(Sample(), ReportFormat::kJson));
  EXPECT_EQ(doc["format"], "fairtest-report");
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["sources"]["directed"]["indi"], 4);
  EXPECT_THROW(ParseReportJson(R"({"format":"nope"})"), Error);
}

TEST(Report, CsvOneRowPerSource) {
  const std::string csv = EmitReport(Sample(), ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "source,gen,indi,success_rate");
  EXPECT_NE(csv.find("seed,10,3,0.3\n"), std::string::npos);
  EXPECT_NE(csv.find("directed,4,4,1\n"), std::string::npos);
  EXPECT_NE(csv.find("undirected,0,0,\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Report, InvariantViolationThrows) {
  RunReport r;
  r.at(Source::kSeed) = {1, 2};
  EXPECT_THROW(r.Validate(), Error);
}

TEST(Report, ComparisonCarriesRatio) {
  RunReport random;
  random.mode = "random";
  random.at(Source::kRandom) = {10, 2};
  const auto doc = nlohmann::json::parse(
      EmitComparison(Sample(), random, ReportFormat::kJson));
  EXPECT_EQ(doc["format"], "fairtest-comparison");
  EXPECT_NEAR(doc["success_ratio"].get<double>(), 0.5 / 0.2, 1e-12);
}

TEST(Report, CheckpointsCsv) {
  EXPECT_EQ(EmitCheckpointsCsv(Sample()), "iteration,generated,discriminatory\n14,14,7\n");
}

}  // namespace
}  // namespace fairtest
