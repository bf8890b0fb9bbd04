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

#include "fairtest/harness.h"

#include <chrono>
#include <cmath>
#include <set>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

int DrawLabel(const Instance& x, double bias, Rng& rng) {
  // Feature order of SynthSchema: age, income, gender, noise1..3.
  const double z = x[1] - 5.0 + 4.0 * bias * (x[2] - 0.5);
  return rng.Bernoulli(Sigmoid(z)) ? 1 : 0;
}

struct GroupBox {
  Interval age;
  Interval income;
  Interval noise;
};

// Four separated groups; the last two straddle the income boundary.
constexpr GroupBox kGroups[4] = {
    {{7, 9}, {9, 10}, {0, 2}},
    {{1, 3}, {0, 1}, {7, 9}},
    {{4, 6}, {4, 6}, {3, 5}},
    {{1, 2}, {5, 7}, {0, 1}},
};

}  // namespace

RunReport RandomBaseline(const PredictionModel& model,
                         const FeatureSchema& schema,
                         const BaselineOptions& options, Rng& rng) {
  if (options.limit == 0) throw PreconditionError("baseline limit must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const CountingModel counted(model);
  const DiscriminationChecker checker(schema, options.combination_cap);

  RunReport report;
  report.mode = "random";
  report.config_json = nlohmann::json{
      {"limit", options.limit},
      {"draws_per_test", options.draws_per_test},
      {"checkpoint_every", options.checkpoint_every},
      {"combination_cap", options.combination_cap}}.dump();

  SourceCounts& counts = report.at(Source::kRandom);
  std::set<std::vector<int>> seen;
  const std::uint64_t max_draws = options.draws_per_test * options.limit;
  std::uint64_t draws = 0;
  while (counts.generated < options.limit && draws < max_draws) {
    ++draws;
    Instance x = RandomInstance(schema, rng);
    if (!seen.insert(NonProtectedKey(x, schema)).second) continue;
    ++counts.generated;
    const DiscriminationResult result = checker.Check(x, counted);
    if (result.found) {
      ++counts.discriminatory;
      report.witnesses.push_back(
          {Source::kRandom, result.witness->first, result.witness->second});
    }
    if (options.checkpoint_every > 0 &&
        counts.generated % options.checkpoint_every == 0) {
      report.checkpoints.push_back(
          {counts.generated, counts.generated, counts.discriminatory});
    }
  }
  if (report.checkpoints.empty() ||
      report.checkpoints.back().iteration != counts.generated) {
    report.checkpoints.push_back(
        {counts.generated, counts.generated, counts.discriminatory});
  }
  report.iterations = draws;
  report.model_probes = counted.probes();
  report.duration_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  report.Validate();
  return report;
}

FeatureSchema SynthSchema() {
  std::vector<Feature> features = {
      {"age", {1, 9}, FeatureKind::kNumeric, {}},
      {"income", {0, 10}, FeatureKind::kNumeric, {}},
      {"gender", {0, 1}, FeatureKind::kCategorical, {"F", "M"}},
      {"noise1", {0, 9}, FeatureKind::kNumeric, {}},
      {"noise2", {0, 9}, FeatureKind::kNumeric, {}},
      {"noise3", {0, 9}, FeatureKind::kNumeric, {}},
  };
  return FeatureSchema(std::move(features), {"gender"}, "approved");
}

Dataset SynthBiasedDataset(double bias, std::size_t n, Rng& rng) {
  if (!(bias >= 0.0 && bias <= 1.0)) {
    throw PreconditionError("bias level must lie in [0, 1]");
  }
  if (n < 100) throw PreconditionError("synthetic dataset needs n >= 100");
  Dataset data;
  data.schema = SynthSchema();
  data.rows.reserve(n);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Instance x = RandomInstance(data.schema, rng);
    data.labels.push_back(DrawLabel(x, bias, rng));
    data.rows.push_back(std::move(x));
  }
  return data;
}

Dataset SynthClusteredDataset(double bias,
                              const std::vector<std::size_t>& sizes, Rng& rng) {
  if (!(bias >= 0.0 && bias <= 1.0)) {
    throw PreconditionError("bias level must lie in [0, 1]");
  }
  if (sizes.size() != 4) {
    throw PreconditionError("clustered dataset takes exactly four group sizes");
  }
  Dataset data;
  data.schema = SynthSchema();
  for (std::size_t g = 0; g < 4; ++g) {
    const GroupBox& box = kGroups[g];
    for (std::size_t i = 0; i < sizes[g]; ++i) {
      Instance x;
      x.values = {rng.UniformInt(box.age.lo, box.age.hi),
                  rng.UniformInt(box.income.lo, box.income.hi),
                  rng.UniformInt(0, 1),
                  rng.UniformInt(box.noise.lo, box.noise.hi),
                  rng.UniformInt(box.noise.lo, box.noise.hi),
                  rng.UniformInt(box.noise.lo, box.noise.hi)};
      data.labels.push_back(DrawLabel(x, bias, rng));
      data.rows.push_back(std::move(x));
    }
  }
  return data;
}

}  // namespace fairtest
