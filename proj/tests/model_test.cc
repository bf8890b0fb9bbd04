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


#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "fairtest/errors.h"
#include "fairtest/model.h"

namespace fairtest {
namespace {

FeatureSchema OneFeature() {
  return FeatureSchema({{"x", {0, 10}, FeatureKind::kNumeric, {}}}, {});
}

// Summed log-loss plus (l2/2)|w|^2, evaluated straight from the definition.
double Objective(const Dataset& d, const std::vector<double>& w, double b,
                 double l2) {
  const auto scale = LogisticModel::DomainScale(d.schema);
  double loss = 0.0;
  for (std::size_t r = 0; r < d.size(); ++r) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) {
      z += w[j] * (d.rows[r][j] - scale[j].center) / scale[j].half_range;
    }
    const double p = 1.0 / (1.0 + std::exp(-z));
    loss -= d.labels[r] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  double sq = 0.0;
  for (double v : w) sq += v * v;
  return loss + 0.5 * l2 * sq;
}

TEST(TrainLogistic, SeparableOneDimensional) {
  const Dataset d{OneFeature(), {Instance{{0}}, Instance{{10}}}, {0, 1}};
  const LogisticModel m = TrainLogistic(d);
  EXPECT_EQ(m.Predict(Instance{{0}}), 0);
  EXPECT_EQ(m.Predict(Instance{{10}}), 1);
}

TEST(TrainLogistic, LearnsProtectedLabel) {
  const FeatureSchema s({{"age", {1, 9}, FeatureKind::kNumeric, {}},
                         {"gender", {0, 1}, FeatureKind::kCategorical, {"F", "M"}},
                         {"n", {0, 9}, FeatureKind::kNumeric, {}}},
                        {"gender"});
  Rng rng(5);
  Dataset d{s, {}, {}};
  for (int i = 0; i < 400; ++i) {
    Instance x = RandomInstance(s, rng);
    d.labels.push_back(x[1]);
    d.rows.push_back(x);
  }
  const LogisticModel m = TrainLogistic(d);
  Rng probe(99);
  int flips = 0;
  for (int i = 0; i < 1000; ++i) {
    Instance x = RandomInstance(s, probe);
    Instance y = x;
    y.values[1] = 1 - x[1];
    flips += m.Predict(x) != m.Predict(y);
  }
  EXPECT_GE(flips, 900);
}

TEST(TrainLogistic, HeavyPenaltyShrinksWeights) {
  Rng rng(2);
  Dataset d{OneFeature(), {}, {}};
  for (int i = 0; i < 50; ++i) {
    Instance x = RandomInstance(d.schema, rng);
    d.labels.push_back(x[0] > 5 ? 1 : 0);
    d.rows.push_back(x);
  }
  LogisticOptions opt;
  opt.l2 = 1e6;
  const LogisticModel m = TrainLogistic(d, opt);
  for (double w : m.weights()) EXPECT_LT(std::abs(w), 0.01);
}

TEST(TrainLogistic, ReachesLocalMinimumOfObjective) {
  const FeatureSchema s({{"a", {0, 4}, FeatureKind::kNumeric, {}},
                         {"b", {-2, 2}, FeatureKind::kNumeric, {}}},
                        {});
  Rng rng(8);
  Dataset d{s, {}, {}};
  for (int i = 0; i < 60; ++i) {
    Instance x = RandomInstance(s, rng);
    d.labels.push_back(rng.Bernoulli(x[0] + x[1] > 2 ? 0.8 : 0.2) ? 1 : 0);
    d.rows.push_back(x);
  }
  LogisticOptions opt;
  opt.max_iter = 20000;
  opt.tol = 1e-9;
  TrainingSummary summary;
  const LogisticModel m = TrainLogistic(d, opt, &summary);
  EXPECT_TRUE(summary.converged);
  const double f0 = Objective(d, m.weights(), m.bias(), opt.l2);
  const double h = 1e-3;
  for (std::size_t j = 0; j <= m.weights().size(); ++j) {
    for (double sign : {-1.0, 1.0}) {
      std::vector<double> w = m.weights();
      double b = m.bias();
      (j < w.size() ? w[j] : b) += sign * h;
      EXPECT_GE(Objective(d, w, b, opt.l2), f0 - 1e-9);
    }
  }
}

TEST(TrainLogistic, DegenerateInputs) {
  const Dataset one{OneFeature(), {Instance{{1}}}, {1}};
  EXPECT_THROW(TrainLogistic(one), PreconditionError);
  const Dataset same{OneFeature(), {Instance{{1}}, Instance{{2}}}, {1, 1}};
  EXPECT_THROW(TrainLogistic(same), DegenerateLabels);
}

TEST(LogisticModel, DomainScaleMapsOntoUnitInterval) {
  const FeatureSchema s({{"x", {2, 6}, FeatureKind::kNumeric, {}},
                         {"k", {3, 3}, FeatureKind::kNumeric, {}}},
                        {});
  const auto scale = LogisticModel::DomainScale(s);
  EXPECT_DOUBLE_EQ(scale[0].center, 4.0);
  EXPECT_DOUBLE_EQ(scale[0].half_range, 2.0);
  EXPECT_DOUBLE_EQ(scale[1].center, 3.0);
  EXPECT_DOUBLE_EQ(scale[1].half_range, 1.0);
}

TEST(LogisticModel, ScoreAndThreshold) {
  const LogisticModel m({2.0}, -1.0, {{5.0, 5.0}});
  EXPECT_DOUBLE_EQ(m.Score(Instance{{10}}), 1.0);
  EXPECT_DOUBLE_EQ(m.Score(Instance{{5}}), -1.0);
  EXPECT_EQ(m.Predict(Instance{{10}}), 1);
  EXPECT_EQ(m.Predict(Instance{{5}}), 0);
  // Score exactly zero counts as class 1.
  const LogisticModel zero({0.0}, 0.0, {{0.0, 1.0}});
  EXPECT_EQ(zero.Predict(Instance{{3}}), 1);
  EXPECT_DOUBLE_EQ(zero.Probability(Instance{{3}}), 0.5);
}

TEST(LogisticModel, JsonAndFileRoundTrip) {
  const LogisticModel m({0.25, -1.5}, 0.125, {{1.0, 2.0}, {0.0, 1.0}});
  const LogisticModel back = LogisticModel::FromJson(m.ToJson());
  EXPECT_EQ(back.ToJson(), m.ToJson());
  EXPECT_EQ(back.weights(), m.weights());
  const auto path = std::filesystem::temp_directory_path() / "fairtest_model_test.json";
  m.Save(path);
  EXPECT_EQ(LogisticModel::Load(path).ToJson(), m.ToJson());
  std::filesystem::remove(path);
}

TEST(LogisticModel, RejectsForeignJson) {
  EXPECT_THROW(LogisticModel::FromJson(R"({"format":"other"})"), Error);
  EXPECT_THROW(LogisticModel::FromJson("not json"), Error);
}

TEST(CountingModel, CountsSingleAndBatch) {
  const FunctionModel inner([](const Instance& x) { return x[0] % 2; });
  const CountingModel counted(inner);
  EXPECT_EQ(counted.Predict(Instance{{3}}), 1);
  const std::vector<Instance> xs = {Instance{{1}}, Instance{{2}}, Instance{{4}}};
  EXPECT_EQ(counted.PredictBatch(xs), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(counted.probes(), 4u);
}

}  // namespace
}  // namespace fairtest
