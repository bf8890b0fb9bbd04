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

#ifndef FAIRTEST_HARNESS_H_
#define FAIRTEST_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fairtest/fairness.h"
#include "fairtest/model.h"
#include "fairtest/random.h"
#include "fairtest/report.h"
#include "fairtest/tabular.h"

namespace fairtest {

struct BaselineOptions {
  std::uint64_t limit = 1000;
  // Give up after this many draws per requested test, so tiny domains
  // cannot spin forever.
  std::uint64_t draws_per_test = 50;
  std::uint64_t checkpoint_every = 50;
  std::size_t combination_cap = kDefaultCombinationCap;
};

// Uniform random generation with duplicate removal on non-protected values.
// Every unique draw is checked; counts go to Source::kRandom. Checkpoint
// iterations count unique tests.
RunReport RandomBaseline(const PredictionModel& model,
                         const FeatureSchema& schema,
                         const BaselineOptions& options, Rng& rng);

// Schema of the synthetic credit-style data: age [1,9], income [0,10],
// gender {F,M} (protected), noise1..noise3 [0,9]; label "approved".
FeatureSchema SynthSchema();

// Features uniform over their domains; label ~ Bernoulli(sigmoid(income - 5 +
// 4 * bias * (gender - 0.5))). bias = 0 makes labels independent of gender.
// Requires bias in [0, 1] and n >= 100.
Dataset SynthBiasedDataset(double bias, std::size_t n, Rng& rng);

// Same schema and labelling, but rows come from four tight groups of the
// given sizes, stored group after group. Group 0 sits at high income, far
// from the decision boundary; group 2 sits on the boundary.
Dataset SynthClusteredDataset(double bias,
                              const std::vector<std::size_t>& sizes, Rng& rng);

}  // namespace fairtest

#endif  // FAIRTEST_HARNESS_H_
