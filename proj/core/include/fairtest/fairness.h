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

#ifndef FAIRTEST_FAIRNESS_H_
#define FAIRTEST_FAIRNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fairtest/model.h"
#include "fairtest/tabular.h"

namespace fairtest {

inline constexpr std::size_t kDefaultCombinationCap = 10000;

// Cartesian product of the protected domains, lexicographic with the
// lowest-index protected feature most significant. Each tuple lists values in
// protected_indices() order. Throws PreconditionError without protected
// attributes and CombinationExplosion above `cap` tuples.
std::vector<std::vector<int>> ProtectedCombinations(
    const FeatureSchema& schema, std::size_t cap = kDefaultCombinationCap);

struct DiscriminationResult {
  bool found = false;
  // (t, t') differing only on protected features, with different classes.
  std::optional<std::pair<Instance, Instance>> witness;
  std::uint64_t probes = 0;
};

// Individual discrimination oracle: t discriminates iff some reassignment of
// its protected values changes the model's class.
class DiscriminationChecker {
 public:
  explicit DiscriminationChecker(const FeatureSchema& schema,
                                 std::size_t cap = kDefaultCombinationCap);

  // Queries class(t), then each other protected combination in order, and
  // stops at the first class change.
  DiscriminationResult Check(const Instance& t,
                             const PredictionModel& model) const;

  const std::vector<std::vector<int>>& combinations() const {
    return combinations_;
  }

 private:
  FeatureSchema schema_;
  std::vector<std::vector<int>> combinations_;
};

DiscriminationResult CheckForErrorCondition(const Instance& t,
                                            const PredictionModel& model,
                                            const FeatureSchema& schema);

}  // namespace fairtest

#endif  // FAIRTEST_FAIRNESS_H_
