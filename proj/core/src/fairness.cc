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

#include "fairtest/fairness.h"

#include <cassert>

#include "fairtest/errors.h"

namespace fairtest {

std::vector<std::vector<int>> ProtectedCombinations(const FeatureSchema& schema,
                                                    std::size_t cap) {
  schema.RequireProtected();
  const auto& prot = schema.protected_indices();
  long long total = 1;
  for (std::size_t i : prot) {
    total *= schema.domain(i).Size();
    if (total > static_cast<long long>(cap)) {
      throw CombinationExplosion(
          "protected-value product exceeds " + std::to_string(cap) +
          "; coarsen the protected domains");
    }
  }
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> current;
  for (std::size_t i : prot) current.push_back(schema.domain(i).lo);
  while (true) {
    out.push_back(current);
    // Odometer increment, last position fastest.
    std::size_t pos = prot.size();
    while (pos > 0) {
      --pos;
      const Interval& d = schema.domain(prot[pos]);
      if (current[pos] < d.hi) {
        ++current[pos];
        break;
      }
      current[pos] = d.lo;
      if (pos == 0) return out;
    }
  }
}

DiscriminationChecker::DiscriminationChecker(const FeatureSchema& schema,
                                             std::size_t cap)
    : schema_(schema), combinations_(ProtectedCombinations(schema, cap)) {}

DiscriminationResult DiscriminationChecker::Check(
    const Instance& t, const PredictionModel& model) const {
  const auto& prot = schema_.protected_indices();
  DiscriminationResult result;
  const int base = model.Predict(t);
  result.probes = 1;
  for (const std::vector<int>& combo : combinations_) {
    bool same = true;
    for (std::size_t k = 0; k < prot.size(); ++k) {
      if (t[prot[k]] != combo[k]) {
        same = false;
        break;
      }
    }
    if (same) continue;
    Instance modified = t;
    for (std::size_t k = 0; k < prot.size(); ++k) modified[prot[k]] = combo[k];
    ++result.probes;
    if (model.Predict(modified) != base) {
      assert(NonProtectedKey(t, schema_) == NonProtectedKey(modified, schema_));
      result.found = true;
      result.witness.emplace(t, std::move(modified));
      return result;
    }
  }
  return result;
}

DiscriminationResult CheckForErrorCondition(const Instance& t,
                                            const PredictionModel& model,
                                            const FeatureSchema& schema) {
  return DiscriminationChecker(schema).Check(t, model);
}

}  // namespace fairtest
