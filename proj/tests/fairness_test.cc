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


#include <gtest/gtest.h>

#include "fairtest/errors.h"
#include "fairtest/fairness.h"

namespace fairtest {
namespace {

FeatureSchema GenderAge() {
  return FeatureSchema({{"gender", {0, 1}, FeatureKind::kCategorical, {"F", "M"}},
                        {"age", {1, 9}, FeatureKind::kNumeric, {}}},
                       {"gender"});
}

FeatureSchema GenderRaceAge() {
  return FeatureSchema({{"gender", {0, 1}, FeatureKind::kNumeric, {}},
                        {"age", {1, 9}, FeatureKind::kNumeric, {}},
                        {"race", {0, 2}, FeatureKind::kNumeric, {}}},
                       {"gender", "race"});
}

TEST(ProtectedCombinations, SingleBinary) {
  EXPECT_EQ(ProtectedCombinations(GenderAge()),
            (std::vector<std::vector<int>>{{0}, {1}}));
}

TEST(ProtectedCombinations, LexicographicProduct) {
  EXPECT_EQ(ProtectedCombinations(GenderRaceAge()),
            (std::vector<std::vector<int>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}));
}

TEST(ProtectedCombinations, Errors) {
  const FeatureSchema none({{"a", {0, 1}, FeatureKind::kNumeric, {}}}, {});
  EXPECT_THROW(ProtectedCombinations(none), PreconditionError);
  EXPECT_THROW(ProtectedCombinations(GenderRaceAge(), 5), CombinationExplosion);
  EXPECT_NO_THROW(ProtectedCombinations(GenderRaceAge(), 6));
}

TEST(DiscriminationChecker, ClassEqualsGender) {
  const FunctionModel m([](const Instance& x) { return x[0]; });
  const DiscriminationResult r = CheckForErrorCondition(Instance{{0, 5}}, m, GenderAge());
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.witness->first, (Instance{{0, 5}}));
  EXPECT_EQ(r.witness->second, (Instance{{1, 5}}));
  EXPECT_EQ(m.Predict(r.witness->first), 0);
  EXPECT_EQ(m.Predict(r.witness->second), 1);
  EXPECT_EQ(r.probes, 2u);
}

TEST(DiscriminationChecker, ProtectedBlindModelNeverDiscriminates) {
  const FunctionModel m([](const Instance& x) { return x[1] > 4 ? 1 : 0; });
  const DiscriminationChecker checker(GenderRaceAge());
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const DiscriminationResult r = checker.Check(RandomInstance(GenderRaceAge(), rng), m);
    EXPECT_FALSE(r.found);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(r.probes, 6u);
  }
}

TEST(DiscriminationChecker, ProbeAccountingAndExhaustiveAgreement) {
  const FeatureSchema s = GenderRaceAge();
  const DiscriminationChecker checker(s);
  const auto& combos = checker.combinations();
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    // Random lookup table over (gender, race, age).
    std::vector<int> table(2 * 3 * 9);
    for (int& v : table) v = rng.Bernoulli(0.85) ? 1 : 0;
    const FunctionModel m([&](const Instance& x) {
      return table[(x[0] * 3 + x[2]) * 9 + (x[1] - 1)];
    });
    const CountingModel counted(m);
    const Instance t = RandomInstance(s, rng);
    const DiscriminationResult r = checker.Check(t, counted);

    // Exhaustive sweep, independent of the checker's order.
    bool any = false;
    for (int g = 0; g <= 1; ++g) {
      for (int race = 0; race <= 2; ++race) {
        Instance u = t;
        u[0] = g;
        u[2] = race;
        any = any || m.Predict(u) != m.Predict(t);
      }
    }
    EXPECT_EQ(r.found, any);
    EXPECT_LE(r.probes, combos.size());
    EXPECT_EQ(r.probes, counted.probes());
    if (r.found) {
      const Instance& u = r.witness->second;
      EXPECT_EQ(r.witness->first, t);
      EXPECT_EQ(u[1], t[1]);
      EXPECT_NE(m.Predict(u), m.Predict(t));
      // The witness is the first mismatching combination, skipping t's own.
      std::size_t queried = 1;
      for (const auto& c : combos) {
        if (c[0] == t[0] && c[1] == t[2]) continue;
        ++queried;
        if (c[0] == u[0] && c[1] == u[2]) break;
        Instance v = t;
        v[0] = c[0];
        v[2] = c[1];
        EXPECT_EQ(m.Predict(v), m.Predict(t));
      }
      EXPECT_EQ(r.probes, queried);
    }
  }
}

}  // namespace
}  // namespace fairtest
