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
#include <map>

#include <gtest/gtest.h>

#include "fairtest/constraint.h"

namespace fairtest {
namespace {

FeatureSchema AgeCredit() {
  return FeatureSchema({{"age", {1, 9}, FeatureKind::kNumeric, {}},
                        {"credit", {0, 10}, FeatureKind::kNumeric, {}}},
                       {});
}

Predicate Le(std::size_t f, int t, double conf = 1.0) {
  return {f, CompareOp::kLe, t, conf, false};
}
Predicate Gt(std::size_t f, int t, double conf = 1.0) {
  return {f, CompareOp::kGt, t, conf, false};
}

TEST(Toggle, NegatesDirection) {
  const Predicate c = Le(0, 3, 0.4);
  const Predicate t = Toggle(c);
  EXPECT_EQ(t.op, CompareOp::kGt);
  EXPECT_EQ(t.threshold, 3);
  EXPECT_EQ(t.confidence, 0.4);
  EXPECT_EQ(Toggle(t), c);
}

TEST(Toggle, KeepsProtectedFlag) {
  Predicate g = Le(1, 0);
  g.is_protected = true;
  EXPECT_TRUE(Toggle(g).is_protected);
}

TEST(Toggle, ComplementsSatisfaction) {
  for (int v = 1; v <= 9; ++v) {
    const Instance x{{v, 0}};
    EXPECT_NE(Le(0, 4).SatisfiedBy(x), Toggle(Le(0, 4)).SatisfiedBy(x));
  }
}

TEST(ToString, UsesFeatureNames) {
  EXPECT_EQ(ToString(Le(0, 3), AgeCredit()), "age <= 3");
  EXPECT_EQ(ToString(Gt(1, 5), AgeCredit()), "credit > 5");
}

TEST(Canonicalize, AbsorbsRedundantBound) {
  const IntervalBox box = Canonicalize({{Le(0, 3), Le(0, 5)}}, AgeCredit());
  EXPECT_EQ(box.intervals[0], (Interval{1, 3}));
  EXPECT_EQ(box.intervals[1], (Interval{0, 10}));
}

TEST(Canonicalize, ContradictionIsEmpty) {
  EXPECT_TRUE(Canonicalize({{Le(0, 3), Gt(0, 3)}}, AgeCredit()).Empty());
}

TEST(Canonicalize, OrderFree) {
  const FeatureSchema s = AgeCredit();
  std::vector<Predicate> ps = {Le(0, 7), Gt(1, 2), Gt(0, 1), Le(1, 8)};
  const IntervalBox ref = Canonicalize({ps}, s);
  std::sort(ps.begin(), ps.end(), [](const Predicate& a, const Predicate& b) {
    return a.threshold < b.threshold;
  });
  do {
    EXPECT_EQ(Canonicalize({ps}, s), ref);
  } while (std::next_permutation(ps.begin(), ps.end(), [](const Predicate& a, const Predicate& b) {
    return a.threshold < b.threshold;
  }));
}

TEST(Canonicalize, ConfidenceDoesNotAffectKey) {
  const FeatureSchema s = AgeCredit();
  EXPECT_EQ(Canonicalize({{Le(0, 3, 0.1)}}, s), Canonicalize({{Le(0, 3, 0.9)}}, s));
}

TEST(IntervalBox, VolumeAndContains) {
  const IntervalBox box{{{1, 3}, {6, 10}}};
  EXPECT_EQ(box.Volume(), 15);
  EXPECT_TRUE(box.Contains(Instance{{2, 6}}));
  EXPECT_FALSE(box.Contains(Instance{{4, 6}}));
  EXPECT_EQ((IntervalBox{{{1, 0}, {0, 5}}}).Volume(), 0);
}

TEST(BoxToJson, ListsOnlyNarrowedFeatures) {
  const FeatureSchema s = AgeCredit();
  EXPECT_EQ(BoxToJson(Canonicalize({{Le(0, 3)}}, s), s), R"({"age":[1,3]})");
  EXPECT_EQ(BoxToJson(Canonicalize({{Le(0, 3), Gt(0, 3)}}, s), s), R"({"unsat":true})");
}

TEST(Solve, ForcedSingletonValue) {
  const FeatureSchema s({{"age", {5, 5}, FeatureKind::kNumeric, {}}}, {});
  Rng rng(1);
  const auto x = Solve({}, s, rng);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->values, std::vector<int>{5});
}

TEST(Solve, WitnessInsideBruteForceSolutionSet) {
  const FeatureSchema s = AgeCredit();
  const PathConstraint pc{{Le(0, 3), Gt(1, 5)}};
  std::vector<Instance> grid;
  for (int a = 1; a <= 9; ++a) {
    for (int c = 0; c <= 10; ++c) {
      const Instance x{{a, c}};
      if (pc.SatisfiedBy(x)) grid.push_back(x);
    }
  }
  ASSERT_EQ(grid.size(), 15u);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = Solve(pc, s, rng);
    ASSERT_TRUE(x.has_value());
    EXPECT_NE(std::find(grid.begin(), grid.end(), *x), grid.end());
  }
}

TEST(Solve, ContradictionIsUnsat) {
  Rng rng(1);
  EXPECT_FALSE(Solve({{Le(0, 3), Gt(0, 3)}}, AgeCredit(), rng).has_value());
}

TEST(Solve, ThresholdOutsideDomainIsUnsat) {
  Rng rng(1);
  EXPECT_FALSE(Solve({{Gt(0, 9)}}, AgeCredit(), rng).has_value());
  EXPECT_FALSE(Solve({{Le(1, -1)}}, AgeCredit(), rng).has_value());
}

TEST(Solve, SamplesBoxUniformly) {
  const FeatureSchema s = AgeCredit();
  const PathConstraint pc{{Le(0, 2), Gt(1, 8)}};
  Rng rng(4);
  std::map<std::pair<int, int>, int> hits;
  for (int i = 0; i < 4000; ++i) {
    const Instance x = *Solve(pc, s, rng);
    ++hits[{x[0], x[1]}];
  }
  ASSERT_EQ(hits.size(), 4u);
  for (const auto& [k, n] : hits) EXPECT_NEAR(n, 1000, 120);
}

TEST(Solve, RandomConstraintsAgreeWithEnumeration) {
  const FeatureSchema s({{"a", {0, 4}, FeatureKind::kNumeric, {}},
                         {"b", {-2, 2}, FeatureKind::kNumeric, {}}},
                        {});
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    PathConstraint pc;
    const int n = rng.UniformInt(0, 4);
    for (int i = 0; i < n; ++i) {
      const std::size_t f = rng.UniformIndex(2);
      const int t = rng.UniformInt(s.domain(f).lo - 1, s.domain(f).hi);
      pc.predicates.push_back(rng.Bernoulli(0.5) ? Le(f, t) : Gt(f, t));
    }
    bool any = false;
    for (int a = 0; a <= 4; ++a) {
      for (int b = -2; b <= 2; ++b) any = any || pc.SatisfiedBy(Instance{{a, b}});
    }
    const auto x = Solve(pc, s, rng);
    EXPECT_EQ(x.has_value(), any);
    if (x) {
      EXPECT_TRUE(pc.SatisfiedBy(*x));
      EXPECT_TRUE(IsValid(*x, s));
    }
  }
}

TEST(PathConstraint, MeanConfidence) {
  EXPECT_DOUBLE_EQ((PathConstraint{{Le(0, 1, 0.1), Le(1, 1, 0.9)}}).MeanConfidence(), 0.5);
  EXPECT_DOUBLE_EQ(PathConstraint{}.MeanConfidence(), 0.0);
}

TEST(VisitedSet, InsertReportsNovelty) {
  const FeatureSchema s = AgeCredit();
  VisitedSet v;
  EXPECT_TRUE(v.Insert(Canonicalize({{Le(0, 3)}}, s)));
  EXPECT_FALSE(v.Insert(Canonicalize({{Le(0, 3), Le(0, 6)}}, s)));
  EXPECT_TRUE(v.Contains(Canonicalize({{Le(0, 3)}}, s)));
  EXPECT_EQ(v.size(), 1u);
}

}  // namespace
}  // namespace fairtest
