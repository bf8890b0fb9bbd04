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

// Threshold predicates, path constraints and their solver.
//
// Predicates come from axis-aligned surrogate-tree splits, so any conjunction
// of them is an integer box. Solving a constraint means intersecting the box
// with the schema domains and sampling a point from it; two constraints are
// the same path exactly when their boxes coincide.

#ifndef FAIRTEST_CONSTRAINT_H_
#define FAIRTEST_CONSTRAINT_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fairtest/random.h"
#include "fairtest/tabular.h"

namespace fairtest {

enum class CompareOp { kLe, kGt };

struct Predicate {
  std::size_t feature = 0;
  CompareOp op = CompareOp::kLe;
  int threshold = 0;
  double confidence = 1.0;
  bool is_protected = false;

  bool SatisfiedBy(const Instance& x) const {
    return op == CompareOp::kLe ? x[feature] <= threshold
                                : x[feature] > threshold;
  }

  bool operator==(const Predicate&) const = default;
};

// Same feature and threshold, opposite direction.
Predicate Toggle(const Predicate& c);

// "age <= 3" style rendering; uses feature names from the schema.
std::string ToString(const Predicate& c, const FeatureSchema& schema);

struct PathConstraint {
  std::vector<Predicate> predicates;

  bool SatisfiedBy(const Instance& x) const;
  // Arithmetic mean of predicate confidences; 0 for an empty constraint.
  double MeanConfidence() const;
};

// Per-feature feasible interval. Empty iff some interval is empty.
struct IntervalBox {
  std::vector<Interval> intervals;

  bool Empty() const;
  bool Contains(const Instance& x) const;
  // Number of integer points; saturates at LLONG_MAX.
  long long Volume() const;

  auto operator<=>(const IntervalBox&) const = default;
};

IntervalBox Canonicalize(const PathConstraint& pc, const FeatureSchema& schema);

// Debug dump: {"age":[1,3], ...} listing only features narrower than their
// domain; {"unsat":true} for empty boxes.
std::string BoxToJson(const IntervalBox& box, const FeatureSchema& schema);

// Uniform point of the canonical box; nullopt when it is empty. Unconstrained
// features range over their full domain.
std::optional<Instance> Solve(const PathConstraint& pc,
                              const FeatureSchema& schema, Rng& rng);

// Canonical keys of constraints already scheduled for solving.
class VisitedSet {
 public:
  // True when the key was not present before.
  bool Insert(const IntervalBox& box) { return keys_.insert(box).second; }
  bool Contains(const IntervalBox& box) const { return keys_.count(box) > 0; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::set<IntervalBox> keys_;
};

}  // namespace fairtest

#endif  // FAIRTEST_CONSTRAINT_H_
