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

#include "fairtest/constraint.h"

#include <algorithm>
#include <cassert>
#include <climits>

#include "json.hpp"

namespace fairtest {

Predicate Toggle(const Predicate& c) {
  Predicate t = c;
  t.op = c.op == CompareOp::kLe ? CompareOp::kGt : CompareOp::kLe;
  return t;
}

std::string ToString(const Predicate& c, const FeatureSchema& schema) {
  return schema.feature(c.feature).name +
         (c.op == CompareOp::kLe ? " <= " : " > ") +
         std::to_string(c.threshold);
}

bool PathConstraint::SatisfiedBy(const Instance& x) const {
  return std::all_of(predicates.begin(), predicates.end(),
                     [&](const Predicate& c) { return c.SatisfiedBy(x); });
}

double PathConstraint::MeanConfidence() const {
  if (predicates.empty()) return 0.0;
  double sum = 0.0;
  for (const Predicate& c : predicates) sum += c.confidence;
  return sum / static_cast<double>(predicates.size());
}

bool IntervalBox::Empty() const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [](const Interval& iv) { return iv.Empty(); });
}

bool IntervalBox::Contains(const Instance& x) const {
  if (x.size() != intervals.size()) return false;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!intervals[i].Contains(x[i])) return false;
  }
  return true;
}

long long IntervalBox::Volume() const {
  long long v = 1;
  for (const Interval& iv : intervals) {
    const long long s = iv.Size();
    if (s == 0) return 0;
    if (v > LLONG_MAX / s) return LLONG_MAX;
    v *= s;
  }
  return v;
}

IntervalBox Canonicalize(const PathConstraint& pc, const FeatureSchema& schema) {
  IntervalBox box;
  box.intervals.reserve(schema.arity());
  for (const Feature& f : schema.features()) box.intervals.push_back(f.domain);
  for (const Predicate& c : pc.predicates) {
    Interval& iv = box.intervals.at(c.feature);
    if (c.op == CompareOp::kLe) {
      iv.hi = std::min(iv.hi, c.threshold);
    } else {
      // x > t  <=>  x >= t + 1 over the integers.
      iv.lo = std::max(iv.lo, c.threshold + 1);
    }
  }
  return box;
}

std::string BoxToJson(const IntervalBox& box, const FeatureSchema& schema) {
  nlohmann::json doc = nlohmann::json::object();
  if (box.Empty()) {
    doc["unsat"] = true;
    return doc.dump();
  }
  for (std::size_t i = 0; i < box.intervals.size(); ++i) {
    if (box.intervals[i] != schema.domain(i)) {
      doc[schema.feature(i).name] = {box.intervals[i].lo, box.intervals[i].hi};
    }
  }
  return doc.dump();
}

std::optional<Instance> Solve(const PathConstraint& pc,
                              const FeatureSchema& schema, Rng& rng) {
  const IntervalBox box = Canonicalize(pc, schema);
  if (box.Empty()) return std::nullopt;
  Instance x;
  x.values.reserve(box.intervals.size());
  for (const Interval& iv : box.intervals) {
    x.values.push_back(rng.UniformInt(iv.lo, iv.hi));
  }
  assert(pc.SatisfiedBy(x) && IsValid(x, schema));
  return x;
}

}  // namespace fairtest
