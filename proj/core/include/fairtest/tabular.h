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

// Tabular data model: feature schema with integer domains, instances and
// datasets, plus CSV/JSON ingestion.
//
// Every feature is an integer over a closed interval. Categorical columns are
// ordinal-encoded in the order of their labels; continuous columns have to be
// binned by whoever writes the schema.

#ifndef FAIRTEST_TABULAR_H_
#define FAIRTEST_TABULAR_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairtest/random.h"

namespace fairtest {

// Inclusive integer interval. Empty when lo > hi.
struct Interval {
  int lo = 0;
  int hi = 0;

  bool Empty() const { return lo > hi; }
  bool Contains(int v) const { return lo <= v && v <= hi; }
  long long Size() const {
    return Empty() ? 0 : static_cast<long long>(hi) - lo + 1;
  }

  auto operator<=>(const Interval&) const = default;
};

enum class FeatureKind { kNumeric, kCategorical };

struct Feature {
  std::string name;
  Interval domain;
  FeatureKind kind = FeatureKind::kNumeric;
  // Categorical only: label of code domain.lo + i is labels[i].
  std::vector<std::string> labels;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;
  // Validates invariants; throws SchemaError.
  FeatureSchema(std::vector<Feature> features,
                std::vector<std::string> protected_names,
                std::string label_name = "label");

  static FeatureSchema FromJson(std::string_view json_text);
  static FeatureSchema Load(const std::filesystem::path& path);
  std::string ToJson() const;

  std::size_t arity() const { return features_.size(); }
  const std::vector<Feature>& features() const { return features_; }
  const Feature& feature(std::size_t i) const { return features_.at(i); }
  const Interval& domain(std::size_t i) const { return features_.at(i).domain; }
  const std::string& label_name() const { return label_name_; }

  // Protected feature indices in ascending schema order.
  const std::vector<std::size_t>& protected_indices() const {
    return protected_;
  }
  bool IsProtected(std::size_t i) const { return is_protected_.at(i); }

  std::optional<std::size_t> IndexOf(std::string_view name) const;

  // Throws PreconditionError when no protected attribute is designated.
  void RequireProtected() const;

 private:
  std::vector<Feature> features_;
  std::vector<std::size_t> protected_;
  std::vector<bool> is_protected_;
  std::string label_name_ = "label";
};

// One row: values in schema order.
struct Instance {
  std::vector<int> values;

  std::size_t size() const { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }
  int& operator[](std::size_t i) { return values[i]; }

  auto operator<=>(const Instance&) const = default;
};

bool IsValid(const Instance& instance, const FeatureSchema& schema);

// Throws ArityMismatch or DomainViolation.
void ValidateInstance(const Instance& instance, const FeatureSchema& schema);

// Values of the non-protected features, in schema order. Two instances that
// differ only on protected features share this key.
std::vector<int> NonProtectedKey(const Instance& instance,
                                 const FeatureSchema& schema);

// Maps each value to its domain position in [0, 1]; singleton domains map
// to 0.
std::vector<double> NormalizeToUnit(const Instance& instance,
                                    const FeatureSchema& schema);

struct Dataset {
  FeatureSchema schema;
  std::vector<Instance> rows;
  std::vector<int> labels;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

// Parses a CSV body against a schema. The header must list the schema's
// features in order followed by one label column; labels must be 0 or 1.
// Throws UnknownCategory, DomainViolation or ArityMismatch.
Dataset ParseCsv(std::istream& in, const FeatureSchema& schema);

Dataset LoadCsv(const std::filesystem::path& csv_path,
                const std::filesystem::path& schema_path);

// Writes header and rows with categorical codes rendered as labels.
void WriteCsv(const Dataset& data, std::ostream& out);

// Display strings for each value; inverse of the CSV encoding.
std::vector<std::string> Decode(const Instance& instance,
                                const FeatureSchema& schema);

// Encodes one display string for feature i. Throws UnknownCategory or
// DomainViolation.
int EncodeValue(std::string_view text, std::size_t i,
                const FeatureSchema& schema);

// Each feature drawn uniformly from its domain.
Instance RandomInstance(const FeatureSchema& schema, Rng& rng);

}  // namespace fairtest

#endif  // FAIRTEST_TABULAR_H_
