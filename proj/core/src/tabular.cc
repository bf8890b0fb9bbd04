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

#include "fairtest/tabular.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      break;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

FeatureSchema::FeatureSchema(std::vector<Feature> features,
                             std::vector<std::string> protected_names,
                             std::string label_name)
    : features_(std::move(features)), label_name_(std::move(label_name)) {
  std::set<std::string> seen;
  for (const Feature& f : features_) {
    if (f.name.empty()) throw SchemaError("feature with empty name");
    if (!seen.insert(f.name).second) {
      throw SchemaError("duplicate feature name '" + f.name + "'");
    }
    if (f.domain.Empty()) {
      throw SchemaError("feature '" + f.name + "' has lo > hi");
    }
    if (f.kind == FeatureKind::kCategorical &&
        static_cast<long long>(f.labels.size()) != f.domain.Size()) {
      throw SchemaError("feature '" + f.name +
                        "': label count does not match domain size");
    }
  }
  is_protected_.assign(features_.size(), false);
  for (const std::string& name : protected_names) {
    const auto idx = IndexOf(name);
    if (!idx) throw SchemaError("protected attribute '" + name + "' unknown");
    is_protected_[*idx] = true;
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (is_protected_[i]) protected_.push_back(i);
  }
}

std::optional<std::size_t> FeatureSchema::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

void FeatureSchema::RequireProtected() const {
  if (protected_.empty()) {
    throw PreconditionError("schema designates no protected attribute");
  }
}

FeatureSchema FeatureSchema::FromJson(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema is not valid JSON: ") + e.what());
  }
  try {
    std::vector<Feature> features;
    for (const json& jf : doc.at("features")) {
      Feature f;
      f.name = jf.at("name").get<std::string>();
      const std::string kind = jf.value("kind", "numeric");
      if (kind == "numeric") {
        f.kind = FeatureKind::kNumeric;
        const auto& d = jf.at("domain");
        f.domain = {d.at(0).get<int>(), d.at(1).get<int>()};
      } else if (kind == "categorical") {
        f.kind = FeatureKind::kCategorical;
        f.labels = jf.at("labels").get<std::vector<std::string>>();
        if (jf.contains("domain")) {
          const auto& d = jf.at("domain");
          f.domain = {d.at(0).get<int>(), d.at(1).get<int>()};
        } else {
          f.domain = {0, static_cast<int>(f.labels.size()) - 1};
        }
      } else {
        throw SchemaError("feature '" + f.name + "': unknown kind '" + kind +
                          "'");
      }
      features.push_back(std::move(f));
    }
    std::vector<std::string> prot;
    if (doc.contains("protected")) {
      prot = doc.at("protected").get<std::vector<std::string>>();
    }
    return FeatureSchema(std::move(features), std::move(prot),
                         doc.value("label", "label"));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
}

FeatureSchema FeatureSchema::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open schema " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

std::string FeatureSchema::ToJson() const {
  json doc;
  doc["features"] = json::array();
  for (const Feature& f : features_) {
    json jf;
    jf["name"] = f.name;
    if (f.kind == FeatureKind::kNumeric) {
      jf["domain"] = {f.domain.lo, f.domain.hi};
      jf["kind"] = "numeric";
    } else {
      jf["kind"] = "categorical";
      jf["labels"] = f.labels;
      if (f.domain.lo != 0) jf["domain"] = {f.domain.lo, f.domain.hi};
    }
    doc["features"].push_back(std::move(jf));
  }
  doc["protected"] = json::array();
  for (std::size_t i : protected_) doc["protected"].push_back(features_[i].name);
  doc["label"] = label_name_;
  return doc.dump(2);
}

bool IsValid(const Instance& instance, const FeatureSchema& schema) {
  if (instance.size() != schema.arity()) return false;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (!schema.domain(i).Contains(instance[i])) return false;
  }
  return true;
}

void ValidateInstance(const Instance& instance, const FeatureSchema& schema) {
  if (instance.size() != schema.arity()) {
    throw ArityMismatch("instance has " + std::to_string(instance.size()) +
                        " values, schema has " +
                        std::to_string(schema.arity()) + " features");
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Interval& d = schema.domain(i);
    if (!d.Contains(instance[i])) {
      throw DomainViolation("feature '" + schema.feature(i).name + "' value " +
                            std::to_string(instance[i]) + " outside [" +
                            std::to_string(d.lo) + "," + std::to_string(d.hi) +
                            "]");
    }
  }
}

std::vector<int> NonProtectedKey(const Instance& instance,
                                 const FeatureSchema& schema) {
  std::vector<int> key;
  key.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (!schema.IsProtected(i)) key.push_back(instance[i]);
  }
  return key;
}

std::vector<double> NormalizeToUnit(const Instance& instance,
                                    const FeatureSchema& schema) {
  std::vector<double> out(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Interval& d = schema.domain(i);
    out[i] = d.hi == d.lo ? 0.0
                          : static_cast<double>(instance[i] - d.lo) /
                                static_cast<double>(d.hi - d.lo);
  }
  return out;
}

int EncodeValue(std::string_view text, std::size_t i,
                const FeatureSchema& schema) {
  const Feature& f = schema.feature(i);
  if (f.kind == FeatureKind::kCategorical) {
    const auto it = std::find(f.labels.begin(), f.labels.end(), text);
    if (it == f.labels.end()) {
      throw UnknownCategory("feature '" + f.name + "': unknown category '" +
                            std::string(text) + "'");
    }
    return f.domain.lo + static_cast<int>(it - f.labels.begin());
  }
  const auto v = ParseInt(text);
  if (!v || !f.domain.Contains(*v)) {
    throw DomainViolation("feature '" + f.name + "': value '" +
                          std::string(text) + "' outside [" +
                          std::to_string(f.domain.lo) + "," +
                          std::to_string(f.domain.hi) + "]");
  }
  return *v;
}

Dataset ParseCsv(std::istream& in, const FeatureSchema& schema) {
  Dataset data;
  data.schema = schema;
  std::string line;
  if (!std::getline(in, line)) throw ArityMismatch("CSV has no header row");
  const auto header = SplitCsvLine(line);
  if (header.size() != schema.arity() + 1) {
    throw ArityMismatch("CSV header has " + std::to_string(header.size()) +
                        " columns, expected " +
                        std::to_string(schema.arity() + 1));
  }
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    if (header[i] != schema.feature(i).name) {
      throw ArityMismatch("CSV column " + std::to_string(i) + " is '" +
                          std::string(header[i]) + "', expected '" +
                          schema.feature(i).name + "'");
    }
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != schema.arity() + 1) {
      throw ArityMismatch("CSV line " + std::to_string(line_no) + " has " +
                          std::to_string(cells.size()) + " columns");
    }
    Instance row;
    row.values.reserve(schema.arity());
    for (std::size_t i = 0; i < schema.arity(); ++i) {
      row.values.push_back(EncodeValue(cells[i], i, schema));
    }
    const auto label = ParseInt(cells.back());
    if (!label || (*label != 0 && *label != 1)) {
      throw DomainViolation("CSV line " + std::to_string(line_no) +
                            ": label must be 0 or 1");
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(*label);
  }
  return data;
}

Dataset LoadCsv(const std::filesystem::path& csv_path,
                const std::filesystem::path& schema_path) {
  const FeatureSchema schema = FeatureSchema::Load(schema_path);
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open CSV " + csv_path.string());
  return ParseCsv(in, schema);
}

void WriteCsv(const Dataset& data, std::ostream& out) {
  const FeatureSchema& schema = data.schema;
  for (const Feature& f : schema.features()) out << f.name << ',';
  out << schema.label_name() << '\n';
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    for (const std::string& cell : Decode(data.rows[r], schema)) {
      out << cell << ',';
    }
    out << data.labels[r] << '\n';
  }
}

std::vector<std::string> Decode(const Instance& instance,
                                const FeatureSchema& schema) {
  std::vector<std::string> out;
  out.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Feature& f = schema.feature(i);
    if (f.kind == FeatureKind::kCategorical) {
      out.push_back(f.labels[static_cast<std::size_t>(instance[i] - f.domain.lo)]);
    } else {
      out.push_back(std::to_string(instance[i]));
    }
  }
  return out;
}

Instance RandomInstance(const FeatureSchema& schema, Rng& rng) {
  Instance x;
  x.values.reserve(schema.arity());
  for (const Feature& f : schema.features()) {
    x.values.push_back(rng.UniformInt(f.domain.lo, f.domain.hi));
  }
  return x;
}

}  // namespace fairtest
