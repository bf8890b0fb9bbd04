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

#ifndef FAIRTEST_REPORT_H_
#define FAIRTEST_REPORT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairtest/tabular.h"

namespace fairtest {

// Which generator produced a test input.
enum class Source { kSeed = 0, kDirected = 1, kUndirected = 2, kRandom = 3 };

inline constexpr std::array<Source, 4> kAllSources = {
    Source::kSeed, Source::kDirected, Source::kUndirected, Source::kRandom};

std::string_view SourceName(Source s);
std::optional<Source> SourceFromName(std::string_view name);

struct SourceCounts {
  // Unique test inputs generated (#Gen) and the discriminatory subset (#InDi).
  std::uint64_t generated = 0;
  std::uint64_t discriminatory = 0;
};

struct WitnessPair {
  Source source = Source::kSeed;
  Instance original;
  Instance modified;
};

// Cumulative totals after `iteration` dequeues (or draws, for the baseline).
struct Checkpoint {
  std::uint64_t iteration = 0;
  std::uint64_t generated = 0;
  std::uint64_t discriminatory = 0;
};

struct RunReport {
  // "symbolic" or "random".
  std::string mode;
  std::array<SourceCounts, 4> counts{};
  std::vector<WitnessPair> witnesses;
  std::vector<Checkpoint> checkpoints;
  // Canonical JSON object echoing the run configuration.
  std::string config_json = "{}";
  std::uint64_t iterations = 0;
  std::uint64_t model_probes = 0;
  std::uint64_t solver_calls = 0;
  std::uint64_t unsat_constraints = 0;
  std::uint64_t visited_constraints = 0;
  // Wall clock; emitted only when set, so reports stay byte-reproducible by
  // default.
  std::optional<double> duration_ms;

  SourceCounts& at(Source s) { return counts[static_cast<int>(s)]; }
  const SourceCounts& at(Source s) const { return counts[static_cast<int>(s)]; }
  SourceCounts Total() const;
  // #InDi / #Gen over all sources; nullopt when nothing was generated.
  std::optional<double> SuccessRate() const;

  // Throws Error when some source has more discriminatory than generated
  // inputs.
  void Validate() const;
};

enum class ReportFormat { kJson, kCsv, kText };

std::optional<ReportFormat> ReportFormatFromName(std::string_view name);

// "59.8%" with one decimal, or "n/a" when gen is zero.
std::string FormatSuccessRate(std::uint64_t discriminatory,
                              std::uint64_t generated);

std::string EmitReport(const RunReport& report, ReportFormat format);

// Inverse of the JSON emitter.
RunReport ParseReportJson(std::string_view text);

// Symbolic and random runs side by side; JSON holds both reports under
// "runs" plus the success-rate ratio.
std::string EmitComparison(const RunReport& symbolic, const RunReport& random,
                           ReportFormat format);

// "iteration,generated,discriminatory" rows.
std::string EmitCheckpointsCsv(const RunReport& report);

}  // namespace fairtest

#endif  // FAIRTEST_REPORT_H_
