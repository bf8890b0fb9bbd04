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

#include "fairtest/report.h"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

using nlohmann::json;

constexpr int kReportSchemaVersion = 1;

json ToJsonValue(const RunReport& r) {
  json doc;
  doc["format"] = "fairtest-report";
  doc["schema_version"] = kReportSchemaVersion;
  doc["mode"] = r.mode;
  doc["config"] = json::parse(r.config_json);
  json sources = json::object();
  for (Source s : kAllSources) {
    const SourceCounts& c = r.at(s);
    sources[std::string(SourceName(s))] = {{"gen", c.generated},
                                           {"indi", c.discriminatory}};
  }
  doc["sources"] = std::move(sources);
  const SourceCounts total = r.Total();
  doc["total"] = {{"gen", total.generated}, {"indi", total.discriminatory}};
  doc["iterations"] = r.iterations;
  doc["model_probes"] = r.model_probes;
  doc["solver"] = {{"calls", r.solver_calls},
                   {"unsat", r.unsat_constraints},
                   {"visited", r.visited_constraints}};
  json witnesses = json::array();
  for (const WitnessPair& w : r.witnesses) {
    witnesses.push_back({{"source", SourceName(w.source)},
                         {"original", w.original.values},
                         {"modified", w.modified.values}});
  }
  doc["witnesses"] = std::move(witnesses);
  json checkpoints = json::array();
  for (const Checkpoint& c : r.checkpoints) {
    checkpoints.push_back({c.iteration, c.generated, c.discriminatory});
  }
  doc["checkpoints"] = std::move(checkpoints);
  if (r.duration_ms) doc["duration_ms"] = *r.duration_ms;
  return doc;
}

RunReport FromJsonValue(const json& doc) {
  if (doc.value("format", "") != "fairtest-report") {
    throw Error("not a fairtest report");
  }
  if (doc.at("schema_version").get<int>() != kReportSchemaVersion) {
    throw Error("unsupported report schema version");
  }
  RunReport r;
  r.mode = doc.at("mode").get<std::string>();
  r.config_json = doc.at("config").dump();
  for (const auto& [name, c] : doc.at("sources").items()) {
    const auto s = SourceFromName(name);
    if (!s) throw Error("unknown source '" + name + "' in report");
    r.at(*s) = {c.at("gen").get<std::uint64_t>(),
                c.at("indi").get<std::uint64_t>()};
  }
  r.iterations = doc.at("iterations").get<std::uint64_t>();
  r.model_probes = doc.at("model_probes").get<std::uint64_t>();
  const json& solver = doc.at("solver");
  r.solver_calls = solver.at("calls").get<std::uint64_t>();
  r.unsat_constraints = solver.at("unsat").get<std::uint64_t>();
  r.visited_constraints = solver.at("visited").get<std::uint64_t>();
  for (const json& w : doc.at("witnesses")) {
    const auto s = SourceFromName(w.at("source").get<std::string>());
    if (!s) throw Error("unknown witness source in report");
    r.witnesses.push_back({*s,
                           Instance{w.at("original").get<std::vector<int>>()},
                           Instance{w.at("modified").get<std::vector<int>>()}});
  }
  for (const json& c : doc.at("checkpoints")) {
    r.checkpoints.push_back({c.at(0).get<std::uint64_t>(),
                             c.at(1).get<std::uint64_t>(),
                             c.at(2).get<std::uint64_t>()});
  }
  if (doc.contains("duration_ms")) r.duration_ms = doc["duration_ms"].get<double>();
  r.Validate();
  return r;
}

std::string TextTable(const RunReport& r) {
  std::ostringstream out;
  out << "mode: " << r.mode << "  iterations: " << r.iterations
      << "  model probes: " << r.model_probes << '\n';
  out << std::left << std::setw(12) << "source" << std::right << std::setw(10)
      << "#Gen" << std::setw(10) << "#InDi" << std::setw(10) << "success"
      << '\n';
  auto row = [&](std::string_view name, const SourceCounts& c) {
    out << std::left << std::setw(12) << name << std::right << std::setw(10)
        << c.generated << std::setw(10) << c.discriminatory << std::setw(10)
        << FormatSuccessRate(c.discriminatory, c.generated) << '\n';
  };
  for (Source s : kAllSources) row(SourceName(s), r.at(s));
  row("total", r.Total());
  if (r.duration_ms) {
    out << "duration: " << std::fixed << std::setprecision(1) << *r.duration_ms
        << " ms\n";
  }
  return out.str();
}

std::string CsvRows(const RunReport& r, bool with_mode) {
  std::ostringstream out;
  for (Source s : kAllSources) {
    const SourceCounts& c = r.at(s);
    if (with_mode) out << r.mode << ',';
    out << SourceName(s) << ',' << c.generated << ',' << c.discriminatory << ',';
    if (c.generated > 0) {
      out << std::setprecision(6)
          << static_cast<double>(c.discriminatory) /
                 static_cast<double>(c.generated);
    }
    out << '\n';
  }
  return out.str();
}

json RatioJson(const RunReport& symbolic, const RunReport& random) {
  const auto a = symbolic.SuccessRate();
  const auto b = random.SuccessRate();
  if (!a || !b || *b == 0.0) return nullptr;
  return *a / *b;
}

}  // namespace

std::string_view SourceName(Source s) {
  switch (s) {
    case Source::kSeed:
      return "seed";
    case Source::kDirected:
      return "directed";
    case Source::kUndirected:
      return "undirected";
    case Source::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<Source> SourceFromName(std::string_view name) {
  for (Source s : kAllSources) {
    if (SourceName(s) == name) return s;
  }
  return std::nullopt;
}

SourceCounts RunReport::Total() const {
  SourceCounts t;
  for (const SourceCounts& c : counts) {
    t.generated += c.generated;
    t.discriminatory += c.discriminatory;
  }
  return t;
}

std::optional<double> RunReport::SuccessRate() const {
  const SourceCounts t = Total();
  if (t.generated == 0) return std::nullopt;
  return static_cast<double>(t.discriminatory) /
         static_cast<double>(t.generated);
}

void RunReport::Validate() const {
  for (Source s : kAllSources) {
    if (at(s).discriminatory > at(s).generated) {
      throw Error("report invariant violated: #InDi > #Gen for source " +
                  std::string(SourceName(s)));
    }
  }
}

std::optional<ReportFormat> ReportFormatFromName(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  return std::nullopt;
}

std::string FormatSuccessRate(std::uint64_t discriminatory,
                              std::uint64_t generated) {
  if (generated == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%",
                100.0 * static_cast<double>(discriminatory) /
                    static_cast<double>(generated));
  return buf;
}

std::string EmitReport(const RunReport& report, ReportFormat format) {
  report.Validate();
  switch (format) {
    case ReportFormat::kJson:
      return ToJsonValue(report).dump(2) + "\n";
    case ReportFormat::kCsv:
      return "source,gen,indi,success_rate\n" + CsvRows(report, false);
    case ReportFormat::kText:
      return TextTable(report);
  }
  return {};
}

RunReport ParseReportJson(std::string_view text) {
  try {
    return FromJsonValue(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
}

std::string EmitComparison(const RunReport& symbolic, const RunReport& random,
                           ReportFormat format) {
  symbolic.Validate();
  random.Validate();
  switch (format) {
    case ReportFormat::kJson: {
      json doc;
      doc["format"] = "fairtest-comparison";
      doc["schema_version"] = kReportSchemaVersion;
      doc["runs"] = {{"symbolic", ToJsonValue(symbolic)},
                     {"random", ToJsonValue(random)}};
      doc["success_ratio"] = RatioJson(symbolic, random);
      return doc.dump(2) + "\n";
    }
    case ReportFormat::kCsv:
      return "mode,source,gen,indi,success_rate\n" + CsvRows(symbolic, true) +
             CsvRows(random, true);
    case ReportFormat::kText: {
      std::ostringstream out;
      out << TextTable(symbolic) << '\n' << TextTable(random) << '\n';
      const json ratio = RatioJson(symbolic, random);
      out << "success ratio (symbolic / random): ";
      if (ratio.is_null()) {
        out << "n/a\n";
      } else {
        out << std::fixed << std::setprecision(2) << ratio.get<double>() << "x\n";
      }
      return out.str();
    }
  }
  return {};
}

std::string EmitCheckpointsCsv(const RunReport& report) {
  std::ostringstream out;
  out << "iteration,generated,discriminatory\n";
  for (const Checkpoint& c : report.checkpoints) {
    out << c.iteration << ',' << c.generated << ',' << c.discriminatory << '\n';
  }
  return out.str();
}

}  // namespace fairtest
