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

// fairtest-sym: generate test inputs exposing individual discrimination.
//
//   fairtest-sym train    --data d.csv --schema s.json --out m.json
//   fairtest-sym generate --data d.csv --schema s.json --model m.json ...
//   fairtest-sym baseline --schema s.json --model m.json ...
//   fairtest-sym compare  --data d.csv --schema s.json --model m.json ...
//   fairtest-sym synth    --bias 0.8 --n 2000 --out d.csv --schema-out s.json
//   fairtest-sym explain  --data d.csv --schema s.json --model m.json --row 0
//
// Exit status: 0 ran, 1 usage or input error, 2 model protocol failure.
// FAIRTEST_LOG=error|info|debug sets the log level (default info).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fairtest/errors.h"
#include "fairtest/explainer.h"
#include "fairtest/external_model.h"
#include "fairtest/harness.h"
#include "fairtest/model.h"
#include "fairtest/report.h"
#include "fairtest/search.h"
#include "fairtest/tabular.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace {

using namespace fairtest;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitModel = 2;

struct ModelFlags {
  std::string model_path;
  std::string model_cmd;
  int timeout_ms = 5000;
};

struct SearchFlags {
  std::string config_path;
  std::optional<std::uint64_t> limit;
  std::optional<double> t1;
  std::optional<double> t2;
  std::optional<std::size_t> clusters;
  std::optional<std::uint64_t> rng;
  bool no_directed = false;
  bool no_undirected = false;
  std::string seed_order;
  std::string seed_source;
};

struct OutputFlags {
  std::string out;
  std::string format = "json";
  std::string checkpoints;
  bool timing = false;
};

void SetupLogging() {
  auto logger = spdlog::stderr_color_mt("fairtest");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("FAIRTEST_LOG");
  const std::string value = level ? level : "info";
  if (value == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (value == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

void AddModelOptions(CLI::App* cmd, ModelFlags& flags) {
  auto* path = cmd->add_option("--model", flags.model_path,
                               "Logistic model JSON written by 'train'");
  auto* command = cmd->add_option("--model-cmd", flags.model_cmd,
                                  "Shell command of an external model process");
  path->excludes(command);
  cmd->add_option("--model-timeout-ms", flags.timeout_ms,
                  "Per-reply timeout for --model-cmd")
      ->check(CLI::PositiveNumber);
}

void AddSearchOptions(CLI::App* cmd, SearchFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run file");
  cmd->add_option("--limit", flags.limit, "Main-loop iterations");
  cmd->add_option("--t1", flags.t1, "Undirected confidence threshold");
  cmd->add_option("--t2", flags.t2, "Directed confidence threshold");
  cmd->add_option("--clusters", flags.clusters, "k-means cluster count");
  cmd->add_option("--rng", flags.rng, "RNG seed");
  cmd->add_flag("--no-directed", flags.no_directed, "Disable directed search");
  cmd->add_flag("--no-undirected", flags.no_undirected,
                "Disable undirected search");
  cmd->add_option("--seed-order", flags.seed_order, "roundrobin|iterative")
      ->check(CLI::IsMember({"roundrobin", "iterative"}));
  cmd->add_option("--seed-source", flags.seed_source, "training|random")
      ->check(CLI::IsMember({"training", "random"}));
}

void AddOutputOptions(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--out", flags.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", flags.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--checkpoints", flags.checkpoints,
                  "Write cumulative counts per checkpoint as CSV");
  cmd->add_flag("--timing", flags.timing,
                "Include wall-clock duration (breaks byte reproducibility)");
}

std::unique_ptr<PredictionModel> OpenModel(const ModelFlags& flags) {
  if (!flags.model_cmd.empty()) {
    spdlog::info("starting external model: {}", flags.model_cmd);
    return std::make_unique<ExternalModel>(ExternalModelConfig{
        flags.model_cmd, std::chrono::milliseconds(flags.timeout_ms)});
  }
  if (flags.model_path.empty()) {
    throw PreconditionError("one of --model or --model-cmd is required");
  }
  return std::make_unique<LogisticModel>(LogisticModel::Load(flags.model_path));
}

void CheckArity(const PredictionModel& model, const FeatureSchema& schema) {
  if (const auto* lm = dynamic_cast<const LogisticModel*>(&model)) {
    if (lm->arity() != schema.arity()) {
      throw ArityMismatch("model has " + std::to_string(lm->arity()) +
                          " weights, schema has " +
                          std::to_string(schema.arity()) + " features");
    }
  }
}

SearchConfig BuildConfig(const SearchFlags& flags) {
  SearchConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw PreconditionError("cannot open " + flags.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = SearchConfig::FromJson(buf.str());
  }
  if (flags.limit) cfg.limit = *flags.limit;
  if (flags.t1) cfg.t1 = *flags.t1;
  if (flags.t2) cfg.t2 = *flags.t2;
  if (flags.clusters) cfg.num_clusters = *flags.clusters;
  if (flags.rng) cfg.rng_seed = *flags.rng;
  if (flags.no_directed) cfg.directed = false;
  if (flags.no_undirected) cfg.undirected = false;
  if (flags.seed_order == "iterative") cfg.seed_order = SeedOrder::kIterative;
  if (flags.seed_order == "roundrobin") cfg.seed_order = SeedOrder::kRoundRobin;
  if (flags.seed_source == "random") cfg.seed_source = SeedSource::kRandom;
  if (flags.seed_source == "training") cfg.seed_source = SeedSource::kTraining;
  cfg.Validate();
  return cfg;
}

void WriteOutput(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << bytes;
}

void Finish(RunReport& report, const OutputFlags& flags) {
  if (!flags.timing) report.duration_ms.reset();
}

int RunTrain(const std::string& data_path, const std::string& schema_path,
             const std::string& out, const LogisticOptions& options,
             double holdout, std::uint64_t split_seed) {
  Dataset data = LoadCsv(data_path, schema_path);
  Dataset test;
  if (holdout > 0.0) {
    // Seeded shuffle, then the last `holdout` fraction is held out.
    Rng rng(split_seed);
    for (std::size_t i = data.rows.size(); i > 1; --i) {
      const std::size_t j = rng.UniformIndex(i);
      std::swap(data.rows[i - 1], data.rows[j]);
      std::swap(data.labels[i - 1], data.labels[j]);
    }
    const auto n_test = static_cast<std::size_t>(holdout * data.rows.size());
    test.schema = data.schema;
    test.rows.assign(data.rows.end() - n_test, data.rows.end());
    test.labels.assign(data.labels.end() - n_test, data.labels.end());
    data.rows.resize(data.rows.size() - n_test);
    data.labels.resize(data.labels.size() - n_test);
  }
  TrainingSummary summary;
  const LogisticModel model = TrainLogistic(data, options, &summary);
  spdlog::info("trained on {} rows: {} iterations, gradient max-norm {:.3g}{}",
               data.rows.size(), summary.iterations,
               summary.final_gradient_norm,
               summary.converged ? "" : " (max_iter reached)");
  auto accuracy = [&](const Dataset& d) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      ok += model.Predict(d.rows[i]) == d.labels[i];
    }
    return d.rows.empty() ? 0.0 : static_cast<double>(ok) / d.rows.size();
  };
  spdlog::info("training accuracy {:.3f}", accuracy(data));
  if (!test.rows.empty()) {
    spdlog::info("holdout accuracy {:.3f} on {} rows", accuracy(test),
                 test.rows.size());
  }
  if (out.empty()) {
    std::cout << model.ToJson() << '\n';
  } else {
    model.Save(out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  SetupLogging();
  CLI::App app{"Symbolic test generation for individual discrimination"};
  app.require_subcommand(1);

  // train
  std::string data_path;
  std::string schema_path;
  std::string train_out;
  LogisticOptions train_options;
  double holdout = 0.0;
  std::uint64_t split_seed = 42;
  auto* train = app.add_subcommand("train", "Fit a logistic model");
  train->add_option("--data", data_path, "CSV dataset")->required();
  train->add_option("--schema", schema_path, "Schema JSON")->required();
  train->add_option("--out", train_out, "Model JSON output");
  train->add_option("--l2", train_options.l2, "L2 penalty (1/C)");
  train->add_option("--max-iter", train_options.max_iter, "Iteration cap");
  train->add_option("--tol", train_options.tol, "Gradient tolerance");
  train->add_option("--holdout", holdout, "Fraction held out for evaluation")
      ->check(CLI::Range(0.0, 0.9));
  train->add_option("--split-seed", split_seed, "Seed of the holdout split");

  // generate
  ModelFlags gen_model;
  SearchFlags gen_search;
  OutputFlags gen_out;
  auto* generate = app.add_subcommand("generate", "Symbolic generation run");
  generate->add_option("--data", data_path, "CSV dataset")->required();
  generate->add_option("--schema", schema_path, "Schema JSON")->required();
  AddModelOptions(generate, gen_model);
  AddSearchOptions(generate, gen_search);
  AddOutputOptions(generate, gen_out);

  // baseline
  ModelFlags base_model;
  OutputFlags base_out;
  std::uint64_t base_limit = 1000;
  std::uint64_t base_rng = 42;
  auto* baseline = app.add_subcommand("baseline", "Random generation run");
  baseline->add_option("--schema", schema_path, "Schema JSON")->required();
  baseline->add_option("--data", data_path, "Ignored; accepted for symmetry");
  AddModelOptions(baseline, base_model);
  baseline->add_option("--limit", base_limit, "Unique tests to generate")
      ->check(CLI::PositiveNumber);
  baseline->add_option("--rng", base_rng, "RNG seed");
  AddOutputOptions(baseline, base_out);

  // compare
  ModelFlags cmp_model;
  SearchFlags cmp_search;
  OutputFlags cmp_out;
  auto* compare = app.add_subcommand("compare", "Symbolic and random runs");
  compare->add_option("--data", data_path, "CSV dataset")->required();
  compare->add_option("--schema", schema_path, "Schema JSON")->required();
  AddModelOptions(compare, cmp_model);
  AddSearchOptions(compare, cmp_search);
  AddOutputOptions(compare, cmp_out);

  // synth
  double bias = 0.8;
  std::size_t synth_n = 2000;
  std::uint64_t synth_rng = 42;
  std::string synth_out;
  std::string synth_schema_out;
  std::vector<std::size_t> cluster_sizes;
  auto* synth = app.add_subcommand("synth", "Write a synthetic biased dataset");
  synth->add_option("--bias", bias, "Bias level in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--n", synth_n, "Rows")->check(CLI::Range(100, 100000000));
  synth->add_option("--rng", synth_rng, "RNG seed");
  synth->add_option("--clustered", cluster_sizes,
                    "Four group sizes; emits grouped rows instead")
      ->expected(4);
  synth->add_option("--out", synth_out, "CSV output")->required();
  synth->add_option("--schema-out", synth_schema_out, "Schema JSON output")
      ->required();

  // explain
  ModelFlags exp_model;
  std::size_t row = 0;
  std::uint64_t exp_rng = 42;
  auto* explain = app.add_subcommand("explain", "Dump a surrogate tree");
  explain->add_option("--data", data_path, "CSV dataset")->required();
  explain->add_option("--schema", schema_path, "Schema JSON")->required();
  AddModelOptions(explain, exp_model);
  explain->add_option("--row", row, "Row index to explain");
  explain->add_option("--rng", exp_rng, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      return RunTrain(data_path, schema_path, train_out, train_options, holdout,
                      split_seed);
    }
    if (*generate) {
      const Dataset data = LoadCsv(data_path, schema_path);
      const SearchConfig cfg = BuildConfig(gen_search);
      const auto model = OpenModel(gen_model);
      CheckArity(*model, data.schema);
      RunReport report = RunSymbolicSearch(*model, data, cfg);
      spdlog::info("symbolic: {} / {} discriminatory",
                   report.Total().discriminatory, report.Total().generated);
      Finish(report, gen_out);
      WriteOutput(gen_out.out,
                  EmitReport(report, *ReportFormatFromName(gen_out.format)));
      if (!gen_out.checkpoints.empty()) {
        WriteOutput(gen_out.checkpoints, EmitCheckpointsCsv(report));
      }
      return kExitOk;
    }
    if (*baseline) {
      const FeatureSchema schema = FeatureSchema::Load(schema_path);
      const auto model = OpenModel(base_model);
      CheckArity(*model, schema);
      BaselineOptions options;
      options.limit = base_limit;
      Rng rng(base_rng);
      RunReport report = RandomBaseline(*model, schema, options, rng);
      spdlog::info("random: {} / {} discriminatory",
                   report.Total().discriminatory, report.Total().generated);
      Finish(report, base_out);
      WriteOutput(base_out.out,
                  EmitReport(report, *ReportFormatFromName(base_out.format)));
      if (!base_out.checkpoints.empty()) {
        WriteOutput(base_out.checkpoints, EmitCheckpointsCsv(report));
      }
      return kExitOk;
    }
    if (*compare) {
      const Dataset data = LoadCsv(data_path, schema_path);
      const SearchConfig cfg = BuildConfig(cmp_search);
      const auto model = OpenModel(cmp_model);
      CheckArity(*model, data.schema);
      RunReport symbolic = RunSymbolicSearch(*model, data, cfg);
      BaselineOptions options;
      options.limit = cfg.limit;
      options.combination_cap = cfg.combination_cap;
      options.checkpoint_every = cfg.checkpoint_every;
      Rng rng(cfg.rng_seed);
      RunReport random = RandomBaseline(*model, data.schema, options, rng);
      Finish(symbolic, cmp_out);
      Finish(random, cmp_out);
      WriteOutput(cmp_out.out,
                  EmitComparison(symbolic, random,
                                 *ReportFormatFromName(cmp_out.format)));
      return kExitOk;
    }
    if (*synth) {
      Rng rng(synth_rng);
      const Dataset data = cluster_sizes.empty()
                               ? SynthBiasedDataset(bias, synth_n, rng)
                               : SynthClusteredDataset(bias, cluster_sizes, rng);
      std::ostringstream csv;
      WriteCsv(data, csv);
      WriteOutput(synth_out, csv.str());
      WriteOutput(synth_schema_out, data.schema.ToJson() + "\n");
      spdlog::info("wrote {} rows to {}", data.rows.size(), synth_out);
      return kExitOk;
    }
    if (*explain) {
      const Dataset data = LoadCsv(data_path, schema_path);
      if (row >= data.rows.size()) {
        throw PreconditionError("--row out of range");
      }
      const auto model = OpenModel(exp_model);
      CheckArity(*model, data.schema);
      const LocalExplainer explainer;
      Rng rng(exp_rng);
      const Instance& x = data.rows[row];
      const SurrogateTree tree = explainer.FitSurrogate(*model, x, data.schema, rng);
      std::cout << tree.ToText(data.schema) << '\n' << tree.ToJson() << "\n\n";
      const DecisionPath path = ExtractPath(tree, x, data.schema);
      for (const Predicate& c : path.predicates) {
        std::cout << ToString(c, data.schema) << "  conf=" << c.confidence
                  << (c.is_protected ? "  [protected]" : "") << '\n';
      }
      std::cout << "leaf class " << path.leaf_class << ", model class "
                << model->Predict(x) << '\n';
      return kExitOk;
    }
  } catch (const ModelError& e) {
    spdlog::error("model failure: {}", e.what());
    return kExitModel;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
