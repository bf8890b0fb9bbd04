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

#include "fairtest/search.h"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

using nlohmann::json;

// Marks, solves and enqueues one constraint. Returns true if an input was
// enqueued.
bool ScheduleConstraint(const PathConstraint& pc, double priority,
                        Source source, const FeatureSchema& schema,
                        SearchState& state, Rng& rng) {
  const IntervalBox box = Canonicalize(pc, schema);
  if (!state.visited.Insert(box)) return false;
  ++state.report.solver_calls;
  std::optional<Instance> input = Solve(pc, schema, rng);
  if (!input) {
    ++state.report.unsat_constraints;
    return false;
  }
  state.queue.Push({std::move(*input), priority, source});
  return true;
}

void RecordCheckpoint(SearchState& state) {
  const SourceCounts t = state.report.Total();
  if (!state.report.checkpoints.empty() &&
      state.report.checkpoints.back().iteration == state.count) {
    return;
  }
  state.report.checkpoints.push_back({state.count, t.generated, t.discriminatory});
}

}  // namespace

void SearchConfig::Validate() const {
  if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0)) {
    throw PreconditionError("thresholds t1 and t2 must lie in [0, 1]");
  }
  if (!(rank_directed + 1.0 <= rank_seed && rank_seed + 1.0 <= rank_undirected)) {
    throw PreconditionError(
        "ranks must satisfy rank_directed + 1 <= rank_seed and "
        "rank_seed + 1 <= rank_undirected");
  }
  if (num_clusters == 0) throw PreconditionError("num_clusters must be >= 1");
  if (explainer.num_samples == 0) {
    throw PreconditionError("explainer needs at least one sample");
  }
  if (!(explainer.keep_probability >= 0.0 && explainer.keep_probability <= 1.0)) {
    throw PreconditionError("keep probability must lie in [0, 1]");
  }
}

std::string_view SeedOrderName(SeedOrder order) {
  return order == SeedOrder::kRoundRobin ? "roundrobin" : "iterative";
}

std::string_view SeedSourceName(SeedSource source) {
  return source == SeedSource::kTraining ? "training" : "random";
}

SearchConfig SearchConfig::FromJson(std::string_view text) {
  SearchConfig cfg;
  try {
    const json doc = json::parse(text);
    cfg.limit = doc.value("limit", cfg.limit);
    cfg.t1 = doc.value("t1", cfg.t1);
    cfg.t2 = doc.value("t2", cfg.t2);
    cfg.rank_directed = doc.value("rank_directed", cfg.rank_directed);
    cfg.rank_seed = doc.value("rank_seed", cfg.rank_seed);
    cfg.rank_undirected = doc.value("rank_undirected", cfg.rank_undirected);
    cfg.num_clusters = doc.value("num_clusters", cfg.num_clusters);
    cfg.rng_seed = doc.value("rng_seed", cfg.rng_seed);
    cfg.directed = doc.value("directed", cfg.directed);
    cfg.undirected = doc.value("undirected", cfg.undirected);
    const std::string order = doc.value("seed_order", "roundrobin");
    if (order == "roundrobin") {
      cfg.seed_order = SeedOrder::kRoundRobin;
    } else if (order == "iterative") {
      cfg.seed_order = SeedOrder::kIterative;
    } else {
      throw PreconditionError("unknown seed_order '" + order + "'");
    }
    const std::string source = doc.value("seed_source", "training");
    if (source == "training") {
      cfg.seed_source = SeedSource::kTraining;
    } else if (source == "random") {
      cfg.seed_source = SeedSource::kRandom;
    } else {
      throw PreconditionError("unknown seed_source '" + source + "'");
    }
    cfg.checkpoint_every = doc.value("checkpoint_every", cfg.checkpoint_every);
    cfg.combination_cap = doc.value("combination_cap", cfg.combination_cap);
    if (doc.contains("explainer")) {
      const json& e = doc["explainer"];
      cfg.explainer.num_samples =
          e.value("num_samples", cfg.explainer.num_samples);
      cfg.explainer.keep_probability =
          e.value("keep_probability", cfg.explainer.keep_probability);
      cfg.explainer.max_depth = e.value("max_depth", cfg.explainer.max_depth);
      cfg.explainer.min_leaf_fraction =
          e.value("min_leaf_fraction", cfg.explainer.min_leaf_fraction);
    }
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed run file: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

std::string SearchConfig::ToJson() const {
  json doc;
  doc["limit"] = limit;
  doc["t1"] = t1;
  doc["t2"] = t2;
  doc["rank_directed"] = rank_directed;
  doc["rank_seed"] = rank_seed;
  doc["rank_undirected"] = rank_undirected;
  doc["num_clusters"] = num_clusters;
  doc["rng_seed"] = rng_seed;
  doc["directed"] = directed;
  doc["undirected"] = undirected;
  doc["seed_order"] = SeedOrderName(seed_order);
  doc["seed_source"] = SeedSourceName(seed_source);
  doc["checkpoint_every"] = checkpoint_every;
  doc["combination_cap"] = combination_cap;
  doc["explainer"] = {{"num_samples", explainer.num_samples},
                      {"keep_probability", explainer.keep_probability},
                      {"max_depth", explainer.max_depth},
                      {"min_leaf_fraction", explainer.min_leaf_fraction}};
  return doc.dump();
}

std::vector<Instance> SeedTestInputs(const Dataset& data,
                                     const SearchConfig& cfg, Rng& rng) {
  const auto limit = static_cast<std::size_t>(cfg.limit);
  std::vector<Instance> seeds;
  if (cfg.seed_source == SeedSource::kRandom) {
    const std::size_t n = std::min(limit, data.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
      seeds.push_back(RandomInstance(data.schema, rng));
    }
    return seeds;
  }
  if (data.rows.empty()) return seeds;

  std::vector<std::size_t> order;
  if (cfg.seed_order == SeedOrder::kIterative) {
    order.resize(std::min(limit, data.rows.size()));
    std::iota(order.begin(), order.end(), 0);
  } else {
    const std::size_t k = std::min(cfg.num_clusters, data.rows.size());
    order = RoundRobin(KMeans(data, k, rng), limit);
  }
  seeds.reserve(order.size());
  for (std::size_t i : order) seeds.push_back(data.rows[i]);
  return seeds;
}

void SearchQueue::Push(RankedInput item) {
  assert(std::isfinite(item.priority));
  heap_.push({std::move(item), next_sequence_++});
}

RankedInput SearchQueue::Pop() {
  RankedInput top = heap_.top().item;
  heap_.pop();
  return top;
}

std::size_t DirectedExpand(const DecisionPath& path, const FeatureSchema& schema,
                           const SearchConfig& cfg, SearchState& state,
                           Rng& rng) {
  std::size_t enqueued = 0;
  for (std::size_t i = 0; i < path.predicates.size(); ++i) {
    const Predicate& c = path.predicates[i];
    if (c.is_protected) continue;
    if (!(c.confidence < cfg.t2)) continue;
    // Whole path with only c negated.
    PathConstraint pc{path.predicates};
    pc.predicates[i] = Toggle(c);
    const double r = pc.MeanConfidence();
    if (ScheduleConstraint(pc, cfg.rank_directed - r, Source::kDirected, schema,
                           state, rng)) {
      ++enqueued;
    }
  }
  return enqueued;
}

std::size_t UndirectedExpand(const DecisionPath& path,
                             const FeatureSchema& schema,
                             const SearchConfig& cfg, SearchState& state,
                             Rng& rng) {
  std::size_t enqueued = 0;
  PathConstraint prefix;
  for (const Predicate& c : path.predicates) {
    if (c.is_protected) continue;
    if (c.confidence < cfg.t1) break;
    // Prefix plus the negated predicate; nothing from the suffix.
    PathConstraint pc = prefix;
    pc.predicates.push_back(Toggle(c));
    const double r = pc.MeanConfidence();
    if (ScheduleConstraint(pc, cfg.rank_undirected + r, Source::kUndirected,
                           schema, state, rng)) {
      ++enqueued;
    }
    prefix.predicates.push_back(c);
  }
  return enqueued;
}

RunReport RunSymbolicSearch(const PredictionModel& model, const Dataset& data,
                            const SearchConfig& cfg,
                            const PathExplainer* explainer) {
  cfg.Validate();
  const FeatureSchema& schema = data.schema;
  schema.RequireProtected();
  const auto start = std::chrono::steady_clock::now();

  const LocalExplainer default_explainer(cfg.explainer);
  const PathExplainer& paths = explainer ? *explainer : default_explainer;
  const CountingModel counted(model);
  const DiscriminationChecker checker(schema, cfg.combination_cap);

  Rng master(cfg.rng_seed);
  Rng seed_rng(master.Fork());
  Rng explain_rng(master.Fork());
  Rng solve_rng(master.Fork());

  SearchState state;
  state.report.mode = "symbolic";
  state.report.config_json = cfg.ToJson();
  for (Instance& seed : SeedTestInputs(data, cfg, seed_rng)) {
    state.queue.Push({std::move(seed), cfg.rank_seed, Source::kSeed});
  }

  while (state.count < cfg.limit && !state.queue.empty()) {
    RankedInput item = state.queue.Pop();
    const Instance& t = item.instance;
    assert(IsValid(t, schema));

    std::vector<int> key = NonProtectedKey(t, schema);
    auto it = state.generated.find(key);
    bool found;
    if (it == state.generated.end()) {
      const DiscriminationResult result = checker.Check(t, counted);
      found = result.found;
      state.generated.emplace(std::move(key), found);
      SourceCounts& counts = state.report.at(item.source);
      ++counts.generated;
      if (found) {
        ++counts.discriminatory;
        state.report.witnesses.push_back(
            {item.source, result.witness->first, result.witness->second});
      }
    } else {
      // Duplicate of an executed test: the verdict cannot change, but its
      // fresh explanation may open new constraints.
      found = it->second;
    }

    const DecisionPath path = paths.Explain(counted, t, schema, explain_rng);
    if (found && cfg.directed) {
      DirectedExpand(path, schema, cfg, state, solve_rng);
    }
    if (cfg.undirected) UndirectedExpand(path, schema, cfg, state, solve_rng);

    ++state.count;
    if (cfg.checkpoint_every > 0 && state.count % cfg.checkpoint_every == 0) {
      RecordCheckpoint(state);
    }
  }
  RecordCheckpoint(state);

  RunReport report = std::move(state.report);
  report.iterations = state.count;
  report.model_probes = counted.probes();
  report.visited_constraints = state.visited.size();
  report.duration_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  report.Validate();
  return report;
}

}  // namespace fairtest
