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

// Symbolic test generation for individual discrimination.
//
// The loop keeps a priority queue of candidate inputs. Each dequeued input is
// checked for discrimination and explained by a local surrogate tree; the
// tree path is then toggled to produce new inputs:
//
//  * directed: after a hit, re-solve the full path with one low-confidence
//    (< t2) non-protected predicate negated, queued ahead of everything else;
//  * undirected: negate each high-confidence (>= t1) non-protected predicate
//    under its prefix, queued behind the seeds.
//
// Seeds are training rows interleaved round-robin across k-means clusters.
// Lower priority values are dequeued first; equal priorities keep insertion
// order.

#ifndef FAIRTEST_SEARCH_H_
#define FAIRTEST_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "fairtest/constraint.h"
#include "fairtest/explainer.h"
#include "fairtest/fairness.h"
#include "fairtest/model.h"
#include "fairtest/random.h"
#include "fairtest/report.h"
#include "fairtest/tabular.h"

namespace fairtest {

enum class SeedOrder { kRoundRobin, kIterative };
enum class SeedSource { kTraining, kRandom };

struct SearchConfig {
  std::uint64_t limit = 1000;
  double t1 = 0.3;
  double t2 = 0.2;
  double rank_directed = 0.0;
  double rank_seed = 2.0;
  double rank_undirected = 4.0;
  std::size_t num_clusters = 4;
  std::uint64_t rng_seed = 42;

  bool directed = true;
  bool undirected = true;
  SeedOrder seed_order = SeedOrder::kRoundRobin;
  SeedSource seed_source = SeedSource::kTraining;

  // Record cumulative counts every this many iterations (0 disables).
  std::uint64_t checkpoint_every = 50;
  std::size_t combination_cap = kDefaultCombinationCap;
  ExplainerOptions explainer;

  // Throws PreconditionError on out-of-range thresholds or ranks spaced
  // closer than 1 (which would let r in [0, 1] reorder tiers).
  void Validate() const;

  // Missing keys keep their defaults.
  static SearchConfig FromJson(std::string_view text);
  std::string ToJson() const;
};

std::string_view SeedOrderName(SeedOrder order);
std::string_view SeedSourceName(SeedSource source);

// Lloyd's algorithm over unit-normalized rows with k-means++ seeding. Stops
// after 100 rounds or once no centroid moves more than 1e-6. Returns one
// index list per cluster in dataset order; clusters may end up empty on
// degenerate data. Throws PreconditionError for k == 0 and TooFewRows when
// the dataset has fewer than k rows.
std::vector<std::vector<std::size_t>> KMeans(const Dataset& data, std::size_t k,
                                             Rng& rng);

// First member of each cluster, then the second of each, and so on,
// skipping exhausted clusters; at most `limit` indices.
std::vector<std::size_t> RoundRobin(
    const std::vector<std::vector<std::size_t>>& clusters, std::size_t limit);

// Seed inputs per the configured order and source, truncated to cfg.limit.
std::vector<Instance> SeedTestInputs(const Dataset& data,
                                     const SearchConfig& cfg, Rng& rng);

struct RankedInput {
  Instance instance;
  double priority = 0.0;
  Source source = Source::kSeed;
};

// Min-priority queue, FIFO among equal priorities.
class SearchQueue {
 public:
  void Push(RankedInput item);
  RankedInput Pop();
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Entry {
    RankedInput item;
    std::uint64_t sequence;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.item.priority != b.item.priority) {
        return a.item.priority > b.item.priority;
      }
      return a.sequence > b.sequence;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
};

// Loop-owned mutable state.
struct SearchState {
  SearchQueue queue;
  VisitedSet visited;
  // Non-protected key -> discrimination verdict of its first check.
  std::map<std::vector<int>, bool> generated;
  std::uint64_t count = 0;
  RunReport report;
};

// Both return the number of inputs enqueued.
std::size_t DirectedExpand(const DecisionPath& path, const FeatureSchema& schema,
                           const SearchConfig& cfg, SearchState& state,
                           Rng& rng);
std::size_t UndirectedExpand(const DecisionPath& path,
                             const FeatureSchema& schema,
                             const SearchConfig& cfg, SearchState& state,
                             Rng& rng);

// Runs the generation loop for at most cfg.limit dequeues. Uses a
// LocalExplainer built from cfg.explainer when `explainer` is null.
RunReport RunSymbolicSearch(const PredictionModel& model, const Dataset& data,
                            const SearchConfig& cfg,
                            const PathExplainer* explainer = nullptr);

}  // namespace fairtest

#endif  // FAIRTEST_SEARCH_H_
