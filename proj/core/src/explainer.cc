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

#include "fairtest/explainer.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

// Gains closer than this are treated as equal.
constexpr double kGainEpsilon = 1e-12;

double Gini(double w0, double w1) {
  const double w = w0 + w1;
  if (w <= 0) return 0.0;
  const double p0 = w0 / w;
  const double p1 = w1 / w;
  return 1.0 - p0 * p0 - p1 * p1;
}

int FloorMidpoint(int a, int b) {
  return static_cast<int>(
      std::floor((static_cast<double>(a) + static_cast<double>(b)) / 2.0));
}

struct Split {
  int feature = -1;
  int threshold = 0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<WeightedSample>& samples,
              const FeatureSchema& schema, const TreeOptions& options)
      : samples_(samples), schema_(schema), options_(options) {}

  std::vector<TreeNode> Build() {
    std::vector<std::size_t> all(samples_.size());
    std::iota(all.begin(), all.end(), 0);
    Grow(all, 0);
    return std::move(nodes_);
  }

 private:
  int Grow(const std::vector<std::size_t>& idx, int depth) {
    TreeNode node;
    for (std::size_t i : idx) {
      node.class_weight[samples_[i].label] += samples_[i].weight;
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    const bool pure = node.class_weight[0] <= 0 || node.class_weight[1] <= 0;
    if (depth >= options_.max_depth || pure) return id;

    const Split best = BestSplit(idx, node);
    if (best.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t i : idx) {
      (samples_[i].instance[best.feature] <= best.threshold ? left : right)
          .push_back(i);
    }
    const int l = Grow(left, depth + 1);
    const int r = Grow(right, depth + 1);
    TreeNode& self = nodes_[id];
    self.feature = best.feature;
    self.threshold = best.threshold;
    self.left = l;
    self.right = r;
    return id;
  }

  Split BestSplit(const std::vector<std::size_t>& idx, const TreeNode& parent) {
    Split best;
    const double total = parent.Weight();
    const double parent_gini = Gini(parent.class_weight[0], parent.class_weight[1]);
    std::vector<std::size_t> order = idx;
    for (std::size_t f = 0; f < schema_.arity(); ++f) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples_[a].instance[f] < samples_[b].instance[f];
      });
      std::array<double, 2> left{0.0, 0.0};
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const WeightedSample& s = samples_[order[k]];
        left[s.label] += s.weight;
        const int here = s.instance[f];
        const int next = samples_[order[k + 1]].instance[f];
        if (here == next) continue;
        const double wl = left[0] + left[1];
        const double wr = total - wl;
        if (wl < options_.min_leaf_weight || wr < options_.min_leaf_weight) {
          continue;
        }
        const double r0 = parent.class_weight[0] - left[0];
        const double r1 = parent.class_weight[1] - left[1];
        const double gain = parent_gini - (wl / total) * Gini(left[0], left[1]) -
                            (wr / total) * Gini(r0, r1);
        if (gain > best.gain + kGainEpsilon) {
          best = {static_cast<int>(f), FloorMidpoint(here, next), gain};
        }
      }
    }
    return best;
  }

  const std::vector<WeightedSample>& samples_;
  const FeatureSchema& schema_;
  const TreeOptions& options_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

std::vector<Instance> Perturb(const Instance& center,
                              const FeatureSchema& schema, std::size_t n,
                              double keep_probability, Rng& rng) {
  if (n == 0) throw PreconditionError("perturbation count must be >= 1");
  std::vector<Instance> out;
  out.reserve(n);
  out.push_back(center);
  for (std::size_t s = 1; s < n; ++s) {
    Instance x = center;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!rng.Bernoulli(keep_probability)) {
        const Interval& d = schema.domain(i);
        x[i] = rng.UniformInt(d.lo, d.hi);
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

double KernelWeight(const Instance& center, const Instance& sample,
                    const FeatureSchema& schema) {
  const std::vector<double> a = NormalizeToUnit(center, schema);
  const std::vector<double> b = NormalizeToUnit(sample, schema);
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  const double sigma2 = 0.75 * 0.75 * static_cast<double>(schema.arity());
  return std::exp(-d2 / sigma2);
}

double TreeNode::Purity() const {
  const double w = Weight();
  if (w <= 0) return 0.0;
  return std::max(class_weight[0], class_weight[1]) / w;
}

double TreeNode::Gini() const {
  const double w = Weight();
  if (w <= 0.0) return 0.0;
  const double p = class_weight[0] / w;
  return 2.0 * p * (1.0 - p);
}

double SurrogateTree::SplitConfidence(std::size_t id) const {
  const TreeNode& n = nodes_[id];
  if (n.IsLeaf()) return 1.0;
  const double before = n.Gini() * n.Weight();
  if (before <= 0.0) return 1.0;
  const TreeNode& l = nodes_[static_cast<std::size_t>(n.left)];
  const TreeNode& r = nodes_[static_cast<std::size_t>(n.right)];
  const double after = l.Gini() * l.Weight() + r.Gini() * r.Weight();
  return std::clamp((before - after) / before, 0.0, 1.0);
}

int SurrogateTree::depth() const {
  std::function<int(int)> rec = [&](int id) -> int {
    const TreeNode& n = nodes_[id];
    if (n.IsLeaf()) return 0;
    return 1 + std::max(rec(n.left), rec(n.right));
  };
  return nodes_.empty() ? 0 : rec(0);
}

std::size_t SurrogateTree::LeafFor(const Instance& x) const {
  std::size_t id = 0;
  while (!nodes_[id].IsLeaf()) {
    const TreeNode& n = nodes_[id];
    id = static_cast<std::size_t>(x[n.feature] <= n.threshold ? n.left : n.right);
  }
  return id;
}

std::string SurrogateTree::ToText(const FeatureSchema& schema) const {
  std::ostringstream out;
  std::function<void(int, int)> rec = [&](int id, int indent) {
    const TreeNode& n = nodes_[id];
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (n.IsLeaf()) {
      out << pad << "class " << n.MajorityClass() << " (w0=" << n.class_weight[0]
          << ", w1=" << n.class_weight[1] << ")\n";
      return;
    }
    const std::string& name = schema.feature(n.feature).name;
    out << pad << name << " <= " << n.threshold << '\n';
    rec(n.left, indent + 1);
    out << pad << name << " > " << n.threshold << '\n';
    rec(n.right, indent + 1);
  };
  if (!nodes_.empty()) rec(0, 0);
  return out.str();
}

std::string SurrogateTree::ToJson() const {
  using nlohmann::json;
  std::function<json(int)> rec = [&](int id) -> json {
    const TreeNode& n = nodes_[id];
    if (n.IsLeaf()) {
      return {{"class", n.MajorityClass()},
              {"weight", {n.class_weight[0], n.class_weight[1]}}};
    }
    return {{"feature", n.feature},
            {"threshold", n.threshold},
            {"left", rec(n.left)},
            {"right", rec(n.right)}};
  };
  return nodes_.empty() ? "null" : rec(0).dump();
}

SurrogateTree FitTree(const std::vector<WeightedSample>& samples,
                      const FeatureSchema& schema, const TreeOptions& options) {
  double total = 0.0;
  for (const WeightedSample& s : samples) total += s.weight;
  if (samples.empty() || !(total > 0.0)) {
    throw EmptySampleSet("surrogate tree needs samples with positive weight");
  }
  return SurrogateTree(TreeBuilder(samples, schema, options).Build());
}

DecisionPath ExtractPath(const SurrogateTree& tree, const Instance& x,
                         const FeatureSchema& schema) {
  DecisionPath path;
  const auto& nodes = tree.nodes();
  std::size_t id = 0;
  while (!nodes[id].IsLeaf()) {
    const TreeNode& n = nodes[id];
    const bool go_left = x[n.feature] <= n.threshold;
    const std::size_t child =
        static_cast<std::size_t>(go_left ? n.left : n.right);
    Predicate c;
    c.feature = static_cast<std::size_t>(n.feature);
    c.op = go_left ? CompareOp::kLe : CompareOp::kGt;
    c.threshold = n.threshold;
    c.confidence = tree.SplitConfidence(id);
    c.is_protected = schema.IsProtected(c.feature);
    assert(c.SatisfiedBy(x));
    path.predicates.push_back(c);
    id = child;
  }
  path.leaf_class = nodes[id].MajorityClass();
  return path;
}

SurrogateTree LocalExplainer::FitSurrogate(const PredictionModel& model,
                                           const Instance& x,
                                           const FeatureSchema& schema,
                                           Rng& rng) const {
  const std::vector<Instance> neighborhood =
      Perturb(x, schema, options_.num_samples, options_.keep_probability, rng);
  const std::vector<int> labels = model.PredictBatch(neighborhood);
  std::vector<WeightedSample> samples;
  samples.reserve(neighborhood.size());
  double total = 0.0;
  for (std::size_t i = 0; i < neighborhood.size(); ++i) {
    const double w = KernelWeight(x, neighborhood[i], schema);
    total += w;
    samples.push_back({neighborhood[i], labels[i], w});
  }
  TreeOptions tree_options;
  tree_options.max_depth = options_.max_depth;
  tree_options.min_leaf_weight = options_.min_leaf_fraction * total;
  return FitTree(samples, schema, tree_options);
}

DecisionPath LocalExplainer::Explain(const PredictionModel& model,
                                     const Instance& x,
                                     const FeatureSchema& schema,
                                     Rng& rng) const {
  return ExtractPath(FitSurrogate(model, x, schema, rng), x, schema);
}

}  // namespace fairtest
