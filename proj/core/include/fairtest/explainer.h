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

// Local surrogate explanations.
//
// To explain the model around an instance we sample a perturbation
// neighborhood, label it with the model, weight each sample by an
// exponential kernel on its distance to the instance, and fit a small
// weighted CART tree. The instance's root-to-leaf path in that tree, with a
// confidence per split, is what the search engine toggles.

#ifndef FAIRTEST_EXPLAINER_H_
#define FAIRTEST_EXPLAINER_H_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fairtest/constraint.h"
#include "fairtest/model.h"
#include "fairtest/random.h"
#include "fairtest/tabular.h"

namespace fairtest {

struct WeightedSample {
  Instance instance;
  int label = 0;
  double weight = 1.0;
};

// Sample 0 is `center`; every other sample keeps each feature of `center`
// with probability `keep_probability` and otherwise redraws it uniformly from
// the domain. Requires n >= 1.
std::vector<Instance> Perturb(const Instance& center,
                              const FeatureSchema& schema, std::size_t n,
                              double keep_probability, Rng& rng);

// exp(-d^2 / sigma^2), d the Euclidean distance of the unit-normalized
// vectors and sigma = 0.75 * sqrt(arity).
double KernelWeight(const Instance& center, const Instance& sample,
                    const FeatureSchema& schema);

struct TreeNode {
  // -1 for leaves.
  int feature = -1;
  // Samples with value <= threshold go left.
  int threshold = 0;
  int left = -1;
  int right = -1;
  // Weighted sample mass per class reaching this node.
  std::array<double, 2> class_weight{0.0, 0.0};

  bool IsLeaf() const { return feature < 0; }
  double Weight() const { return class_weight[0] + class_weight[1]; }
  // Ties go to class 0.
  int MajorityClass() const { return class_weight[1] > class_weight[0] ? 1 : 0; }
  // Weighted fraction of the majority class, in [0.5, 1] for non-empty nodes.
  double Purity() const;
  // Two-class Gini impurity 2p(1-p) of the weighted mass.
  double Gini() const;
};

class SurrogateTree {
 public:
  SurrogateTree() = default;
  explicit SurrogateTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }
  int depth() const;

  // Index of the leaf reached by x.
  std::size_t LeafFor(const Instance& x) const;
  int Predict(const Instance& x) const { return nodes_[LeafFor(x)].MajorityClass(); }

  // Share of node `id`'s weighted Gini impurity removed by its split, in
  // [0, 1]. Splits that barely change the outcome score near 0. Leaves and
  // already-pure nodes score 1.
  double SplitConfidence(std::size_t id) const;

  std::string ToText(const FeatureSchema& schema) const;
  // {"feature":i,"threshold":v,"left":...,"right":...}; leaves are
  // {"class":c,"weight":[w0,w1]}.
  std::string ToJson() const;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeOptions {
  int max_depth = 6;
  // Absolute mass; a split is rejected if either child would fall below it.
  double min_leaf_weight = 0.0;
};

// Weighted CART with Gini impurity. Candidate thresholds are the floors of
// midpoints between consecutive distinct observed values. Equal gains are
// resolved toward the lower feature index, then the lower threshold. Throws
// EmptySampleSet when the total weight is not positive.
SurrogateTree FitTree(const std::vector<WeightedSample>& samples,
                      const FeatureSchema& schema, const TreeOptions& options);

struct DecisionPath {
  std::vector<Predicate> predicates;
  int leaf_class = 0;
};

// Root-to-leaf walk for x; each predicate is oriented so x satisfies it and
// carries the SplitConfidence() of the node it came from.
DecisionPath ExtractPath(const SurrogateTree& tree, const Instance& x,
                         const FeatureSchema& schema);

// Source of decision paths for the search loop.
class PathExplainer {
 public:
  virtual ~PathExplainer() = default;
  virtual DecisionPath Explain(const PredictionModel& model, const Instance& x,
                               const FeatureSchema& schema, Rng& rng) const = 0;
};

struct ExplainerOptions {
  std::size_t num_samples = 1000;
  double keep_probability = 0.7;
  int max_depth = 6;
  // Fraction of the neighborhood's total kernel weight.
  double min_leaf_fraction = 0.01;
};

class LocalExplainer : public PathExplainer {
 public:
  LocalExplainer() = default;
  explicit LocalExplainer(ExplainerOptions options) : options_(options) {}

  // Perturb, label with the model, weight, fit.
  SurrogateTree FitSurrogate(const PredictionModel& model, const Instance& x,
                             const FeatureSchema& schema, Rng& rng) const;

  DecisionPath Explain(const PredictionModel& model, const Instance& x,
                       const FeatureSchema& schema, Rng& rng) const override;

  const ExplainerOptions& options() const { return options_; }

 private:
  ExplainerOptions options_;
};

}  // namespace fairtest

#endif  // FAIRTEST_EXPLAINER_H_
