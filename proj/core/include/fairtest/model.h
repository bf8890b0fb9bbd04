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

#ifndef FAIRTEST_MODEL_H_
#define FAIRTEST_MODEL_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairtest/tabular.h"

namespace fairtest {

// Black-box binary classifier. Implementations must be deterministic and
// PredictBatch must agree pointwise with Predict.
class PredictionModel {
 public:
  virtual ~PredictionModel() = default;

  virtual int Predict(const Instance& x) const = 0;

  virtual std::vector<int> PredictBatch(std::span<const Instance> xs) const {
    std::vector<int> out;
    out.reserve(xs.size());
    for (const Instance& x : xs) out.push_back(Predict(x));
    return out;
  }
};

// Wraps a callable; handy for planted-bias and constant models.
class FunctionModel : public PredictionModel {
 public:
  explicit FunctionModel(std::function<int(const Instance&)> fn)
      : fn_(std::move(fn)) {}
  int Predict(const Instance& x) const override { return fn_(x); }

 private:
  std::function<int(const Instance&)> fn_;
};

// Forwards to another model and counts instances classified.
class CountingModel : public PredictionModel {
 public:
  explicit CountingModel(const PredictionModel& inner) : inner_(inner) {}

  int Predict(const Instance& x) const override {
    probes_.fetch_add(1, std::memory_order_relaxed);
    return inner_.Predict(x);
  }
  std::vector<int> PredictBatch(std::span<const Instance> xs) const override {
    probes_.fetch_add(xs.size(), std::memory_order_relaxed);
    return inner_.PredictBatch(xs);
  }

  std::uint64_t probes() const { return probes_.load(); }

 private:
  const PredictionModel& inner_;
  mutable std::atomic<std::uint64_t> probes_{0};
};

// Per-feature affine map onto [-1, 1] used before the linear score.
struct FeatureScale {
  double center = 0.0;
  double half_range = 1.0;
};

class LogisticModel : public PredictionModel {
 public:
  LogisticModel() = default;
  LogisticModel(std::vector<double> weights, double bias,
                std::vector<FeatureScale> scale);

  // Scale mapping each schema domain onto [-1, 1].
  static std::vector<FeatureScale> DomainScale(const FeatureSchema& schema);

  // w . x_scaled + b.
  double Score(const Instance& x) const;
  double Probability(const Instance& x) const;
  // 1 iff sigmoid(score) >= 0.5.
  int Predict(const Instance& x) const override;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const std::vector<FeatureScale>& scale() const { return scale_; }
  std::size_t arity() const { return weights_.size(); }

  std::string ToJson() const;
  static LogisticModel FromJson(std::string_view text);
  void Save(const std::filesystem::path& path) const;
  static LogisticModel Load(const std::filesystem::path& path);

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::vector<FeatureScale> scale_;
};

struct LogisticOptions {
  // Penalty (l2/2)*|w|^2 added to the summed log-loss; 1.0 matches an
  // inverse regularization strength C = 1. The intercept is not penalized.
  double l2 = 1.0;
  int max_iter = 1000;
  // Stop once the max-norm of the per-row averaged gradient drops below this.
  double tol = 1e-6;
};

struct TrainingSummary {
  int iterations = 0;
  double final_gradient_norm = 0.0;
  bool converged = false;
};

// Full-batch gradient descent from zero weights. Throws DegenerateLabels when
// only one class is present and PreconditionError on fewer than two rows.
LogisticModel TrainLogistic(const Dataset& data,
                            const LogisticOptions& options = {},
                            TrainingSummary* summary = nullptr);

}  // namespace fairtest

#endif  // FAIRTEST_MODEL_H_
