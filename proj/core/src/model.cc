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

#include "fairtest/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

LogisticModel::LogisticModel(std::vector<double> weights, double bias,
                             std::vector<FeatureScale> scale)
    : weights_(std::move(weights)), bias_(bias), scale_(std::move(scale)) {
  if (scale_.size() != weights_.size()) {
    throw ArityMismatch("logistic model: scale and weight sizes differ");
  }
}

std::vector<FeatureScale> LogisticModel::DomainScale(
    const FeatureSchema& schema) {
  std::vector<FeatureScale> scale;
  scale.reserve(schema.arity());
  for (const Feature& f : schema.features()) {
    const double half = (f.domain.hi - f.domain.lo) / 2.0;
    scale.push_back({(f.domain.lo + f.domain.hi) / 2.0, half > 0 ? half : 1.0});
  }
  return scale;
}

double LogisticModel::Score(const Instance& x) const {
  if (x.size() != weights_.size()) {
    throw ArityMismatch("logistic model expects " +
                        std::to_string(weights_.size()) + " features, got " +
                        std::to_string(x.size()));
  }
  double z = bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    z += weights_[i] * (x[i] - scale_[i].center) / scale_[i].half_range;
  }
  return z;
}

double LogisticModel::Probability(const Instance& x) const {
  return Sigmoid(Score(x));
}

int LogisticModel::Predict(const Instance& x) const {
  return Score(x) >= 0.0 ? 1 : 0;
}

std::string LogisticModel::ToJson() const {
  json doc;
  doc["format"] = "fairtest-logistic";
  doc["version"] = kModelFormatVersion;
  doc["weights"] = weights_;
  doc["bias"] = bias_;
  doc["scale"] = json::array();
  for (const FeatureScale& s : scale_) {
    doc["scale"].push_back({{"center", s.center}, {"half_range", s.half_range}});
  }
  return doc.dump(2);
}

LogisticModel LogisticModel::FromJson(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "fairtest-logistic") {
      throw Error("model JSON: unexpected format tag");
    }
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw Error("model JSON: unsupported version");
    }
    std::vector<FeatureScale> scale;
    for (const json& s : doc.at("scale")) {
      scale.push_back({s.at("center").get<double>(),
                       s.at("half_range").get<double>()});
    }
    return LogisticModel(doc.at("weights").get<std::vector<double>>(),
                         doc.at("bias").get<double>(), std::move(scale));
  } catch (const json::exception& e) {
    throw Error(std::string("model JSON: ") + e.what());
  }
}

void LogisticModel::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model " + path.string());
  out << ToJson() << '\n';
}

LogisticModel LogisticModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

LogisticModel TrainLogistic(const Dataset& data, const LogisticOptions& options,
                            TrainingSummary* summary) {
  const std::size_t n = data.rows.size();
  const std::size_t d = data.schema.arity();
  if (n < 2) throw PreconditionError("logistic training needs >= 2 rows");
  const auto positives = std::count(data.labels.begin(), data.labels.end(), 1);
  if (positives == 0 || positives == static_cast<long>(n)) {
    throw DegenerateLabels("training labels contain a single class");
  }

  const std::vector<FeatureScale> scale = LogisticModel::DomainScale(data.schema);
  std::vector<std::vector<double>> xs(n, std::vector<double>(d));
  double max_sq_norm = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double sq = 1.0;  // intercept column
    for (std::size_t j = 0; j < d; ++j) {
      xs[r][j] = (data.rows[r][j] - scale[j].center) / scale[j].half_range;
      sq += xs[r][j] * xs[r][j];
    }
    max_sq_norm = std::max(max_sq_norm, sq);
  }

  // Objective averaged over rows: mean log-loss + (l2 / 2n)|w|^2. Same
  // minimizer as the summed form. Step 1/L with L bounding the Hessian.
  const double reg = options.l2 / static_cast<double>(n);
  const double lipschitz = 0.25 * max_sq_norm + reg;
  const double step = 1.0 / lipschitz;

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> grad(d);
  TrainingSummary local;
  for (int it = 0; it < options.max_iter; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double z = b;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * xs[r][j];
      const double err = Sigmoid(z) - data.labels[r];
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * xs[r][j];
      grad_b += err;
    }
    double gmax = std::abs(grad_b / n);
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = grad[j] / n + reg * w[j];
      gmax = std::max(gmax, std::abs(grad[j]));
    }
    local.iterations = it;
    local.final_gradient_norm = gmax;
    if (gmax < options.tol) {
      local.converged = true;
      break;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= step * grad[j];
    b -= step * grad_b / n;
    local.iterations = it + 1;
  }
  if (summary != nullptr) *summary = local;
  return LogisticModel(std::move(w), b, scale);
}

}  // namespace fairtest
