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

#include <cmath>
#include <limits>

#include "fairtest/errors.h"
#include "fairtest/search.h"

namespace fairtest {

namespace {

constexpr int kMaxRounds = 100;
constexpr double kMoveTolerance = 1e-6;

using Point = std::vector<double>;

double SquaredDistance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::vector<Point> PlusPlusSeeding(const std::vector<Point>& pts, std::size_t k,
                                   Rng& rng) {
  std::vector<Point> centers;
  centers.push_back(pts[rng.UniformIndex(pts.size())]);
  std::vector<double> d2(pts.size(), std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(pts[i], centers.back()));
      total += d2[i];
    }
    std::size_t pick = pts.size() - 1;
    if (total <= 0.0) {
      pick = rng.UniformIndex(pts.size());
    } else {
      double target = rng.UniformReal() * total;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        target -= d2[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    }
    centers.push_back(pts[pick]);
  }
  return centers;
}

}  // namespace

std::vector<std::vector<std::size_t>> KMeans(const Dataset& data, std::size_t k,
                                             Rng& rng) {
  if (k == 0) throw PreconditionError("k-means needs k >= 1");
  if (data.rows.size() < k) {
    throw TooFewRows("k-means with k=" + std::to_string(k) + " on " +
                     std::to_string(data.rows.size()) + " rows");
  }
  std::vector<Point> pts;
  pts.reserve(data.rows.size());
  for (const Instance& row : data.rows) {
    pts.push_back(NormalizeToUnit(row, data.schema));
  }

  std::vector<Point> centers = PlusPlusSeeding(pts, k, rng);
  std::vector<std::size_t> assign(pts.size(), 0);
  const std::size_t dim = data.schema.arity();
  for (int round = 0; round < kMaxRounds; ++round) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = SquaredDistance(pts[i], centers[c]);
        if (d < best) {
          best = d;
          assign[i] = c;
        }
      }
    }
    std::vector<Point> sums(k, Point(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) sums[assign[i]][j] += pts[i][j];
      ++sizes[assign[i]];
    }
    double max_move = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;  // keep an empty cluster's centroid
      for (double& v : sums[c]) v /= static_cast<double>(sizes[c]);
      max_move = std::max(max_move, std::sqrt(SquaredDistance(sums[c], centers[c])));
      centers[c] = std::move(sums[c]);
    }
    if (max_move < kMoveTolerance) break;
  }

  std::vector<std::vector<std::size_t>> clusters(k);
  for (std::size_t i = 0; i < pts.size(); ++i) clusters[assign[i]].push_back(i);
  return clusters;
}

std::vector<std::size_t> RoundRobin(
    const std::vector<std::vector<std::size_t>>& clusters, std::size_t limit) {
  std::size_t longest = 0;
  for (const auto& c : clusters) longest = std::max(longest, c.size());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < longest && out.size() < limit; ++i) {
    for (const auto& c : clusters) {
      if (i >= c.size()) continue;
      if (out.size() == limit) break;
      out.push_back(c[i]);
    }
  }
  return out;
}

}  // namespace fairtest
