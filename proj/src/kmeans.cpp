// Copyright 2026 The ASE Authors
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

#include "ase/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "ase/error.hpp"

namespace ase {

namespace {

struct Nearest {
  std::size_t cluster = 0;
  double distance = 0.0;  // squared
};

Nearest nearest_centroid(std::span<const double> point, const std::vector<Vector>& centroids) {
  Nearest best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    double d = squared_euclidean(point, centroids[c]);
    if (d < best.distance) best = {c, d};
  }
  return best;
}

// k-means++: first centre uniform, then each next one drawn with probability
// proportional to its squared distance from the closest chosen centre.
std::vector<Vector> seed_centroids(std::span<const Vector> points, std::size_t k,
                                   std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<Vector> centroids;
  centroids.reserve(k);
  std::vector<bool> chosen(n, false);
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());

  std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  chosen[first] = true;
  centroids.push_back(points[first]);

  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], squared_euclidean(points[i], centroids.back()));
      total += closest[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      double running = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (closest[i] <= 0.0) continue;
        running += closest[i];
        pick = i;
        if (running > target) break;
      }
    }
    if (pick == n || chosen[pick]) {
      // Every remaining point coincides with a centre: pick an unchosen one.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    }
    chosen[pick] = true;
    centroids.push_back(points[pick]);
  }
  return centroids;
}

double assign_all(std::span<const Vector> points, const std::vector<Vector>& centroids,
                  std::vector<std::size_t>& assignment) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Nearest n = nearest_centroid(points[i], centroids);
    assignment[i] = n.cluster;
    inertia += n.distance;
  }
  return inertia;
}

// Moves the farthest point of a multi-member cluster into each empty cluster.
void refill_empty(std::span<const Vector> points, const std::vector<Vector>& centroids,
                  std::vector<std::size_t>& assignment, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : assignment) ++sizes[c];
  for (std::size_t empty = 0; empty < k; ++empty) {
    if (sizes[empty] != 0) continue;
    std::size_t far = points.size();
    double far_dist = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (sizes[assignment[i]] < 2) continue;
      double d = squared_euclidean(points[i], centroids[assignment[i]]);
      if (d > far_dist) {
        far_dist = d;
        far = i;
      }
    }
    if (far == points.size()) return;  // cannot happen while k <= n
    --sizes[assignment[far]];
    assignment[far] = empty;
    sizes[empty] = 1;
  }
}

std::vector<Vector> cluster_means(std::span<const Vector> points,
                                  const std::vector<std::size_t>& assignment,
                                  const std::vector<Vector>& previous) {
  const std::size_t k = previous.size();
  const std::size_t dim = points.front().size();
  std::vector<Vector> sums(k, Vector(dim, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& s = sums[assignment[i]];
    for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
    ++counts[assignment[i]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      sums[c] = previous[c];
      continue;
    }
    for (double& v : sums[c]) v /= static_cast<double>(counts[c]);
  }
  return sums;
}

}  // namespace

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

KMeansResult lloyd_kmeans(std::span<const Vector> points, std::size_t k, std::uint64_t seed,
                          std::size_t max_iterations) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (points.size() < k) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot form " + std::to_string(k) + " clusters from " +
                    std::to_string(points.size()) + " points");
  }
  std::mt19937_64 rng(seed);
  KMeansResult out;
  out.centroids = seed_centroids(points, k, rng);
  out.assignment.assign(points.size(), 0);
  out.inertia = assign_all(points, out.centroids, out.assignment);
  out.inertia_trace.push_back(out.inertia);

  std::vector<std::size_t> next(points.size());
  while (out.iterations < max_iterations) {
    ++out.iterations;
    refill_empty(points, out.centroids, out.assignment, k);
    out.centroids = cluster_means(points, out.assignment, out.centroids);
    double inertia = assign_all(points, out.centroids, next);
    out.inertia_trace.push_back(inertia);
    if (next == out.assignment) {
      out.inertia = inertia;
      out.converged = true;
      return out;
    }
    out.assignment.swap(next);
    out.inertia = inertia;
  }
  return out;
}

ClusterModel::ClusterModel(KMeansResult fit, std::vector<std::string> covered_ids)
    : fit_(std::move(fit)), covered_ids_(std::move(covered_ids)) {
  for (std::size_t i = 0; i < covered_ids_.size(); ++i) {
    by_id_.emplace(covered_ids_[i], fit_.assignment.at(i));
  }
}

std::optional<std::size_t> ClusterModel::cluster_of(std::string_view paper_id) const {
  auto it = by_id_.find(std::string(paper_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ClusterModel::members(std::size_t cluster) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < covered_ids_.size(); ++i) {
    if (fit_.assignment[i] == cluster) out.push_back(covered_ids_[i]);
  }
  return out;
}

ClusterModel kmeans_cluster(const CorpusIndex& index, Aspect aspect, std::size_t k,
                            std::uint64_t seed) {
  std::vector<Vector> points;
  std::vector<std::string> ids;
  for (std::size_t row = 0; row < index.size(); ++row) {
    const auto& v = index.aspect_vector(row, aspect);
    if (!v) continue;
    points.push_back(*v);
    ids.push_back(index.record(row).paper_id);
  }
  if (points.size() < k) {
    throw Error(ErrorCode::kInvalidArgument,
                "only " + std::to_string(points.size()) + " papers have aspect '" +
                    std::string(aspect_name(aspect)) + "', need at least k = " + std::to_string(k));
  }
  return ClusterModel(lloyd_kmeans(points, k, seed), std::move(ids));
}

}  // namespace ase
