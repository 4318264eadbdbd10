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

#ifndef ASE_KMEANS_HPP_
#define ASE_KMEANS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ase/corpus.hpp"
#include "ase/embedding.hpp"

namespace ase {

inline constexpr std::size_t kKMeansMaxIterations = 300;

struct KMeansResult {
  std::vector<Vector> centroids;
  std::vector<std::size_t> assignment;  // parallel to the input points
  double inertia = 0.0;
  // Inertia after every assignment step, initial seeding included.
  std::vector<double> inertia_trace;
  std::size_t iterations = 0;
  bool converged = false;
};

// Lloyd's algorithm, Euclidean distance, k-means++ seeding from `seed`.
// Stops at an assignment fixpoint or after `max_iterations`. An emptied
// cluster is refilled with the point farthest from its current centroid.
// Throws Error{kInvalidArgument} when k == 0 or k > points.size().
KMeansResult lloyd_kmeans(std::span<const Vector> points, std::size_t k, std::uint64_t seed,
                          std::size_t max_iterations = kKMeansMaxIterations);

double squared_euclidean(std::span<const double> a, std::span<const double> b);

class ClusterModel {
 public:
  ClusterModel(KMeansResult fit, std::vector<std::string> covered_ids);

  std::size_t k() const { return fit_.centroids.size(); }
  const KMeansResult& fit() const { return fit_; }
  const std::vector<Vector>& centroids() const { return fit_.centroids; }
  double inertia() const { return fit_.inertia; }
  const std::vector<std::string>& covered_ids() const { return covered_ids_; }

  // Absent for papers that were not clustered (aspect missing).
  std::optional<std::size_t> cluster_of(std::string_view paper_id) const;
  std::vector<std::string> members(std::size_t cluster) const;

 private:
  KMeansResult fit_;
  std::vector<std::string> covered_ids_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Clusters every paper that has `aspect`, in index order.
ClusterModel kmeans_cluster(const CorpusIndex& index, Aspect aspect, std::size_t k,
                            std::uint64_t seed);

}  // namespace ase

#endif  // ASE_KMEANS_HPP_
