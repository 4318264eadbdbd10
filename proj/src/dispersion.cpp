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

#include "ase/dispersion.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "ase/error.hpp"

namespace ase {

namespace {

const Vector& vector_of(const VectorMap& vectors, const std::string& id) {
  auto it = vectors.find(id);
  if (it == vectors.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no vector for dispersion candidate '" + id + "'");
  }
  return it->second;
}

}  // namespace

std::vector<std::string> max_min_select_from(std::span<const std::string> candidates,
                                             const VectorMap& vectors, std::size_t m,
                                             std::size_t start) {
  if (m > candidates.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot select " + std::to_string(m) + " of " +
                    std::to_string(candidates.size()) + " candidates");
  }
  if (m == 0) return {};
  if (start >= candidates.size()) throw Error(ErrorCode::kInvalidArgument, "start out of range");

  const std::size_t n = candidates.size();
  std::vector<const Vector*> vecs(n);
  for (std::size_t i = 0; i < n; ++i) vecs[i] = &vector_of(vectors, candidates[i]);

  std::vector<bool> taken(n, false);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::string> selected{candidates[start]};
  taken[start] = true;
  std::size_t last = start;

  while (selected.size() < m) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      min_dist[i] = std::min(min_dist[i], cosine_distance(*vecs[i], *vecs[last]));
      if (best == n || min_dist[i] > min_dist[best] ||
          (min_dist[i] == min_dist[best] && candidates[i] < candidates[best])) {
        best = i;
      }
    }
    taken[best] = true;
    selected.push_back(candidates[best]);
    last = best;
  }
  return selected;
}

std::vector<std::string> max_min_select(std::span<const std::string> candidates,
                                        const VectorMap& vectors, std::size_t m,
                                        std::uint64_t seed) {
  if (m > candidates.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot select " + std::to_string(m) + " of " +
                    std::to_string(candidates.size()) + " candidates");
  }
  if (m == 0) return {};
  std::mt19937_64 rng(seed);
  std::size_t start = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
  return max_min_select_from(candidates, vectors, m, start);
}

double min_pairwise_distance(std::span<const std::string> ids, const VectorMap& vectors) {
  if (ids.size() < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      best = std::min(best, cosine_distance(vector_of(vectors, ids[i]), vector_of(vectors, ids[j])));
    }
  }
  return best;
}

}  // namespace ase
