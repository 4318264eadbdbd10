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

#ifndef ASE_RANKING_HPP_
#define ASE_RANKING_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ase/corpus.hpp"

namespace ase {

enum class Algorithm {
  kNaiveCosine,
  kKnnKmeans,
  kNaiveFarthest,
  kFarthestNeighbor,
  kLexicalBaseline,
};

enum class ReduceMode {
  kNearestToCentroid,
  kNearestToQuery,
};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view reduce_mode_name(ReduceMode m);
std::optional<ReduceMode> parse_reduce_mode(std::string_view name);

struct WeightedAspect {
  Aspect aspect = Aspect::kProblem;
  double weight = 1.0;
  bool operator==(const WeightedAspect&) const = default;
};

struct SearchConfig {
  Algorithm algorithm = Algorithm::kKnnKmeans;
  std::vector<WeightedAspect> near_aspects = {{Aspect::kProblem, 1.0}};
  Aspect far_aspect = Aspect::kMechanism;
  std::size_t pool_size = 50;
  std::size_t result_size = 15;
  std::size_t k_clusters = 20;
  ReduceMode reduce_mode = ReduceMode::kNearestToQuery;
  std::uint64_t rng_seed = 0;
  // Target of the "purpose" alias (kProblem or kBigProblem).
  Aspect purpose_aspect = Aspect::kProblem;

  // Throws Error{kInvalidArgument} on a broken invariant.
  void validate() const;

  bool operator==(const SearchConfig&) const = default;
};

struct RankedEntry {
  std::string paper_id;
  double score = 0.0;
  bool operator==(const RankedEntry&) const = default;
};

using RankedList = std::vector<RankedEntry>;
using SimilarityMap = std::map<std::string, double>;

// Score attached to NaiveCosine results that have no far-aspect vector.
inline constexpr double kMissingFarScore = -1.0;

// Exact linear scan: top-k by cosine similarity on `aspect`, descending,
// ties by ascending paper_id, query excluded.
RankedList knn_by_aspect(const CorpusIndex& index, std::string_view query, Aspect aspect,
                         std::size_t k);

// Weighted mean of per-aspect similarities, renormalized over the aspects a
// paper actually has. Throws if lists and weights differ in length.
RankedList fuse_near_lists(std::span<const SimilarityMap> lists,
                           std::span<const double> weights);

RankedList naive_cosine_search(const CorpusIndex& index, std::string_view query,
                               const SearchConfig& config);
RankedList knn_kmeans_search(const CorpusIndex& index, std::string_view query,
                             const SearchConfig& config);
RankedList naive_farthest_search(const CorpusIndex& index, std::string_view query,
                                 const SearchConfig& config);
RankedList farthest_neighbor_search(const CorpusIndex& index, std::string_view query,
                                    const SearchConfig& config);
RankedList lexical_baseline_search(const CorpusIndex& index, std::string_view query,
                                   std::size_t n);

// Dispatches on config.algorithm; LexicalBaseline uses result_size as n.
RankedList run_search(const CorpusIndex& index, std::string_view query,
                      const SearchConfig& config);

// Near-aspect candidate pool shared by NaiveCosine and KnnKmeans.
RankedList near_pool(const CorpusIndex& index, std::string_view query,
                     const SearchConfig& config);

// Steps 1-2 of the farthest algorithms: the query's near-aspect cluster,
// shrunk to pool_size by the reduce mode.
RankedList farthest_candidate_pool(const CorpusIndex& index, std::string_view query,
                                   const SearchConfig& config);

}  // namespace ase

#endif  // ASE_RANKING_HPP_
