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

#include "ase/ranking.hpp"

#include <algorithm>
#include <array>

#include "ase/bm25.hpp"
#include "ase/dispersion.hpp"
#include "ase/error.hpp"
#include "ase/kmeans.hpp"

namespace ase {

namespace {

constexpr std::array<std::string_view, 5> kAlgorithmNames = {
    "naive_cosine", "knn_kmeans", "naive_farthest", "farthest_neighbor", "lexical_baseline",
};

bool by_score_then_id(const RankedEntry& a, const RankedEntry& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.paper_id < b.paper_id;
}

const Vector& require_aspect(const CorpusIndex& index, std::size_t row, Aspect aspect) {
  const auto& v = index.aspect_vector(row, aspect);
  if (!v) {
    throw Error(ErrorCode::kInvalidArgument,
                "aspect absent on query: '" + index.record(row).paper_id + "' has no " +
                    std::string(aspect_name(aspect)) + " vector");
  }
  return *v;
}

SimilarityMap similarity_map(const CorpusIndex& index, std::size_t query_row, Aspect aspect) {
  const Vector& q = require_aspect(index, query_row, aspect);
  SimilarityMap sims;
  for (std::size_t row = 0; row < index.size(); ++row) {
    if (row == query_row) continue;
    const auto& v = index.aspect_vector(row, aspect);
    if (v) sims.emplace(index.record(row).paper_id, cosine_similarity(q, *v));
  }
  return sims;
}

void truncate(RankedList& list, std::size_t n) {
  if (list.size() > n) list.resize(n);
}

// Candidates that have the far aspect, ordered by descending cosine distance
// to the query; equal distances keep their incoming order.
RankedList rerank_by_far_distance(const CorpusIndex& index, const RankedList& pool,
                                  const Vector& query_far, Aspect far) {
  RankedList out;
  for (const auto& e : pool) {
    const auto& v = index.aspect_vector(index.row_of(e.paper_id), far);
    if (v) out.push_back({e.paper_id, cosine_distance(query_far, *v)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedEntry& a, const RankedEntry& b) { return a.score > b.score; });
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) { return kAlgorithmNames[static_cast<std::size_t>(a)]; }

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (std::size_t i = 0; i < kAlgorithmNames.size(); ++i) {
    if (name == kAlgorithmNames[i]) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

std::string_view reduce_mode_name(ReduceMode m) {
  return m == ReduceMode::kNearestToCentroid ? "nearest_to_centroid" : "nearest_to_query";
}

std::optional<ReduceMode> parse_reduce_mode(std::string_view name) {
  if (name == "nearest_to_centroid") return ReduceMode::kNearestToCentroid;
  if (name == "nearest_to_query") return ReduceMode::kNearestToQuery;
  return std::nullopt;
}

void SearchConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (near_aspects.empty()) fail("near_aspects must not be empty");
  double weight_sum = 0.0;
  for (const auto& wa : near_aspects) {
    if (!(wa.weight > 0.0)) fail("near aspect weights must be positive");
    if (wa.aspect == far_aspect) fail("far_aspect must not also be a near aspect");
    weight_sum += wa.weight;
  }
  if (!(weight_sum > 0.0)) fail("near aspect weights must sum to a positive value");
  if (pool_size == 0) fail("pool_size must be positive");
  if (result_size == 0) fail("result_size must be positive");
  if (result_size > pool_size) fail("result_size must not exceed pool_size");
  if (k_clusters == 0) fail("k_clusters must be positive");
  if (purpose_aspect != Aspect::kProblem && purpose_aspect != Aspect::kBigProblem) {
    fail("purpose_aspect must be problem or big_problem");
  }
}

RankedList knn_by_aspect(const CorpusIndex& index, std::string_view query, Aspect aspect,
                         std::size_t k) {
  const std::size_t q = index.row_of(query);
  const Vector& qv = require_aspect(index, q, aspect);
  if (k == 0) return {};
  RankedList all;
  for (std::size_t row = 0; row < index.size(); ++row) {
    if (row == q) continue;
    const auto& v = index.aspect_vector(row, aspect);
    if (v) all.push_back({index.record(row).paper_id, cosine_similarity(qv, *v)});
  }
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    by_score_then_id);
  all.resize(keep);
  return all;
}

RankedList fuse_near_lists(std::span<const SimilarityMap> lists, std::span<const double> weights) {
  if (lists.empty()) throw Error(ErrorCode::kInvalidArgument, "no near lists to fuse");
  if (lists.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "near lists and weights differ in length");
  }
  struct Acc {
    double weighted = 0.0;
    double weight = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (!(weights[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
    for (const auto& [id, sim] : lists[i]) {
      auto& a = acc[id];
      a.weighted += weights[i] * sim;
      a.weight += weights[i];
    }
  }
  RankedList fused;
  fused.reserve(acc.size());
  for (const auto& [id, a] : acc) fused.push_back({id, a.weighted / a.weight});
  std::stable_sort(fused.begin(), fused.end(), by_score_then_id);
  return fused;
}

RankedList near_pool(const CorpusIndex& index, std::string_view query,
                     const SearchConfig& config) {
  config.validate();
  const std::size_t q = index.row_of(query);
  std::vector<SimilarityMap> lists;
  std::vector<double> weights;
  for (const auto& wa : config.near_aspects) {
    lists.push_back(similarity_map(index, q, wa.aspect));
    weights.push_back(wa.weight);
  }
  RankedList pool = fuse_near_lists(lists, weights);
  truncate(pool, config.pool_size);
  return pool;
}

RankedList naive_cosine_search(const CorpusIndex& index, std::string_view query,
                               const SearchConfig& config) {
  config.validate();
  const std::size_t q = index.row_of(query);
  const Vector& query_far = require_aspect(index, q, config.far_aspect);
  RankedList pool = near_pool(index, query, config);

  RankedList out = rerank_by_far_distance(index, pool, query_far, config.far_aspect);
  for (const auto& e : pool) {
    if (!index.aspect_vector(index.row_of(e.paper_id), config.far_aspect)) {
      out.push_back({e.paper_id, kMissingFarScore});
    }
  }
  truncate(out, config.result_size);
  return out;
}

RankedList knn_kmeans_search(const CorpusIndex& index, std::string_view query,
                             const SearchConfig& config) {
  config.validate();
  const std::size_t q = index.row_of(query);
  require_aspect(index, q, config.far_aspect);
  RankedList pool = near_pool(index, query, config);

  ClusterModel far_clusters =
      kmeans_cluster(index, config.far_aspect, config.k_clusters, config.rng_seed);
  const std::size_t query_cluster = *far_clusters.cluster_of(query);

  RankedList out;
  for (const auto& e : pool) {
    auto c = far_clusters.cluster_of(e.paper_id);
    if (c && *c == query_cluster) continue;
    out.push_back(e);
  }
  truncate(out, config.result_size);
  return out;
}

RankedList farthest_candidate_pool(const CorpusIndex& index, std::string_view query,
                                   const SearchConfig& config) {
  config.validate();
  if (config.near_aspects.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(algorithm_name(config.algorithm)) +
                    " supports exactly one near aspect");
  }
  const Aspect near = config.near_aspects.front().aspect;
  const std::size_t q = index.row_of(query);
  const Vector& query_near = require_aspect(index, q, near);
  require_aspect(index, q, config.far_aspect);

  ClusterModel model = kmeans_cluster(index, near, config.k_clusters, config.rng_seed);
  const std::size_t cluster = *model.cluster_of(query);
  const Vector& centroid = model.centroids()[cluster];

  // A centroid that averages out to ~0 has no direction; rank by the query.
  const bool use_centroid =
      config.reduce_mode == ReduceMode::kNearestToCentroid && l2_norm(centroid) > kNormEpsilon;
  const Vector& anchor = use_centroid ? centroid : query_near;

  RankedList pool;
  for (const auto& id : model.members(cluster)) {
    if (id == query) continue;
    const auto& v = index.aspect_vector(index.row_of(id), near);
    pool.push_back({id, cosine_similarity(anchor, *v)});
  }
  std::stable_sort(pool.begin(), pool.end(), by_score_then_id);
  truncate(pool, config.pool_size);
  return pool;
}

RankedList naive_farthest_search(const CorpusIndex& index, std::string_view query,
                                 const SearchConfig& config) {
  RankedList pool = farthest_candidate_pool(index, query, config);
  const Vector& query_far = *index.aspect_vector(index.row_of(query), config.far_aspect);
  RankedList out = rerank_by_far_distance(index, pool, query_far, config.far_aspect);
  truncate(out, config.result_size);
  return out;
}

RankedList farthest_neighbor_search(const CorpusIndex& index, std::string_view query,
                                    const SearchConfig& config) {
  RankedList pool = farthest_candidate_pool(index, query, config);

  std::vector<std::string> eligible;
  VectorMap far_vectors;
  for (const auto& e : pool) {
    const auto& v = index.aspect_vector(index.row_of(e.paper_id), config.far_aspect);
    if (!v) continue;
    eligible.push_back(e.paper_id);
    far_vectors.emplace(e.paper_id, *v);
  }

  std::vector<std::string> selected =
      eligible.size() <= config.result_size
          ? eligible
          : max_min_select(eligible, far_vectors, config.result_size, config.rng_seed);

  RankedList out;
  for (const auto& id : selected) {
    double score = 0.0;
    if (selected.size() > 1) {
      score = 2.0;
      for (const auto& other : selected) {
        if (other != id) {
          score = std::min(score, cosine_distance(far_vectors.at(id), far_vectors.at(other)));
        }
      }
    }
    out.push_back({id, score});
  }
  std::stable_sort(out.begin(), out.end(), by_score_then_id);
  return out;
}

RankedList lexical_baseline_search(const CorpusIndex& index, std::string_view query,
                                   std::size_t n) {
  const std::size_t q = index.row_of(query);
  std::vector<std::vector<std::string>> docs;
  docs.reserve(index.size());
  for (const auto& rec : index.records()) {
    const auto& tokens = rec.aspect_tokens(Aspect::kFullAbstract);
    docs.push_back(tokens ? *tokens : std::vector<std::string>{});
  }
  Bm25Scorer scorer(docs);
  const std::vector<double> scores = scorer.score(docs[q]);

  RankedList all;
  for (std::size_t row = 0; row < index.size(); ++row) {
    if (row != q) all.push_back({index.record(row).paper_id, scores[row]});
  }
  const std::size_t keep = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    by_score_then_id);
  all.resize(keep);
  return all;
}

RankedList run_search(const CorpusIndex& index, std::string_view query,
                      const SearchConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kNaiveCosine: return naive_cosine_search(index, query, config);
    case Algorithm::kKnnKmeans: return knn_kmeans_search(index, query, config);
    case Algorithm::kNaiveFarthest: return naive_farthest_search(index, query, config);
    case Algorithm::kFarthestNeighbor: return farthest_neighbor_search(index, query, config);
    case Algorithm::kLexicalBaseline:
      config.validate();
      return lexical_baseline_search(index, query, config.result_size);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

}  // namespace ase
