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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ase/bm25.hpp"
#include "ase/dispersion.hpp"
#include "ase/error.hpp"
#include "test_util.hpp"

namespace ase {
namespace {

VectorMap angle_vectors(const std::vector<std::pair<std::string, double>>& angles) {
  VectorMap out;
  for (const auto& [id, deg] : angles) out[id] = testing::at_angle(deg);
  return out;
}

// Best achievable min pairwise distance over all m-subsets.
double brute_force_dispersion(const std::vector<std::string>& ids, const VectorMap& vectors,
                              std::size_t m) {
  double best = -1.0;
  std::vector<bool> pick(ids.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(m), pick.end(), true);
  do {
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (pick[i]) subset.push_back(ids[i]);
    }
    best = std::max(best, min_pairwise_distance(subset, vectors));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

void expect_step_optimal(const std::vector<std::string>& candidates, const VectorMap& vectors,
                         const std::vector<std::string>& selected) {
  for (std::size_t step = 1; step < selected.size(); ++step) {
    auto min_to_prefix = [&](const std::string& id) {
      double d = 2.0;
      for (std::size_t j = 0; j < step; ++j) {
        d = std::min(d, 1.0 - testing::brute_cosine(vectors.at(id), vectors.at(selected[j])));
      }
      return d;
    };
    double best = -1.0;
    for (const auto& c : candidates) {
      if (std::find(selected.begin(), selected.begin() + static_cast<std::ptrdiff_t>(step), c) ==
          selected.begin() + static_cast<std::ptrdiff_t>(step)) {
        best = std::max(best, min_to_prefix(c));
      }
    }
    ASSERT_GE(min_to_prefix(selected[step]), best - 1e-12) << "step " << step;
  }
}

TEST(MaxMin, AnglesExampleMatchesBruteForce) {
  auto vectors = angle_vectors({{"a0", 0}, {"a10", 10}, {"a90", 90}});
  std::vector<std::string> ids = {"a0", "a10", "a90"};
  auto picked = max_min_select_from(ids, vectors, 2, 0);
  EXPECT_EQ(picked, (std::vector<std::string>{"a0", "a90"}));
  EXPECT_DOUBLE_EQ(min_pairwise_distance(picked, vectors), brute_force_dispersion(ids, vectors, 2));
}

TEST(MaxMin, EdgeCases) {
  auto vectors = angle_vectors({{"a", 0}, {"b", 50}, {"c", 100}, {"d", 150}});
  std::vector<std::string> ids = {"a", "b", "c", "d"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto all = max_min_select(ids, vectors, 4, seed);
    EXPECT_EQ(std::set<std::string>(all.begin(), all.end()),
              std::set<std::string>(ids.begin(), ids.end()));
    auto one = max_min_select(ids, vectors, 1, seed);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one, max_min_select(ids, vectors, 1, seed));
  }
  EXPECT_TRUE(max_min_select(ids, vectors, 0, 1).empty());
  EXPECT_THROW(max_min_select(ids, vectors, 5, 1), Error);
  VectorMap missing = {{"a", {1, 0}}};
  EXPECT_THROW(max_min_select(ids, missing, 2, 1), Error);
}

TEST(MaxMin, TiesBreakByPaperId) {
  // From 0 degrees, +90 and -90 are equally far; "m" < "z".
  auto vectors = angle_vectors({{"s", 0}, {"z", 90}, {"m", -90}});
  std::vector<std::string> ids = {"s", "z", "m"};
  EXPECT_EQ(max_min_select_from(ids, vectors, 2, 0), (std::vector<std::string>{"s", "m"}));
}

TEST(MaxMin, StepOptimalAndDeterministicOnRandomInstances) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const std::size_t dim = 2 + rng() % 10;
    std::vector<std::string> ids;
    VectorMap vectors;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("c" + std::to_string(i));
      vectors[ids.back()] = testing::random_vector(rng, dim);
    }
    const std::size_t m = 1 + rng() % n;
    const std::uint64_t seed = rng();
    auto picked = max_min_select(ids, vectors, m, seed);
    ASSERT_EQ(picked.size(), m);
    EXPECT_EQ(std::set<std::string>(picked.begin(), picked.end()).size(), m);
    expect_step_optimal(ids, vectors, picked);
    EXPECT_EQ(picked, max_min_select(ids, vectors, m, seed));
  }
}

TEST(MaxMin, GreedyWithinBruteForceOptimum) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<std::string> ids;
    VectorMap vectors;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("c" + std::to_string(i));
      vectors[ids.back()] = testing::random_vector(rng, 3);
    }
    const std::size_t m = 2 + rng() % std::min<std::size_t>(3, n - 1);
    auto picked = max_min_select(ids, vectors, m, trial);
    const double greedy = min_pairwise_distance(picked, vectors);
    const double best = brute_force_dispersion(ids, vectors, m);
    EXPECT_LE(greedy, best + 1e-12);
    EXPECT_GT(greedy, 0.0);
  }
}

TEST(MaxMin, NonStartSelectionStableAcrossSeeds) {
  auto pool = testing::spread_pool(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto picked = max_min_select(pool.ids, pool.vectors, 15, seed * 7919);
    std::set<std::string> chosen(picked.begin(), picked.end());
    for (const auto& id : pool.marginal) EXPECT_TRUE(chosen.count(id)) << id << " seed " << seed;
    if (!pool.marginal.count(picked.front())) {
      EXPECT_EQ(std::set<std::string>(picked.begin() + 1, picked.end()), pool.marginal);
    }
  }
}

TEST(Bm25, IdfAndScoresMatchHandFormula) {
  std::vector<std::vector<std::string>> docs = {
      {"crowdsourcing", "the"}, {"crowdsourcing", "the", "markets"}, {"the", "the", "graphs"}};
  Bm25Scorer scorer(docs);
  EXPECT_NEAR(scorer.idf("crowdsourcing"), std::log(1.6), 1e-15);
  EXPECT_NEAR(scorer.idf("the"), std::log(8.0 / 7.0), 1e-15);
  EXPECT_NEAR(scorer.idf("unseen"), std::log(1.0 + 3.5 / 0.5), 1e-15);
  std::vector<std::string> query = {"crowdsourcing", "the"};
  auto s = scorer.score(query);
  EXPECT_NEAR(s[0], 0.6722921762605408, 1e-12);
  EXPECT_NEAR(s[1], 0.5741738586441376, 1e-12);
  EXPECT_NEAR(s[2], 0.17737000076917717, 1e-12);
  std::vector<std::string> repeated = {"graphs", "graphs"};
  std::vector<std::string> once = {"graphs"};
  EXPECT_NEAR(scorer.score(repeated)[2], 2 * scorer.score(once)[2], 1e-12);
  std::vector<std::string> none = {"zzz"};
  for (double x : scorer.score(none)) EXPECT_EQ(x, 0.0);
}

}  // namespace
}  // namespace ase
