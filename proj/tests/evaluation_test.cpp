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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ase/error.hpp"
#include "ase/evaluation.hpp"
#include "test_util.hpp"

namespace ase {
namespace {

TEST(Tes, StudyTableRows) {
  const struct {
    std::int64_t alpha, beta;
    double score;
  } rows[] = {{24, 16, 0.2}, {31, 9, 0.55}, {25, 15, 0.25}, {37, 3, 0.85}, {28, 12, 0.4}};
  for (const auto& r : rows) EXPECT_EQ(tes_score({r.alpha, r.beta, 40}), r.score);
  EXPECT_EQ(tes_score({20, 20, 40}), 0.0);
}

TEST(Tes, BoundsAndErrors) {
  for (std::int64_t n = 1; n < 60; ++n) {
    EXPECT_EQ(tes_score({n, 0, n}), 1.0);
    EXPECT_EQ(tes_score({0, n, n}), -1.0);
    for (std::int64_t a = 0; a <= n; a += 3) {
      for (std::int64_t b = 0; a + b <= n; b += 2) {
        const double t = tes_score({a, b, n});
        EXPECT_GE(t, -1.0);
        EXPECT_LE(t, 1.0);
      }
    }
  }
  EXPECT_THROW(tes_score({0, 0, 0}), Error);
  EXPECT_THROW(tes_score({30, 11, 40}), Error);
  EXPECT_THROW(tes_score({-1, 0, 40}), Error);
}

TEST(Majority, Examples) {
  using P = ProbePosition;
  EXPECT_EQ(majority_vote_correctness({"x", P::kTop, {P::kTop, P::kTop, P::kBottom}}),
            VoteOutcome::kCorrect);
  EXPECT_EQ(majority_vote_correctness({"x", P::kTop, {P::kTop, P::kBottom}}),
            VoteOutcome::kIncorrect);
  EXPECT_EQ(majority_vote_correctness({"x", P::kTop, std::vector<P>(5, P::kBottom)}),
            VoteOutcome::kIncorrect);
  EXPECT_EQ(majority_vote_correctness({"x", P::kBottom, {P::kBottom}}), VoteOutcome::kCorrect);
  EXPECT_THROW(majority_vote_correctness({"x", P::kTop, {}}), Error);
}

RankedList ranking_of(std::size_t n) {
  RankedList list;
  for (std::size_t i = 0; i < n; ++i) {
    list.push_back({"r" + std::to_string(i), 1.0 - static_cast<double>(i) / n});
  }
  return list;
}

TEST(Probe, TopAndBottomItems) {
  auto items = build_top_bottom_probe(ranking_of(100), 20, 20, 9);
  ASSERT_EQ(items.size(), 40u);
  std::size_t top = 0;
  for (const auto& item : items) {
    const int rank = std::stoi(item.paper_id.substr(1));
    if (item.true_position == ProbePosition::kTop) {
      ++top;
      EXPECT_LT(rank, 20);
    } else {
      EXPECT_GE(rank, 80);
    }
  }
  EXPECT_EQ(top, 20u);
  EXPECT_NE(items.front().paper_id, "r0");  // shuffled for this seed
  auto small = build_top_bottom_probe(ranking_of(2), 1, 1, 0);
  ASSERT_EQ(small.size(), 2u);
  EXPECT_NE(small[0].true_position, small[1].true_position);
  EXPECT_THROW(build_top_bottom_probe(ranking_of(30), 20, 20, 0), Error);
  auto again = build_top_bottom_probe(ranking_of(100), 20, 20, 9);
  for (std::size_t i = 0; i < items.size(); ++i) EXPECT_EQ(items[i].paper_id, again[i].paper_id);
}

TEST(Probe, TallyFeedsTes) {
  auto items = build_top_bottom_probe(ranking_of(50), 20, 20, 1);
  // Voters always answer Top: every Top item is correct, every Bottom wrong.
  for (auto& item : items) item.user_votes = {ProbePosition::kTop};
  auto in = tally_probe(items);
  EXPECT_EQ(in.alpha, 20);
  EXPECT_EQ(in.beta, 20);
  EXPECT_EQ(in.n, 40);
  EXPECT_EQ(tes_score(in), 0.0);
}

RankedList list_of(const std::vector<std::string>& ids) {
  RankedList out;
  for (const auto& id : ids) out.push_back({id, 0.0});
  return out;
}

TEST(Interleave, Examples) {
  auto only_a = interleave_results(list_of({"a1", "a2"}), Engine::kAS, {}, Engine::kES, 3);
  EXPECT_EQ(only_a, (std::vector<InterleavedItem>{{"a1", Engine::kAS}, {"a2", Engine::kAS}}));
  auto dup = interleave_results(list_of({"x"}), Engine::kAS, list_of({"x"}), Engine::kES, 3);
  ASSERT_EQ(dup.size(), 1u);
  EXPECT_EQ(dup[0].paper_id, "x");
  EXPECT_TRUE(interleave_results({}, Engine::kAS, {}, Engine::kES, 0).empty());
}

void check_interleave_laws(const std::vector<std::string>& a, const std::vector<std::string>& b,
                           std::uint64_t seed) {
  auto out = interleave_results(list_of(a), Engine::kAS, list_of(b), Engine::kES, seed);
  std::set<std::string> expected(a.begin(), a.end());
  expected.insert(b.begin(), b.end());
  std::multiset<std::string> got;
  for (const auto& item : out) got.insert(item.paper_id);
  ASSERT_EQ(got, std::multiset<std::string>(expected.begin(), expected.end()));

  for (const auto& [source, engine] :
       {std::pair{a, Engine::kAS}, std::pair{b, Engine::kES}}) {
    // Items tagged with this engine come from this source, in source order.
    // A shared item drawn first from the other list carries that list's tag.
    std::size_t pos = 0;
    for (const auto& item : out) {
      if (item.engine != engine) continue;
      while (pos < source.size() && source[pos] != item.paper_id) ++pos;
      ASSERT_LT(pos, source.size());
      ++pos;
    }
  }
  EXPECT_EQ(out, interleave_results(list_of(a), Engine::kAS, list_of(b), Engine::kES, seed));
}

TEST(Interleave, FixedListsAllSeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    check_interleave_laws({"a1", "a2", "a3"}, {"b1", "b2"}, seed);
  }
}

TEST(Interleave, RandomListsWithSharedItems) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    // Draw from a small id space so overlaps are common; each list is
    // duplicate-free like a RankedList.
    std::vector<std::string> universe;
    for (int i = 0; i < 15; ++i) universe.push_back("p" + std::to_string(i));
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<std::string> a(universe.begin(), universe.begin() + rng() % 11);
    std::shuffle(universe.begin(), universe.end(), rng);
    std::vector<std::string> b(universe.begin(), universe.begin() + rng() % 11);
    check_interleave_laws(a, b, rng());
  }
}

TEST(Interleave, DrawProportionalToRemaining) {
  const auto a = list_of({"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"});
  const auto b = list_of({"b0", "b1", "b2", "b3"});
  int first_from_a = 0;
  const int trials = 20000;
  for (int seed = 0; seed < trials; ++seed) {
    auto out = interleave_results(a, Engine::kAS, b, Engine::kES, seed);
    if (out.front().engine == Engine::kAS) ++first_from_a;
  }
  EXPECT_NEAR(static_cast<double>(first_from_a) / trials, 10.0 / 14.0, 0.015);
}

TEST(PercentageChange, ReferenceRows) {
  const struct {
    double as, es;
    std::int64_t shown;
  } rows[] = {{37.6, 32.3, 16}, {25.3, 22.3, 13}, {37.0, 45.4, -18},
              {33.2, 30.3, 9},  {19.9, 17.4, 14}, {46.8, 52.3, -10}};
  for (const auto& r : rows) {
    auto change = percentage_change(r.as, r.es);
    ASSERT_TRUE(change);
    EXPECT_EQ(display_percent_change(*change), r.shown) << r.as << " vs " << r.es;
  }
  EXPECT_EQ(*percentage_change(7.5, 7.5), 0.0);
  EXPECT_FALSE(percentage_change(3.0, 0.0));
  EXPECT_EQ(display_percent_change(*percentage_change(12.0, 10.0)), 20);
  EXPECT_EQ(display_percent_change(*percentage_change(8.0, 10.0)), -20);
}

EvalDataPoint vote(Engine e, Usefulness u, Interestingness i, const std::string& id) {
  EvalDataPoint p;
  p.engine = e;
  p.if_useful = u;
  p.if_interesting = i;
  p.result_paper_id = id;
  return p;
}

TEST(Aggregate, FourAsPoints) {
  std::vector<EvalDataPoint> points = {
      vote(Engine::kAS, Usefulness::kUseful, Interestingness::kInteresting, "a"),
      vote(Engine::kAS, Usefulness::kUseful, Interestingness::kNotInteresting, "b"),
      vote(Engine::kAS, Usefulness::kMaybeUseful, Interestingness::kNotInteresting, "c"),
      vote(Engine::kAS, Usefulness::kNotUseful, Interestingness::kNotInteresting, "d"),
  };
  auto r = aggregate_votes(points);
  EXPECT_EQ(r.as_points, 4u);
  EXPECT_EQ(r.es_points, 0u);
  EXPECT_EQ(r.usefulness[0].as->percent, 50.0);
  EXPECT_EQ(r.usefulness[1].as->percent, 25.0);
  EXPECT_EQ(r.usefulness[2].as->percent, 25.0);
  EXPECT_EQ(r.interestingness[2].as->count, 3u);
  for (const auto& row : r.usefulness) {
    EXPECT_FALSE(row.es);
    EXPECT_FALSE(row.change);
  }
  EXPECT_THROW(aggregate_votes(std::vector<EvalDataPoint>{}), Error);
}

TEST(Aggregate, SyntheticStudyCountsReproduceTables) {
  auto r = aggregate_votes(testing::synthetic_study_votes());
  EXPECT_EQ(r.es_points, 1000u);
  EXPECT_EQ(r.as_points, 999u);
  const double es_u[] = {32.3, 22.3, 45.4}, as_u[] = {37.6, 25.3, 37.0};
  const double es_i[] = {30.3, 17.4, 52.3}, as_i[] = {33.2, 19.9, 46.8};
  const std::int64_t ch_u[] = {16, 13, -18}, ch_i[] = {9, 14, -10};
  for (int c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(r.usefulness[c].es->percent, es_u[c]);
    EXPECT_DOUBLE_EQ(r.usefulness[c].as->percent, as_u[c]);
    EXPECT_DOUBLE_EQ(r.interestingness[c].es->percent, es_i[c]);
    EXPECT_DOUBLE_EQ(r.interestingness[c].as->percent, as_i[c]);
    EXPECT_EQ(r.usefulness[c].change_display, ch_u[c]);
    EXPECT_EQ(r.interestingness[c].change_display, ch_i[c]);
  }
  EXPECT_EQ(r.usefulness[0].category, "useful");
  EXPECT_EQ(r.interestingness[1].category, "maybe_interesting");
}

TEST(Aggregate, ConservationOnRandomVotes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EvalDataPoint> points;
    const std::size_t n = 1 + rng() % 300;
    std::map<Engine, std::array<std::size_t, 3>> tally;
    for (std::size_t i = 0; i < n; ++i) {
      auto e = rng() % 2 ? Engine::kAS : Engine::kES;
      auto u = static_cast<Usefulness>(rng() % 3);
      points.push_back(vote(e, u, static_cast<Interestingness>(rng() % 3), "p"));
      ++tally[e][static_cast<std::size_t>(u)];
    }
    auto r = aggregate_votes(points);
    EXPECT_EQ(r.es_points + r.as_points, n);
    for (Engine e : {Engine::kES, Engine::kAS}) {
      const std::size_t total = e == Engine::kES ? r.es_points : r.as_points;
      if (total == 0) continue;
      double sum_u = 0, sum_i = 0;
      std::size_t count_u = 0, count_i = 0;
      for (int c = 0; c < 3; ++c) {
        const auto& cell = e == Engine::kES ? r.usefulness[c].es : r.usefulness[c].as;
        const auto& icell = e == Engine::kES ? r.interestingness[c].es : r.interestingness[c].as;
        EXPECT_EQ(cell->count, tally[e][c]);
        EXPECT_NEAR(cell->percent, 100.0 * tally[e][c] / total, 0.05 + 1e-9);
        sum_u += cell->percent;
        sum_i += icell->percent;
        count_u += cell->count;
        count_i += icell->count;
      }
      EXPECT_EQ(count_u, total);
      EXPECT_EQ(count_i, total);
      EXPECT_NEAR(sum_u, 100.0, 0.2 + 1e-9);
      EXPECT_NEAR(sum_i, 100.0, 0.2 + 1e-9);
    }
  }
}

TEST(Names, RoundTrip) {
  for (auto u : {Usefulness::kUseful, Usefulness::kMaybeUseful, Usefulness::kNotUseful}) {
    EXPECT_EQ(parse_usefulness(usefulness_name(u)), u);
  }
  for (auto i : {Interestingness::kInteresting, Interestingness::kMaybeInteresting,
                 Interestingness::kNotInteresting}) {
    EXPECT_EQ(parse_interestingness(interestingness_name(i)), i);
  }
  EXPECT_EQ(parse_engine("AS"), Engine::kAS);
  EXPECT_FALSE(parse_engine("as"));
  EXPECT_FALSE(parse_usefulness("useful "));
}

}  // namespace
}  // namespace ase
