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

#ifndef ASE_EVALUATION_HPP_
#define ASE_EVALUATION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ase/ranking.hpp"

namespace ase {

// ---------------------------------------------------------------------------
// Top/bottom probe study

struct TesInput {
  std::int64_t alpha = 0;  // correct majority votes
  std::int64_t beta = 0;   // incorrect majority votes
  std::int64_t n = 0;      // probe size
};

// (alpha - beta) / n. Throws Error{kInvalidArgument} for n == 0, negative
// counts or alpha + beta > n.
double tes_score(const TesInput& input);

enum class ProbePosition { kTop, kBottom };
enum class VoteOutcome { kCorrect, kIncorrect };

struct ProbeItem {
  std::string paper_id;
  ProbePosition true_position = ProbePosition::kTop;
  std::vector<ProbePosition> user_votes;
};

// Strict majority compared against the truth; ties are Incorrect. Throws when
// there are no votes.
VoteOutcome majority_vote_correctness(const ProbeItem& item);

// First top_n and last bottom_n entries, presentation order shuffled by seed.
std::vector<ProbeItem> build_top_bottom_probe(const RankedList& full_ranking,
                                              std::size_t top_n, std::size_t bottom_n,
                                              std::uint64_t seed);

// Tallies the probe into a TES input (n = item count).
TesInput tally_probe(std::span<const ProbeItem> items);

// ---------------------------------------------------------------------------
// Interleaved A/B study

enum class Engine { kES, kAS };
std::string_view engine_name(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

struct InterleavedItem {
  std::string paper_id;
  Engine engine = Engine::kES;
  bool operator==(const InterleavedItem&) const = default;
};

// Seeded random merge: the next item comes from A with probability
// remaining(A) / (remaining(A) + remaining(B)). Per-source order is kept; an
// id already emitted is skipped when its second copy is drawn.
std::vector<InterleavedItem> interleave_results(const RankedList& list_a, Engine engine_a,
                                                const RankedList& list_b, Engine engine_b,
                                                std::uint64_t seed);

enum class Usefulness { kUseful, kMaybeUseful, kNotUseful };
enum class Interestingness { kInteresting, kMaybeInteresting, kNotInteresting };

std::string_view usefulness_name(Usefulness u);
std::optional<Usefulness> parse_usefulness(std::string_view name);
std::string_view interestingness_name(Interestingness i);
std::optional<Interestingness> parse_interestingness(std::string_view name);

struct EvalDataPoint {
  std::int64_t test_id = 0;
  std::string seed_paper_id;
  std::string seed_paper_name;
  Engine engine = Engine::kES;
  std::string result_paper_id;
  std::string result_paper_name;
  Usefulness if_useful = Usefulness::kNotUseful;
  std::string useful_comment;
  Interestingness if_interesting = Interestingness::kNotInteresting;
  std::string interesting_comment;
  std::string user_id;
  std::string timestamp;

  bool operator==(const EvalDataPoint&) const = default;
};

// 100 * (as - es) / es, absent when es == 0.
std::optional<double> percentage_change(double as_value, double es_value);
// Whole-percent display value: truncation toward zero.
std::int64_t display_percent_change(double change);

double round_to_one_decimal(double value);

struct CategoryCell {
  std::size_t count = 0;
  double percent = 0.0;  // 0-100, one decimal
};

struct CategoryRow {
  std::string category;
  std::optional<CategoryCell> es;
  std::optional<CategoryCell> as;
  std::optional<double> change;               // unrounded percent
  std::optional<std::int64_t> change_display;  // whole percent
};

struct AggregateReport {
  std::size_t es_points = 0;
  std::size_t as_points = 0;
  std::array<CategoryRow, 3> usefulness;
  std::array<CategoryRow, 3> interestingness;
};

// Throws Error{kInvalidArgument} on an empty input.
AggregateReport aggregate_votes(std::span<const EvalDataPoint> points);

}  // namespace ase

#endif  // ASE_EVALUATION_HPP_
