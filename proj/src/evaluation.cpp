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

#include "ase/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "ase/error.hpp"

namespace ase {

double tes_score(const TesInput& input) {
  if (input.n <= 0) throw Error(ErrorCode::kInvalidArgument, "TES needs a positive probe size");
  if (input.alpha < 0 || input.beta < 0) {
    throw Error(ErrorCode::kInvalidArgument, "TES vote counts must be nonnegative");
  }
  if (input.alpha + input.beta > input.n) {
    throw Error(ErrorCode::kInvalidArgument, "alpha + beta exceeds the probe size");
  }
  return static_cast<double>(input.alpha - input.beta) / static_cast<double>(input.n);
}

VoteOutcome majority_vote_correctness(const ProbeItem& item) {
  if (item.user_votes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "probe item '" + item.paper_id + "' has no votes");
  }
  const auto top = std::count(item.user_votes.begin(), item.user_votes.end(), ProbePosition::kTop);
  const auto bottom = static_cast<std::ptrdiff_t>(item.user_votes.size()) - top;
  if (top == bottom) return VoteOutcome::kIncorrect;
  const ProbePosition majority = top > bottom ? ProbePosition::kTop : ProbePosition::kBottom;
  return majority == item.true_position ? VoteOutcome::kCorrect : VoteOutcome::kIncorrect;
}

std::vector<ProbeItem> build_top_bottom_probe(const RankedList& full_ranking, std::size_t top_n,
                                              std::size_t bottom_n, std::uint64_t seed) {
  if (full_ranking.size() < top_n + bottom_n) {
    throw Error(ErrorCode::kInvalidArgument,
                "ranking of " + std::to_string(full_ranking.size()) +
                    " is too short for a " + std::to_string(top_n) + "+" +
                    std::to_string(bottom_n) + " probe");
  }
  std::vector<ProbeItem> items;
  items.reserve(top_n + bottom_n);
  for (std::size_t i = 0; i < top_n; ++i) {
    items.push_back({full_ranking[i].paper_id, ProbePosition::kTop, {}});
  }
  for (std::size_t i = full_ranking.size() - bottom_n; i < full_ranking.size(); ++i) {
    items.push_back({full_ranking[i].paper_id, ProbePosition::kBottom, {}});
  }
  std::mt19937_64 rng(seed);
  std::shuffle(items.begin(), items.end(), rng);
  return items;
}

TesInput tally_probe(std::span<const ProbeItem> items) {
  TesInput in;
  in.n = static_cast<std::int64_t>(items.size());
  for (const auto& item : items) {
    if (majority_vote_correctness(item) == VoteOutcome::kCorrect) {
      ++in.alpha;
    } else {
      ++in.beta;
    }
  }
  return in;
}

std::string_view engine_name(Engine e) { return e == Engine::kES ? "ES" : "AS"; }

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "ES") return Engine::kES;
  if (name == "AS") return Engine::kAS;
  return std::nullopt;
}

std::vector<InterleavedItem> interleave_results(const RankedList& list_a, Engine engine_a,
                                                const RankedList& list_b, Engine engine_b,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<InterleavedItem> out;
  std::unordered_set<std::string> emitted;
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < list_a.size() || ib < list_b.size()) {
    const std::size_t ra = list_a.size() - ia;
    const std::size_t rb = list_b.size() - ib;
    const bool from_a = std::uniform_int_distribution<std::size_t>(0, ra + rb - 1)(rng) < ra;
    const RankedEntry& e = from_a ? list_a[ia++] : list_b[ib++];
    if (emitted.insert(e.paper_id).second) {
      out.push_back({e.paper_id, from_a ? engine_a : engine_b});
    }
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 3> kUsefulnessNames = {"useful", "maybe_useful",
                                                              "not_useful"};
constexpr std::array<std::string_view, 3> kInterestingnessNames = {
    "interesting", "maybe_interesting", "not_interesting"};

template <typename E>
std::optional<E> parse_named(std::string_view name, const std::array<std::string_view, 3>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  return std::nullopt;
}

// Fills count/percent cells for one engine from per-category tallies.
void fill_cells(std::array<CategoryRow, 3>& rows, const std::array<std::size_t, 3>& counts,
                std::size_t total, bool is_as) {
  if (total == 0) return;
  for (std::size_t c = 0; c < 3; ++c) {
    CategoryCell cell{counts[c], round_to_one_decimal(100.0 * static_cast<double>(counts[c]) /
                                                      static_cast<double>(total))};
    (is_as ? rows[c].as : rows[c].es) = cell;
  }
}

void fill_changes(std::array<CategoryRow, 3>& rows) {
  for (auto& row : rows) {
    if (!row.es || !row.as) continue;
    row.change = percentage_change(row.as->percent, row.es->percent);
    if (row.change) row.change_display = display_percent_change(*row.change);
  }
}

}  // namespace

std::string_view usefulness_name(Usefulness u) { return kUsefulnessNames[static_cast<std::size_t>(u)]; }
std::optional<Usefulness> parse_usefulness(std::string_view name) {
  return parse_named<Usefulness>(name, kUsefulnessNames);
}
std::string_view interestingness_name(Interestingness i) {
  return kInterestingnessNames[static_cast<std::size_t>(i)];
}
std::optional<Interestingness> parse_interestingness(std::string_view name) {
  return parse_named<Interestingness>(name, kInterestingnessNames);
}

std::optional<double> percentage_change(double as_value, double es_value) {
  if (es_value == 0.0) return std::nullopt;
  return 100.0 * (as_value - es_value) / es_value;
}

std::int64_t display_percent_change(double change) {
  // Nudge by 1e-9 so quotients like 19.999999999999996 display as 20.
  return static_cast<std::int64_t>(std::trunc(change + std::copysign(1e-9, change)));
}

double round_to_one_decimal(double value) { return std::round(value * 10.0) / 10.0; }

AggregateReport aggregate_votes(std::span<const EvalDataPoint> points) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "no votes to aggregate");
  std::array<std::size_t, 3> useful_es{}, useful_as{}, interest_es{}, interest_as{};
  AggregateReport report;
  for (const auto& p : points) {
    const auto u = static_cast<std::size_t>(p.if_useful);
    const auto i = static_cast<std::size_t>(p.if_interesting);
    if (p.engine == Engine::kAS) {
      ++report.as_points;
      ++useful_as[u];
      ++interest_as[i];
    } else {
      ++report.es_points;
      ++useful_es[u];
      ++interest_es[i];
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    report.usefulness[c].category = kUsefulnessNames[c];
    report.interestingness[c].category = kInterestingnessNames[c];
  }
  fill_cells(report.usefulness, useful_es, report.es_points, false);
  fill_cells(report.usefulness, useful_as, report.as_points, true);
  fill_cells(report.interestingness, interest_es, report.es_points, false);
  fill_cells(report.interestingness, interest_as, report.as_points, true);
  fill_changes(report.usefulness);
  fill_changes(report.interestingness);
  return report;
}

}  // namespace ase
