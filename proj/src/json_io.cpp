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

#include "ase/json_io.hpp"

#include <limits>

#include "ase/error.hpp"

namespace ase {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

Aspect aspect_from(const Json& j, Aspect purpose, const char* field) {
  if (!j.is_string()) bad(std::string(field) + " must be an aspect name");
  auto a = parse_aspect(j.get<std::string>(), purpose);
  if (!a) bad("unknown aspect '" + j.get<std::string>() + "' in " + field);
  return *a;
}

std::size_t positive_size(const Json& j, const char* field) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
    bad(std::string(field) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

std::string string_field(const Json& j, const char* field, bool required) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) {
    if (required) throw Error(ErrorCode::kFormat, std::string("missing field ") + field);
    return {};
  }
  if (!it->is_string()) throw Error(ErrorCode::kFormat, std::string(field) + " must be a string");
  return it->get<std::string>();
}

Json optional_cell(const std::optional<CategoryCell>& cell) {
  if (!cell) return nullptr;
  return Json{{"count", cell->count}, {"percent", cell->percent}};
}

Json rows_json(const std::array<CategoryRow, 3>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({
        {"category", row.category},
        {"ES", optional_cell(row.es)},
        {"AS", optional_cell(row.as)},
        {"percentage_change", row.change_display ? Json(*row.change_display) : Json(nullptr)},
        {"percentage_change_exact", row.change ? Json(*row.change) : Json(nullptr)},
    });
  }
  return out;
}

}  // namespace

SearchConfig search_config_from_json(const Json& j) {
  if (!j.is_object()) bad("search config must be a JSON object");
  SearchConfig c;

  // purpose_aspect first: it governs how every other aspect field resolves.
  if (auto it = j.find("purpose_aspect"); it != j.end()) {
    c.purpose_aspect = aspect_from(*it, Aspect::kProblem, "purpose_aspect");
  }
  bool near_given = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "purpose_aspect") continue;
    if (key == "algorithm") {
      if (!v.is_string()) bad("algorithm must be a string");
      auto a = parse_algorithm(v.get<std::string>());
      if (!a) bad("unknown algorithm '" + v.get<std::string>() + "'");
      c.algorithm = *a;
    } else if (key == "near_aspects") {
      if (!v.is_array()) bad("near_aspects must be an array");
      near_given = true;
      c.near_aspects.clear();
      for (const auto& item : v) {
        WeightedAspect wa;
        if (item.is_object()) {
          auto a = item.find("aspect");
          if (a == item.end()) bad("near aspect entry without 'aspect'");
          wa.aspect = aspect_from(*a, c.purpose_aspect, "near_aspects");
          if (auto w = item.find("weight"); w != item.end()) {
            if (!w->is_number()) bad("near aspect weight must be a number");
            wa.weight = w->get<double>();
          }
        } else {
          wa.aspect = aspect_from(item, c.purpose_aspect, "near_aspects");
        }
        c.near_aspects.push_back(wa);
      }
    } else if (key == "far_aspect") {
      c.far_aspect = aspect_from(v, c.purpose_aspect, "far_aspect");
    } else if (key == "pool_size") {
      c.pool_size = positive_size(v, "pool_size");
    } else if (key == "result_size") {
      c.result_size = positive_size(v, "result_size");
    } else if (key == "k_clusters") {
      c.k_clusters = positive_size(v, "k_clusters");
    } else if (key == "reduce_mode") {
      if (!v.is_string()) bad("reduce_mode must be a string");
      auto m = parse_reduce_mode(v.get<std::string>());
      if (!m) bad("unknown reduce_mode '" + v.get<std::string>() + "'");
      c.reduce_mode = *m;
    } else if (key == "rng_seed") {
      if (!v.is_number_integer()) bad("rng_seed must be an integer");
      c.rng_seed = v.is_number_unsigned() ? v.get<std::uint64_t>()
                                          : static_cast<std::uint64_t>(v.get<std::int64_t>());
    } else {
      bad("unknown search config field '" + key + "'");
    }
  }
  if (!near_given) c.near_aspects = {{c.purpose_aspect, 1.0}};
  c.validate();
  return c;
}

Json search_config_to_json(const SearchConfig& c) {
  Json near = Json::array();
  for (const auto& wa : c.near_aspects) {
    near.push_back({{"aspect", aspect_name(wa.aspect)}, {"weight", wa.weight}});
  }
  return {
      {"algorithm", algorithm_name(c.algorithm)},
      {"near_aspects", near},
      {"far_aspect", aspect_name(c.far_aspect)},
      {"pool_size", c.pool_size},
      {"result_size", c.result_size},
      {"k_clusters", c.k_clusters},
      {"reduce_mode", reduce_mode_name(c.reduce_mode)},
      {"rng_seed", c.rng_seed},
      {"purpose_aspect", aspect_name(c.purpose_aspect)},
  };
}

Json ranked_list_to_json(const RankedList& list, const CorpusIndex* index) {
  Json out = Json::array();
  for (const auto& e : list) {
    Json item = {{"paper_id", e.paper_id}, {"score", e.score}};
    if (index) item["title"] = index->record(index->row_of(e.paper_id)).title;
    out.push_back(std::move(item));
  }
  return out;
}

Json eval_point_to_json(const EvalDataPoint& p) {
  return {
      {"test_id", p.test_id},
      {"seed_paper_id", p.seed_paper_id},
      {"seed_paper_name", p.seed_paper_name},
      {"SE", engine_name(p.engine)},
      {"paper_id", p.result_paper_id},
      {"paper_name", p.result_paper_name},
      {"if_useful", usefulness_name(p.if_useful)},
      {"useful_comment", p.useful_comment},
      {"if_interesting", interestingness_name(p.if_interesting)},
      {"interesting_comment", p.interesting_comment},
      {"user_id", p.user_id},
      {"timestamp", p.timestamp},
  };
}

EvalDataPoint eval_point_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "vote record is not a JSON object");
  EvalDataPoint p;
  auto tid = j.find("test_id");
  if (tid == j.end() || !tid->is_number_integer()) {
    throw Error(ErrorCode::kFormat, "vote record needs an integer test_id");
  }
  p.test_id = tid->get<std::int64_t>();
  p.seed_paper_id = string_field(j, "seed_paper_id", true);
  p.seed_paper_name = string_field(j, "seed_paper_name", false);
  auto engine = parse_engine(string_field(j, "SE", true));
  if (!engine) throw Error(ErrorCode::kFormat, "SE must be ES or AS");
  p.engine = *engine;
  p.result_paper_id = string_field(j, "paper_id", true);
  p.result_paper_name = string_field(j, "paper_name", false);
  auto useful = parse_usefulness(string_field(j, "if_useful", true));
  if (!useful) throw Error(ErrorCode::kFormat, "if_useful has an unknown value");
  p.if_useful = *useful;
  p.useful_comment = string_field(j, "useful_comment", false);
  auto interesting = parse_interestingness(string_field(j, "if_interesting", true));
  if (!interesting) throw Error(ErrorCode::kFormat, "if_interesting has an unknown value");
  p.if_interesting = *interesting;
  p.interesting_comment = string_field(j, "interesting_comment", false);
  p.user_id = string_field(j, "user_id", true);
  p.timestamp = string_field(j, "timestamp", false);
  return p;
}

Json aggregate_report_to_json(const AggregateReport& r) {
  return {
      {"points", {{"ES", r.es_points}, {"AS", r.as_points}}},
      {"usefulness", rows_json(r.usefulness)},
      {"interestingness", rows_json(r.interestingness)},
  };
}

Json paper_segments_json(const PaperRecord& record) {
  Json out = Json::object();
  for (Aspect a : kAllAspects) {
    const auto& tokens = record.aspect_tokens(a);
    if (!tokens) continue;
    std::string text;
    for (const auto& t : *tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t;
    }
    out[std::string(aspect_name(a))] = std::move(text);
  }
  return out;
}

std::string display_abstract(const PaperRecord& record) {
  if (record.raw_abstract) return *record.raw_abstract;
  std::string text;
  if (const auto& tokens = record.aspect_tokens(Aspect::kFullAbstract)) {
    for (const auto& t : *tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t;
    }
  }
  return text;
}

}  // namespace ase
