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

#ifndef ASE_JSON_IO_HPP_
#define ASE_JSON_IO_HPP_

#include <json.hpp>

#include "ase/corpus.hpp"
#include "ase/evaluation.hpp"
#include "ase/ranking.hpp"

namespace ase {

using Json = nlohmann::json;

// SearchConfig <-> JSON. Missing fields take their defaults; "purpose" in any
// aspect field resolves through "purpose_aspect". Near aspects may be given
// as plain names or {"aspect": ..., "weight": ...} objects. Throws
// Error{kInvalidArgument} on unknown names, wrong types or a config that
// fails validate().
SearchConfig search_config_from_json(const Json& j);
Json search_config_to_json(const SearchConfig& config);

// [{"paper_id", "title", "score"}]; title omitted without an index.
Json ranked_list_to_json(const RankedList& list, const CorpusIndex* index = nullptr);

// Vote-log record with the study's column names (SE carries the engine).
Json eval_point_to_json(const EvalDataPoint& point);
EvalDataPoint eval_point_from_json(const Json& j);

Json aggregate_report_to_json(const AggregateReport& report);

// Segment texts keyed by aspect name, tokens joined by single spaces.
Json paper_segments_json(const PaperRecord& record);
// Display text of the abstract: raw_abstract when present, else the joined
// full-abstract tokens.
std::string display_abstract(const PaperRecord& record);

}  // namespace ase

#endif  // ASE_JSON_IO_HPP_
