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

#include "ase/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "ase/error.hpp"

namespace ase {

namespace {

constexpr std::array<std::string_view, kAspectCount> kAspectNames = {
    "full_abstract", "background", "big_problem", "problem", "mechanism", "method", "findings",
};

constexpr std::array<std::string_view, kAspectCount> kAspectFields = {
    "abstract_tokens",  "background_tokens", "big_problem_tokens", "problem_tokens",
    "mechanism_tokens", "method_tokens",     "findings_tokens",
};

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

[[noreturn]] void record_error(std::size_t line_no, const std::string& id,
                               const std::string& what) {
  std::string where = "corpus line " + std::to_string(line_no);
  if (!id.empty()) where += " (paper_id '" + id + "')";
  throw Error(ErrorCode::kFormat, where + ": " + what);
}

PaperRecord parse_record(const nlohmann::json& j, std::size_t line_no) {
  if (!j.is_object()) record_error(line_no, "", "record is not a JSON object");
  PaperRecord rec;

  auto id_it = j.find("paper_id");
  if (id_it == j.end() || !id_it->is_string() || id_it->get<std::string>().empty()) {
    record_error(line_no, "", "missing paper_id");
  }
  rec.paper_id = id_it->get<std::string>();

  auto title_it = j.find("title");
  if (title_it == j.end() || !title_it->is_string()) {
    record_error(line_no, rec.paper_id, "missing title");
  }
  rec.title = title_it->get<std::string>();

  if (auto it = j.find("abstract"); it != j.end() && it->is_string()) {
    rec.raw_abstract = it->get<std::string>();
  }

  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ends_with(it.key(), "_tokens")) continue;
    auto field = std::find(kAspectFields.begin(), kAspectFields.end(), it.key());
    if (field == kAspectFields.end()) {
      record_error(line_no, rec.paper_id, "unknown aspect key '" + it.key() + "'");
    }
    const auto& value = it.value();
    if (value.is_null()) continue;
    if (!value.is_array()) {
      record_error(line_no, rec.paper_id, it.key() + " is not an array");
    }
    if (value.empty()) continue;
    TokenList tokens;
    tokens.reserve(value.size());
    for (const auto& t : value) {
      if (!t.is_string()) record_error(line_no, rec.paper_id, it.key() + " holds a non-string");
      tokens.push_back(lowercase(t.get<std::string>()));
    }
    rec.tokens[static_cast<std::size_t>(field - kAspectFields.begin())] = std::move(tokens);
  }

  if (!rec.aspect_tokens(Aspect::kFullAbstract)) {
    record_error(line_no, rec.paper_id, "missing abstract_tokens");
  }
  return rec;
}

}  // namespace

std::string_view aspect_name(Aspect a) { return kAspectNames[aspect_index(a)]; }
std::string_view aspect_field(Aspect a) { return kAspectFields[aspect_index(a)]; }

std::optional<Aspect> parse_aspect(std::string_view name, Aspect purpose_aspect) {
  if (name == "purpose" || name == "purpose_tokens") return purpose_aspect;
  if (name == "abstract" || name == "full") return Aspect::kFullAbstract;
  for (Aspect a : kAllAspects) {
    if (name == aspect_name(a) || name == aspect_field(a)) return a;
  }
  return std::nullopt;
}

std::size_t PaperRecord::total_token_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) {
    if (t) n += t->size();
  }
  return n;
}

std::vector<PaperRecord> ingest_corpus(std::istream& in) {
  std::vector<PaperRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      record_error(line_no, "", std::string("invalid JSON: ") + e.what());
    }
    PaperRecord rec = parse_record(j, line_no);
    if (!seen.insert(rec.paper_id).second) {
      record_error(line_no, rec.paper_id, "duplicate paper_id");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<PaperRecord> ingest_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file " + path.string());
  return ingest_corpus(in);
}

std::string canonical_title(std::string_view title) {
  std::string out;
  out.reserve(title.size());
  bool pending_space = false;
  for (char ch : title) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (c < 0x80 && std::ispunct(c)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

DedupResult deduplicate(std::vector<PaperRecord> records) {
  DedupResult result;
  // canonical title -> position in `kept`
  std::map<std::string, std::size_t> winner;
  std::vector<std::optional<PaperRecord>> kept;
  kept.reserve(records.size());

  for (auto& rec : records) {
    std::string key = canonical_title(rec.title);
    if (key.empty()) {
      kept.emplace_back(std::move(rec));
      continue;
    }
    auto it = winner.find(key);
    if (it == winner.end()) {
      winner.emplace(std::move(key), kept.size());
      kept.emplace_back(std::move(rec));
      continue;
    }
    auto& incumbent = kept[it->second];
    if (rec.total_token_count() > incumbent->total_token_count()) {
      // The newcomer takes the incumbent's slot; earlier drops now point to it.
      for (auto& pair : result.report) {
        if (pair.retained_id == incumbent->paper_id) pair.retained_id = rec.paper_id;
      }
      result.report.push_back({incumbent->paper_id, rec.paper_id});
      incumbent = std::move(rec);
    } else {
      result.report.push_back({rec.paper_id, incumbent->paper_id});
    }
  }

  for (const auto& [key, slot] : winner) result.canonical_to_id.emplace(key, kept[slot]->paper_id);
  for (auto& rec : kept) result.records.push_back(std::move(*rec));
  return result;
}

std::vector<AspectVectorSet> vectorize_corpus(std::span<const PaperRecord> records,
                                              const EmbeddingTable& table) {
  if (table.empty()) throw Error(ErrorCode::kInvalidArgument, "embedding table is empty");
  std::vector<AspectVectorSet> out(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (Aspect a : kAllAspects) {
      const auto& tokens = records[r].aspect_tokens(a);
      if (!tokens) continue;
      auto mean = aggregate_tokens(table, *tokens);
      if (!mean) continue;
      auto unit = l2_normalize(*mean);
      if (unit.degenerate) continue;
      out[r][aspect_index(a)] = std::move(unit.values);
    }
  }
  return out;
}

CorpusIndex::CorpusIndex(std::vector<PaperRecord> records, std::vector<AspectVectorSet> vectors,
                         std::map<std::string, std::string> dedup_map, std::size_t dim)
    : records_(std::move(records)),
      vectors_(std::move(vectors)),
      dedup_map_(std::move(dedup_map)),
      dim_(dim) {
  if (records_.size() != vectors_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "records and vectors differ in length");
  }
  rows_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].paper_id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty paper_id in index");
    }
    if (!rows_.emplace(records_[i].paper_id, i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate paper_id '" + records_[i].paper_id + "' in index");
    }
    for (const auto& v : vectors_[i]) {
      if (v && v->size() != dim_) {
        throw Error(ErrorCode::kInvalidArgument,
                    "vector dimension mismatch for '" + records_[i].paper_id + "'");
      }
    }
  }
}

std::optional<std::size_t> CorpusIndex::find(std::string_view paper_id) const {
  auto it = rows_.find(std::string(paper_id));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::size_t CorpusIndex::row_of(std::string_view paper_id) const {
  auto row = find(paper_id);
  if (!row) throw Error(ErrorCode::kNotFound, "unknown paper_id '" + std::string(paper_id) + "'");
  return *row;
}

std::size_t CorpusIndex::coverage(Aspect a) const {
  return static_cast<std::size_t>(std::count_if(
      vectors_.begin(), vectors_.end(), [a](const auto& set) { return set[aspect_index(a)]; }));
}

bool CorpusIndex::operator==(const CorpusIndex& other) const {
  return dim_ == other.dim_ && records_ == other.records_ && vectors_ == other.vectors_ &&
         dedup_map_ == other.dedup_map_;
}

CorpusIndex build_corpus_index(std::vector<PaperRecord> records, const EmbeddingTable& table,
                               std::map<std::string, std::string> dedup_map) {
  auto vectors = vectorize_corpus(records, table);
  return CorpusIndex(std::move(records), std::move(vectors), std::move(dedup_map), table.dim());
}

}  // namespace ase
