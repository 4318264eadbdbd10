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

#ifndef ASE_CORPUS_HPP_
#define ASE_CORPUS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ase/embedding.hpp"

namespace ase {

// The functional units an abstract is segmented into.
enum class Aspect : std::uint8_t {
  kFullAbstract = 0,
  kBackground,
  kBigProblem,
  kProblem,
  kMechanism,
  kMethod,
  kFindings,
};

inline constexpr std::size_t kAspectCount = 7;

inline constexpr std::array<Aspect, kAspectCount> kAllAspects = {
    Aspect::kFullAbstract, Aspect::kBackground, Aspect::kBigProblem, Aspect::kProblem,
    Aspect::kMechanism,    Aspect::kMethod,     Aspect::kFindings,
};

constexpr std::size_t aspect_index(Aspect a) { return static_cast<std::size_t>(a); }

// Short name used in configs and JSON payloads, e.g. "big_problem".
std::string_view aspect_name(Aspect a);
// Corpus-file field name, e.g. "big_problem_tokens".
std::string_view aspect_field(Aspect a);

// Accepts short names, corpus field names and the alias "purpose", which
// resolves to `purpose_aspect`.
std::optional<Aspect> parse_aspect(std::string_view name,
                                   Aspect purpose_aspect = Aspect::kProblem);

using TokenList = std::vector<std::string>;

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::array<std::optional<TokenList>, kAspectCount> tokens;
  std::optional<std::string> raw_abstract;

  const std::optional<TokenList>& aspect_tokens(Aspect a) const {
    return tokens[aspect_index(a)];
  }
  std::size_t total_token_count() const;

  bool operator==(const PaperRecord&) const = default;
};

// Per-paper aspect vectors, unit norm where present.
using AspectVectorSet = std::array<std::optional<Vector>, kAspectCount>;

// One JSON object per line (see docs/corpus-format.md). Tokens are lowercased.
std::vector<PaperRecord> ingest_corpus(std::istream& in);
std::vector<PaperRecord> ingest_corpus_file(const std::filesystem::path& path);

// Lowercase, ASCII punctuation stripped, whitespace collapsed and trimmed.
std::string canonical_title(std::string_view title);

struct DedupPair {
  std::string dropped_id;
  std::string retained_id;
  bool operator==(const DedupPair&) const = default;
};

struct DedupResult {
  std::vector<PaperRecord> records;
  std::vector<DedupPair> report;
  std::map<std::string, std::string> canonical_to_id;
};

// Title-collision merge: the record with the larger total token count wins,
// earlier record on ties. Retained records keep their input order.
DedupResult deduplicate(std::vector<PaperRecord> records);

std::vector<AspectVectorSet> vectorize_corpus(std::span<const PaperRecord> records,
                                              const EmbeddingTable& table);

class CorpusIndex {
 public:
  CorpusIndex() = default;
  CorpusIndex(std::vector<PaperRecord> records, std::vector<AspectVectorSet> vectors,
              std::map<std::string, std::string> dedup_map, std::size_t dim);

  std::size_t size() const { return records_.size(); }
  std::size_t dim() const { return dim_; }

  const std::vector<PaperRecord>& records() const { return records_; }
  const PaperRecord& record(std::size_t row) const { return records_.at(row); }
  const AspectVectorSet& vectors(std::size_t row) const { return vectors_.at(row); }
  const std::optional<Vector>& aspect_vector(std::size_t row, Aspect a) const {
    return vectors_.at(row)[aspect_index(a)];
  }
  const std::map<std::string, std::string>& dedup_map() const { return dedup_map_; }

  std::optional<std::size_t> find(std::string_view paper_id) const;
  // Throws Error{kNotFound}.
  std::size_t row_of(std::string_view paper_id) const;

  std::size_t coverage(Aspect a) const;

  bool operator==(const CorpusIndex& other) const;

 private:
  std::vector<PaperRecord> records_;
  std::vector<AspectVectorSet> vectors_;
  std::map<std::string, std::string> dedup_map_;
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Convenience: vectorize `records` against `table` and wrap in an index.
CorpusIndex build_corpus_index(std::vector<PaperRecord> records, const EmbeddingTable& table,
                               std::map<std::string, std::string> dedup_map = {});

inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Binary layout documented in docs/index-format.md. Output is a pure function
// of the index contents.
void save_index(const CorpusIndex& index, std::ostream& out);
void save_index_file(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(std::istream& in);
CorpusIndex load_index_file(const std::filesystem::path& path);

}  // namespace ase

#endif  // ASE_CORPUS_HPP_
