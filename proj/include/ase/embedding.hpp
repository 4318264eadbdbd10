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

#ifndef ASE_EMBEDDING_HPP_
#define ASE_EMBEDDING_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ase {

using Vector = std::vector<double>;

// Norms at or below this are treated as zero (degenerate direction).
inline constexpr double kNormEpsilon = 1e-12;

// Immutable-after-load token -> vector table. Rows are stored in a single
// contiguous float buffer so a full 300-d GloVe vocabulary stays compact.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Later inserts of an existing token overwrite its vector.
  void insert(const std::string& token, std::span<const double> values);

  // Exact, case-sensitive lookup.
  std::optional<std::span<const float>> find(const std::string& token) const;

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<float> data_;
};

// Parses GloVe text layout: `token v1 ... vd` per line, no header. Blank
// lines are skipped. Throws Error{kFormat} naming the 1-based line number on
// malformed input and Error{kFormat} on an empty stream.
EmbeddingTable load_embedding_table(std::istream& in,
                                    std::optional<std::size_t> expected_dim = {});
EmbeddingTable load_embedding_file(const std::filesystem::path& path,
                                   std::optional<std::size_t> expected_dim = {});

// Arithmetic mean of the in-vocabulary token vectors (repeats count). Absent
// when no token is in vocabulary.
std::optional<Vector> aggregate_tokens(const EmbeddingTable& table,
                                       std::span<const std::string> tokens);

struct Normalized {
  Vector values;
  bool degenerate = false;  // input norm <= kNormEpsilon; values are all zero
};

Normalized l2_normalize(std::span<const double> v);

double l2_norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

// dot(a,b)/(|a||b|) clamped to [-1, 1]. Throws on dimension mismatch or a
// degenerate operand.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

inline double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

}  // namespace ase

#endif  // ASE_EMBEDDING_HPP_
