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

#include "ase/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

#include "ase/error.hpp"

namespace ase {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void format_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kFormat, "embedding line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be positive");
}

void EmbeddingTable::insert(const std::string& token, std::span<const double> values) {
  if (token.empty()) throw Error(ErrorCode::kInvalidArgument, "empty embedding token");
  if (values.size() != dim_) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector for '" + token + "' has " + std::to_string(values.size()) +
                    " entries, table dimension is " + std::to_string(dim_));
  }
  auto [it, inserted] = rows_.try_emplace(token, rows_.size());
  if (inserted) data_.resize(data_.size() + dim_);
  float* row = data_.data() + it->second * dim_;
  std::transform(values.begin(), values.end(), row, [](double v) { return static_cast<float>(v); });
}

std::optional<std::span<const float>> EmbeddingTable::find(const std::string& token) const {
  auto it = rows_.find(token);
  if (it == rows_.end()) return std::nullopt;
  return std::span<const float>(data_.data() + it->second * dim_, dim_);
}

EmbeddingTable load_embedding_table(std::istream& in, std::optional<std::size_t> expected_dim) {
  if (expected_dim && *expected_dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "expected embedding dimension must be positive");
  }
  std::optional<EmbeddingTable> table;
  std::string line;
  std::vector<double> values;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) format_error(line_no, "token without coordinates");
    const std::size_t dim = fields.size() - 1;
    if (!table) {
      if (expected_dim && dim != *expected_dim) {
        format_error(line_no, "dimension mismatch: expected " + std::to_string(*expected_dim) +
                                  ", found " + std::to_string(dim));
      }
      table.emplace(dim);
    } else if (dim != table->dim()) {
      format_error(line_no, "dimension mismatch: expected " + std::to_string(table->dim()) +
                                ", found " + std::to_string(dim));
    }
    values.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::string_view f = fields[i + 1];
      const char* end = f.data() + f.size();
      auto [ptr, ec] = std::from_chars(f.data(), end, values[i]);
      if (ec != std::errc() || ptr != end || !std::isfinite(values[i])) {
        format_error(line_no, "non-numeric coordinate '" + std::string(f) + "'");
      }
    }
    table->insert(std::string(fields[0]), values);
  }
  if (!table) throw Error(ErrorCode::kFormat, "embedding stream is empty");
  return std::move(*table);
}

EmbeddingTable load_embedding_file(const std::filesystem::path& path,
                                   std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file " + path.string());
  return load_embedding_table(in, expected_dim);
}

std::optional<Vector> aggregate_tokens(const EmbeddingTable& table,
                                       std::span<const std::string> tokens) {
  Vector sum(table.dim(), 0.0);
  std::size_t hits = 0;
  for (const auto& token : tokens) {
    auto row = table.find(token);
    if (!row) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += static_cast<double>((*row)[i]);
    ++hits;
  }
  if (hits == 0) return std::nullopt;
  for (double& v : sum) v /= static_cast<double>(hits);
  return sum;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Normalized l2_normalize(std::span<const double> v) {
  const double norm = l2_norm(v);
  Normalized out;
  out.values.assign(v.size(), 0.0);
  if (!(norm > kNormEpsilon)) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = v[i] / norm;
  return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine of vectors with dimensions " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (!(na > kNormEpsilon) || !(nb > kNormEpsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "cosine of a degenerate (zero-norm) vector");
  }
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

}  // namespace ase
