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

#ifndef ASE_BM25_HPP_
#define ASE_BM25_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ase {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Okapi BM25 over bag-of-token documents with Lucene's idf,
// ln(1 + (N - df + 0.5) / (df + 0.5)).
class Bm25Scorer {
 public:
  explicit Bm25Scorer(std::vector<std::vector<std::string>> documents, Bm25Params params = {});

  std::size_t size() const { return doc_lengths_.size(); }
  double idf(const std::string& term) const;

  // One score per document. Repeated query terms add their weight again.
  std::vector<double> score(std::span<const std::string> query) const;

 private:
  Bm25Params params_;
  std::vector<std::unordered_map<std::string, std::size_t>> term_freqs_;
  std::vector<double> doc_lengths_;
  std::unordered_map<std::string, std::size_t> doc_freq_;
  double avg_length_ = 0.0;
};

}  // namespace ase

#endif  // ASE_BM25_HPP_
