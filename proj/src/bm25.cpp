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

#include "ase/bm25.hpp"

#include <cmath>
#include <map>

namespace ase {

Bm25Scorer::Bm25Scorer(std::vector<std::vector<std::string>> documents, Bm25Params params)
    : params_(params) {
  term_freqs_.resize(documents.size());
  doc_lengths_.resize(documents.size());
  double total = 0.0;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (auto& term : documents[d]) ++term_freqs_[d][term];
    for (const auto& [term, tf] : term_freqs_[d]) ++doc_freq_[term];
    doc_lengths_[d] = static_cast<double>(documents[d].size());
    total += doc_lengths_[d];
  }
  avg_length_ = documents.empty() ? 0.0 : total / static_cast<double>(documents.size());
}

double Bm25Scorer::idf(const std::string& term) const {
  auto it = doc_freq_.find(term);
  const double df = it == doc_freq_.end() ? 0.0 : static_cast<double>(it->second);
  const double n = static_cast<double>(doc_lengths_.size());
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<double> Bm25Scorer::score(std::span<const std::string> query) const {
  std::map<std::string, std::size_t> query_tf;
  for (const auto& t : query) ++query_tf[t];

  std::vector<double> scores(doc_lengths_.size(), 0.0);
  for (const auto& [term, qtf] : query_tf) {
    if (!doc_freq_.contains(term)) continue;
    const double weight = idf(term) * static_cast<double>(qtf);
    for (std::size_t d = 0; d < scores.size(); ++d) {
      auto it = term_freqs_[d].find(term);
      if (it == term_freqs_[d].end()) continue;
      const double tf = static_cast<double>(it->second);
      const double norm =
          params_.k1 * (1.0 - params_.b + params_.b * doc_lengths_[d] / avg_length_);
      scores[d] += weight * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }
  return scores;
}

}  // namespace ase
