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

#ifndef ASE_DISPERSION_HPP_
#define ASE_DISPERSION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ase/embedding.hpp"

namespace ase {

using VectorMap = std::map<std::string, Vector>;

// Greedy max-min dispersion over cosine distance. Starts from a uniformly
// drawn candidate, then repeatedly appends the candidate whose minimum
// distance to the selection is largest (ties: smallest paper_id). Returns ids
// in pick order. m == 0 gives an empty selection; m > candidates throws.
std::vector<std::string> max_min_select(std::span<const std::string> candidates,
                                        const VectorMap& vectors, std::size_t m,
                                        std::uint64_t seed);

// Same greedy rule with a fixed start position.
std::vector<std::string> max_min_select_from(std::span<const std::string> candidates,
                                             const VectorMap& vectors, std::size_t m,
                                             std::size_t start);

// Smallest pairwise cosine distance within `ids` (0 for fewer than two).
double min_pairwise_distance(std::span<const std::string> ids, const VectorMap& vectors);

}  // namespace ase

#endif  // ASE_DISPERSION_HPP_
