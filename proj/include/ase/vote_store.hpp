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

#ifndef ASE_VOTE_STORE_HPP_
#define ASE_VOTE_STORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ase/evaluation.hpp"

namespace ase {

// Append-only JSON-lines vote log. Replaying the log rebuilds the store; a
// later line for the same (user_id, test_id, result paper) replaces the
// earlier vote. Writes are serialized and flushed per record.
class VoteStore {
 public:
  using PaperCheck = std::function<bool(std::string_view paper_id)>;

  // Empty `log_path` keeps votes in memory only. An existing log is replayed.
  explicit VoteStore(std::filesystem::path log_path = {}, PaperCheck paper_exists = {});

  VoteStore(const VoteStore&) = delete;
  VoteStore& operator=(const VoteStore&) = delete;

  // Throws Error{kNotFound} when the seed or result paper is unknown.
  void record(const EvalDataPoint& point);

  std::size_t size() const;
  // Latest vote per key, in order of first appearance.
  std::vector<EvalDataPoint> points() const;

  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  using Key = std::tuple<std::string, std::int64_t, std::string>;

  void apply(const EvalDataPoint& point);

  std::filesystem::path log_path_;
  PaperCheck paper_exists_;
  mutable std::mutex mutex_;
  std::ofstream log_;
  std::map<Key, std::size_t> slot_;
  std::vector<EvalDataPoint> points_;
};

// Parses a vote log without an index check. Throws Error{kFormat} naming the
// line on malformed records; an unterminated malformed last line is skipped.
std::vector<EvalDataPoint> read_vote_log(const std::filesystem::path& path);

}  // namespace ase

#endif  // ASE_VOTE_STORE_HPP_
