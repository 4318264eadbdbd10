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

#include "ase/vote_store.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "ase/error.hpp"
#include "ase/json_io.hpp"

namespace ase {

namespace {

// Makes sure appends start on a fresh line. An unterminated tail that parses
// is kept and terminated; one that does not (a write cut short by a crash) is
// cut off.
void repair_tail(const std::filesystem::path& path) {
  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) return;
    bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (bytes.empty() || bytes.back() == '\n') return;
  const auto last_newline = bytes.rfind('\n');
  const std::size_t tail_start = last_newline == std::string::npos ? 0 : last_newline + 1;
  try {
    eval_point_from_json(Json::parse(bytes.substr(tail_start)));
    std::ofstream(path, std::ios::app) << '\n';
  } catch (const std::exception&) {
    std::filesystem::resize_file(path, tail_start);
  }
}

}  // namespace

std::vector<EvalDataPoint> read_vote_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vote log " + path.string());
  std::vector<EvalDataPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    // An unterminated last line is a write cut short by a crash; drop it.
    const bool torn = in.eof();
    try {
      points.push_back(eval_point_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      if (torn) break;
      throw Error(ErrorCode::kFormat,
                  "vote log line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      if (torn) break;
      throw Error(ErrorCode::kFormat,
                  "vote log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return points;
}

VoteStore::VoteStore(std::filesystem::path log_path, PaperCheck paper_exists)
    : log_path_(std::move(log_path)), paper_exists_(std::move(paper_exists)) {
  if (log_path_.empty()) return;
  if (std::filesystem::exists(log_path_)) {
    for (const auto& p : read_vote_log(log_path_)) apply(p);
    repair_tail(log_path_);
  }
  log_.open(log_path_, std::ios::app);
  if (!log_) throw Error(ErrorCode::kIo, "cannot open vote log for append: " + log_path_.string());
}

void VoteStore::apply(const EvalDataPoint& point) {
  Key key{point.user_id, point.test_id, point.result_paper_id};
  auto it = slot_.find(key);
  if (it == slot_.end()) {
    slot_.emplace(std::move(key), points_.size());
    points_.push_back(point);
  } else {
    points_[it->second] = point;
  }
}

void VoteStore::record(const EvalDataPoint& point) {
  if (paper_exists_) {
    if (!paper_exists_(point.seed_paper_id)) {
      throw Error(ErrorCode::kNotFound, "unknown seed paper '" + point.seed_paper_id + "'");
    }
    if (!paper_exists_(point.result_paper_id)) {
      throw Error(ErrorCode::kNotFound, "unknown result paper '" + point.result_paper_id + "'");
    }
  }
  std::lock_guard lock(mutex_);
  if (log_.is_open()) {
    log_ << eval_point_to_json(point).dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
    log_.flush();
    if (!log_) throw Error(ErrorCode::kIo, "failed appending to vote log " + log_path_.string());
  }
  apply(point);
}

std::size_t VoteStore::size() const {
  std::lock_guard lock(mutex_);
  return points_.size();
}

std::vector<EvalDataPoint> VoteStore::points() const {
  std::lock_guard lock(mutex_);
  return points_;
}

}  // namespace ase
