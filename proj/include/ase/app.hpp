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

#ifndef ASE_APP_HPP_
#define ASE_APP_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ase/corpus.hpp"
#include "ase/evaluation.hpp"
#include "ase/json_io.hpp"
#include "ase/ranking.hpp"
#include "ase/vote_store.hpp"

namespace ase {

// ---------------------------------------------------------------------------
// Index build pipeline: ingest -> dedup -> vectorize -> save.

struct BuildOptions {
  std::optional<std::size_t> expected_dim;
  bool deduplicate = true;
};

struct BuildSummary {
  std::size_t input_records = 0;
  std::size_t papers = 0;
  std::size_t dim = 0;
  std::array<std::size_t, kAspectCount> coverage{};
  std::vector<DedupPair> dedup_pairs;
};

BuildSummary build_index(const std::filesystem::path& corpus_path,
                         const std::filesystem::path& embeddings_path,
                         const std::filesystem::path& out_path, const BuildOptions& options = {});

Json build_summary_to_json(const BuildSummary& summary);

// ---------------------------------------------------------------------------
// A/B sessions and the HTTP-shaped service surface.

inline constexpr std::size_t kAbListSize = 10;
inline constexpr std::string_view kApiPrefix = "/v1";

struct AbSession {
  std::string session_id;
  std::int64_t test_id = 0;
  std::string seed_paper_id;
  SearchConfig config;
  std::uint64_t seed = 0;
  std::vector<InterleavedItem> interleaved;  // engine tags never leave the server
  bool analogical_empty = false;
  std::string created_at;
  bool closed = false;
};

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Splits "path?k=v&..." into path and percent-decoded query parameters.
HttpRequest make_request(std::string method, std::string_view target, std::string body);

// UTC ISO-8601 timestamp source; replaceable in tests.
using Clock = std::function<std::string()>;
std::string utc_now_iso8601();

class App {
 public:
  App(CorpusIndex index, std::filesystem::path vote_log, Clock clock = utc_now_iso8601);

  App(const App&) = delete;
  App& operator=(const App&) = delete;

  const CorpusIndex& index() const { return index_; }
  const VoteStore& votes() const { return votes_; }

  // Runs the analogical search and the lexical baseline (each capped at
  // kAbListSize), interleaves them and registers the session. Identical
  // arguments give the same session id and payload.
  AbSession create_session(const std::string& seed_paper_id, const SearchConfig& config,
                           std::uint64_t seed);
  std::optional<AbSession> find_session(const std::string& session_id) const;
  void close_session(const std::string& session_id);

  // Client payload: titles, abstracts and segment texts, no engine tags.
  Json session_client_view(const AbSession& session) const;

  struct VoteRequest {
    std::string session_id;
    std::string user_id;
    std::string paper_id;
    Usefulness if_useful = Usefulness::kNotUseful;
    std::string useful_comment;
    Interestingness if_interesting = Interestingness::kNotInteresting;
    std::string interesting_comment;
  };
  // Fills engine and test id from the session. Throws Error{kNotFound} for an
  // unknown session or a paper not in it, Error{kConflict} when closed.
  void submit_vote(const VoteRequest& vote);

  Json paper_json(const std::string& paper_id) const;

  // Routes one request; domain errors become 4xx with
  // {"error": {"code", "message"}}.
  HttpResponse handle(const HttpRequest& request);

 private:
  HttpResponse dispatch(const HttpRequest& request);

  CorpusIndex index_;
  VoteStore votes_;
  Clock clock_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, AbSession> sessions_;
  std::int64_t next_test_id_ = 1;
};

// HTTP front end routing every request through App::handle.
class HttpServer {
 public:
  explicit HttpServer(App& app);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// bind + run.
void serve(App& app, const std::string& host, int port);

}  // namespace ase

#endif  // ASE_APP_HPP_
