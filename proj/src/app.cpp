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

#include "ase/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <string_view>

#include "ase/error.hpp"

namespace ase {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kFormat: return 400;
    case ErrorCode::kIo:
    case ErrorCode::kVersion: return 500;
  }
  return 500;
}

HttpResponse json_response(int status, const Json& body) {
  return {status, body.dump(-1, ' ', false, Json::error_handler_t::replace)};
}

HttpResponse error_response(int status, std::string_view code, const std::string& message) {
  return json_response(status, {{"error", {{"code", code}, {"message", message}}}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t start = i;
    while (i < path.size() && path[i] != '/') ++i;
    if (i > start) parts.push_back(path.substr(start, i - start));
  }
  return parts;
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  Json j = Json::parse(body);  // parse_error handled by handle()
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "request body must be a JSON object");
  return j;
}

std::string required_string(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing string field '") + field + "'");
  }
  return it->get<std::string>();
}

std::string optional_string(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::uint64_t optional_seed(const Json& j) {
  auto it = j.find("seed");
  if (it == j.end()) return 0;
  if (!it->is_number_integer()) throw Error(ErrorCode::kInvalidArgument, "seed must be an integer");
  return it->is_number_unsigned() ? it->get<std::uint64_t>()
                                  : static_cast<std::uint64_t>(it->get<std::int64_t>());
}

std::int64_t query_int(const std::map<std::string, std::string>& query, const std::string& key) {
  auto it = query.find(key);
  if (it == query.end()) throw Error(ErrorCode::kInvalidArgument, "missing query parameter " + key);
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "query parameter " + key + " must be an integer");
  }
}

std::int64_t json_int(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("'") + field + "' must be an integer");
  }
  return it->get<std::int64_t>();
}

AggregateReport empty_report() {
  AggregateReport r;
  for (std::size_t c = 0; c < 3; ++c) {
    r.usefulness[c].category = usefulness_name(static_cast<Usefulness>(c));
    r.interestingness[c].category = interestingness_name(static_cast<Interestingness>(c));
  }
  return r;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size()) {
      auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
      };
      int hi = hex(s[i + 1]);
      int lo = hex(s[i + 2]);
      if (hi < 0 || lo < 0) {
        out.push_back(s[i]);
        continue;
      }
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

HttpRequest make_request(std::string method, std::string_view target, std::string body) {
  HttpRequest req;
  req.method = std::move(method);
  req.body = std::move(body);
  const auto q = target.find('?');
  req.path = percent_decode(target.substr(0, q));
  if (q == std::string_view::npos) return req;
  std::string_view rest = target.substr(q + 1);
  while (!rest.empty()) {
    const auto amp = rest.find('&');
    std::string_view pair = rest.substr(0, amp);
    rest = amp == std::string_view::npos ? std::string_view{} : rest.substr(amp + 1);
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    std::string key = percent_decode(pair.substr(0, eq));
    std::string value = eq == std::string_view::npos ? "" : percent_decode(pair.substr(eq + 1));
    req.query[std::move(key)] = std::move(value);
  }
  return req;
}

BuildSummary build_index(const std::filesystem::path& corpus_path,
                         const std::filesystem::path& embeddings_path,
                         const std::filesystem::path& out_path, const BuildOptions& options) {
  BuildSummary summary;
  std::vector<PaperRecord> records = ingest_corpus_file(corpus_path);
  summary.input_records = records.size();

  std::map<std::string, std::string> dedup_map;
  if (options.deduplicate) {
    DedupResult dedup = deduplicate(std::move(records));
    records = std::move(dedup.records);
    summary.dedup_pairs = std::move(dedup.report);
    dedup_map = std::move(dedup.canonical_to_id);
  }

  EmbeddingTable table = load_embedding_file(embeddings_path, options.expected_dim);
  CorpusIndex index = build_corpus_index(std::move(records), table, std::move(dedup_map));
  save_index_file(index, out_path);

  summary.papers = index.size();
  summary.dim = index.dim();
  for (Aspect a : kAllAspects) summary.coverage[aspect_index(a)] = index.coverage(a);
  return summary;
}

Json build_summary_to_json(const BuildSummary& s) {
  Json coverage = Json::object();
  for (Aspect a : kAllAspects) coverage[std::string(aspect_name(a))] = s.coverage[aspect_index(a)];
  Json pairs = Json::array();
  for (const auto& p : s.dedup_pairs) {
    pairs.push_back({{"dropped_id", p.dropped_id}, {"retained_id", p.retained_id}});
  }
  return {
      {"input_records", s.input_records},
      {"papers", s.papers},
      {"dim", s.dim},
      {"coverage", coverage},
      {"dedup_pairs", pairs},
      {"summary", std::to_string(s.papers) + " papers, " + std::to_string(s.dedup_pairs.size()) +
                      " dedup pairs"},
  };
}

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

App::App(CorpusIndex index, std::filesystem::path vote_log, Clock clock)
    : index_(std::move(index)),
      votes_(std::move(vote_log),
             [this](std::string_view id) { return index_.find(id).has_value(); }),
      clock_(std::move(clock)) {
  // Keep test ids unique across restarts that reuse a vote log.
  for (const auto& p : votes_.points()) next_test_id_ = std::max(next_test_id_, p.test_id + 1);
}

AbSession App::create_session(const std::string& seed_paper_id, const SearchConfig& config,
                              std::uint64_t seed) {
  index_.row_of(seed_paper_id);
  config.validate();

  const std::string fingerprint =
      seed_paper_id + '\n' + search_config_to_json(config).dump() + '\n' + std::to_string(seed);
  const std::string session_id = hex64(fnv1a(fingerprint));
  {
    std::shared_lock lock(sessions_mutex_);
    if (auto it = sessions_.find(session_id); it != sessions_.end()) return it->second;
  }

  RankedList analogical = run_search(index_, seed_paper_id, config);
  if (analogical.size() > kAbListSize) analogical.resize(kAbListSize);
  RankedList baseline = lexical_baseline_search(index_, seed_paper_id, kAbListSize);

  AbSession session;
  session.session_id = session_id;
  session.seed_paper_id = seed_paper_id;
  session.config = config;
  session.seed = seed;
  session.analogical_empty = analogical.empty();
  session.interleaved = interleave_results(analogical, Engine::kAS, baseline, Engine::kES, seed);
  session.created_at = clock_();

  std::unique_lock lock(sessions_mutex_);
  auto [it, inserted] = sessions_.try_emplace(session_id, std::move(session));
  if (inserted) it->second.test_id = next_test_id_++;
  return it->second;
}

std::optional<AbSession> App::find_session(const std::string& session_id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

void App::close_session(const std::string& session_id) {
  std::unique_lock lock(sessions_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "unknown session '" + session_id + "'");
  it->second.closed = true;
}

Json App::paper_json(const std::string& paper_id) const {
  const PaperRecord& rec = index_.record(index_.row_of(paper_id));
  return {
      {"paper_id", rec.paper_id},
      {"title", rec.title},
      {"abstract", display_abstract(rec)},
      {"segments", paper_segments_json(rec)},
  };
}

Json App::session_client_view(const AbSession& session) const {
  Json results = Json::array();
  for (const auto& item : session.interleaved) results.push_back(paper_json(item.paper_id));
  return {
      {"session_id", session.session_id},
      {"seed_paper", paper_json(session.seed_paper_id)},
      {"results", results},
      {"single_list", session.analogical_empty},
      {"closed", session.closed},
      {"legend", {"Background", "Purpose", "Method", "Mechanism", "Findings"}},
  };
}

void App::submit_vote(const VoteRequest& vote) {
  auto session = find_session(vote.session_id);
  if (!session) throw Error(ErrorCode::kNotFound, "unknown session '" + vote.session_id + "'");
  if (session->closed) throw Error(ErrorCode::kConflict, "session '" + vote.session_id + "' is closed");
  if (vote.user_id.empty()) throw Error(ErrorCode::kInvalidArgument, "user_id must not be empty");

  auto item = std::find_if(session->interleaved.begin(), session->interleaved.end(),
                           [&](const InterleavedItem& i) { return i.paper_id == vote.paper_id; });
  if (item == session->interleaved.end()) {
    throw Error(ErrorCode::kNotFound,
                "paper '" + vote.paper_id + "' is not part of session '" + vote.session_id + "'");
  }

  EvalDataPoint p;
  p.test_id = session->test_id;
  p.seed_paper_id = session->seed_paper_id;
  p.seed_paper_name = index_.record(index_.row_of(session->seed_paper_id)).title;
  p.engine = item->engine;
  p.result_paper_id = vote.paper_id;
  p.result_paper_name = index_.record(index_.row_of(vote.paper_id)).title;
  p.if_useful = vote.if_useful;
  p.useful_comment = vote.useful_comment;
  p.if_interesting = vote.if_interesting;
  p.interesting_comment = vote.interesting_comment;
  p.user_id = vote.user_id;
  p.timestamp = clock_();
  votes_.record(p);
}

HttpResponse App::handle(const HttpRequest& request) {
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), error_code_name(e.code()), e.what());
  } catch (const Json::parse_error& e) {
    return error_response(400, "invalid_json", e.what());
  } catch (const Json::exception& e) {
    return error_response(400, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

HttpResponse App::dispatch(const HttpRequest& request) {
  const auto parts = split_path(request.path);
  const std::string_view prefix = kApiPrefix.substr(1);
  if (parts.empty() || parts[0] != prefix) {
    return error_response(404, "not_found", "no route for " + request.path);
  }
  const std::string& method = request.method;
  const bool get = method == "GET";
  const bool post = method == "POST";
  auto route = [&](std::initializer_list<std::string_view> pattern) {
    if (parts.size() != pattern.size() + 1) return false;
    std::size_t i = 1;
    for (std::string_view p : pattern) {
      if (p != "*" && parts[i] != p) return false;
      ++i;
    }
    return true;
  };

  if (route({"health"}) && get) return json_response(200, {{"status", "ok"}});

  if (route({"papers", "*"}) && get) {
    return json_response(200, paper_json(std::string(parts[2])));
  }

  if (route({"search"}) && post) {
    Json body = parse_body(request.body);
    const std::string query = required_string(body, "query");
    SearchConfig config =
        search_config_from_json(body.contains("config") ? body["config"] : Json::object());
    RankedList results = run_search(index_, query, config);
    return json_response(200, {{"query", query},
                               {"config", search_config_to_json(config)},
                               {"results", ranked_list_to_json(results, &index_)}});
  }

  if (route({"ab-sessions"}) && post) {
    Json body = parse_body(request.body);
    SearchConfig config =
        search_config_from_json(body.contains("config") ? body["config"] : Json::object());
    AbSession s = create_session(required_string(body, "seed_paper_id"), config, optional_seed(body));
    return json_response(200, session_client_view(s));
  }

  if (route({"ab-sessions", "*"}) && get) {
    auto s = find_session(std::string(parts[2]));
    if (!s) throw Error(ErrorCode::kNotFound, "unknown session '" + std::string(parts[2]) + "'");
    return json_response(200, session_client_view(*s));
  }

  if (route({"ab-sessions", "*", "close"}) && post) {
    close_session(std::string(parts[2]));
    return json_response(200, {{"session_id", parts[2]}, {"closed", true}});
  }

  if (route({"votes"}) && post) {
    Json body = parse_body(request.body);
    VoteRequest v;
    v.session_id = required_string(body, "session_id");
    v.user_id = required_string(body, "user_id");
    v.paper_id = required_string(body, "paper_id");
    auto useful = parse_usefulness(required_string(body, "if_useful"));
    if (!useful) throw Error(ErrorCode::kInvalidArgument, "if_useful has an unknown value");
    v.if_useful = *useful;
    auto interesting = parse_interestingness(required_string(body, "if_interesting"));
    if (!interesting) throw Error(ErrorCode::kInvalidArgument, "if_interesting has an unknown value");
    v.if_interesting = *interesting;
    v.useful_comment = optional_string(body, "useful_comment");
    v.interesting_comment = optional_string(body, "interesting_comment");
    submit_vote(v);
    return json_response(200, {{"stored", true}, {"votes", votes_.size()}});
  }

  if (route({"votes"}) && get) {
    auto sid = request.query.find("session_id");
    if (sid == request.query.end()) {
      throw Error(ErrorCode::kInvalidArgument, "missing query parameter session_id");
    }
    auto s = find_session(sid->second);
    if (!s) throw Error(ErrorCode::kNotFound, "unknown session '" + sid->second + "'");
    auto uid = request.query.find("user_id");
    Json saved = Json::array();
    for (const auto& p : votes_.points()) {
      if (p.test_id != s->test_id) continue;
      if (uid != request.query.end() && p.user_id != uid->second) continue;
      // Engine tag deliberately omitted.
      saved.push_back({{"paper_id", p.result_paper_id},
                       {"user_id", p.user_id},
                       {"if_useful", usefulness_name(p.if_useful)},
                       {"useful_comment", p.useful_comment},
                       {"if_interesting", interestingness_name(p.if_interesting)},
                       {"interesting_comment", p.interesting_comment}});
    }
    return json_response(200, {{"session_id", s->session_id}, {"votes", saved}});
  }

  if (route({"report", "aggregate"}) && get) {
    auto points = votes_.points();
    AggregateReport report = points.empty() ? empty_report() : aggregate_votes(points);
    return json_response(200, aggregate_report_to_json(report));
  }

  if (route({"report", "tes"}) && (get || post)) {
    if (get && request.body.empty()) {
      TesInput in{query_int(request.query, "alpha"), query_int(request.query, "beta"),
                  query_int(request.query, "n")};
      return json_response(200, {{"alpha", in.alpha}, {"beta", in.beta}, {"n", in.n},
                                 {"tes", tes_score(in)}});
    }
    Json body = parse_body(request.body);
    auto inputs = body.find("inputs");
    if (inputs == body.end() || !inputs->is_array()) {
      throw Error(ErrorCode::kInvalidArgument, "'inputs' must be an array of TES inputs");
    }
    Json scores = Json::array();
    for (const auto& item : *inputs) {
      if (!item.is_object()) throw Error(ErrorCode::kInvalidArgument, "TES input must be an object");
      TesInput in{json_int(item, "alpha"), json_int(item, "beta"), json_int(item, "n")};
      Json row = {{"alpha", in.alpha}, {"beta", in.beta}, {"n", in.n}, {"tes", tes_score(in)}};
      if (auto label = item.find("label"); label != item.end()) row["label"] = *label;
      scores.push_back(std::move(row));
    }
    return json_response(200, {{"scores", scores}});
  }

  return error_response(404, "not_found", "no route for " + method + " " + request.path);
}

}  // namespace ase
