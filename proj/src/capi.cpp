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

#include "ase/ase.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "ase/app.hpp"
#include "ase/corpus.hpp"
#include "ase/error.hpp"
#include "ase/evaluation.hpp"
#include "ase/json_io.hpp"
#include "ase/ranking.hpp"
#include "ase/vote_store.hpp"

struct ase_index {
  ase::CorpusIndex index;
};

struct ase_app {
  std::unique_ptr<ase::App> app;
};

namespace {

thread_local std::string g_last_error;

ase_status to_status(ase::ErrorCode code) {
  switch (code) {
    case ase::ErrorCode::kIo: return ASE_ERR_IO;
    case ase::ErrorCode::kFormat: return ASE_ERR_FORMAT;
    case ase::ErrorCode::kInvalidArgument: return ASE_ERR_INVALID_ARGUMENT;
    case ase::ErrorCode::kNotFound: return ASE_ERR_NOT_FOUND;
    case ase::ErrorCode::kVersion: return ASE_ERR_VERSION;
    case ase::ErrorCode::kConflict: return ASE_ERR_CONFLICT;
  }
  return ASE_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const ase::Json& j) {
  if (out) *out = dup_string(j.dump(-1, ' ', false, ase::Json::error_handler_t::replace));
}

template <typename F>
ase_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return ASE_OK;
  } catch (const ase::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const ase::Json::exception& e) {
    g_last_error = e.what();
    return ASE_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ASE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ASE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw ase::Error(ase::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

ase::Json parse_optional(const char* json) {
  if (!json || !*json) return ase::Json::object();
  return ase::Json::parse(json);
}

}  // namespace

extern "C" {

const char* ase_version(void) { return "1.0.0"; }

const char* ase_status_name(ase_status status) {
  switch (status) {
    case ASE_OK: return "ok";
    case ASE_ERR_IO: return "io_error";
    case ASE_ERR_FORMAT: return "format_error";
    case ASE_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case ASE_ERR_NOT_FOUND: return "not_found";
    case ASE_ERR_VERSION: return "version_mismatch";
    case ASE_ERR_CONFLICT: return "conflict";
    case ASE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ase_last_error(void) { return g_last_error.c_str(); }

void ase_string_free(char* s) { std::free(s); }

ase_status ase_build_index(const char* corpus_path, const char* embeddings_path,
                           const char* out_path, const char* options_json, char** summary_json) {
  return guarded([&] {
    require(corpus_path, "corpus_path");
    require(embeddings_path, "embeddings_path");
    require(out_path, "out_path");
    ase::BuildOptions options;
    ase::Json j = parse_optional(options_json);
    if (auto it = j.find("expected_dim"); it != j.end() && !it->is_null()) {
      options.expected_dim = it->get<std::size_t>();
    }
    if (auto it = j.find("deduplicate"); it != j.end()) options.deduplicate = it->get<bool>();
    auto summary = ase::build_index(corpus_path, embeddings_path, out_path, options);
    emit(summary_json, ase::build_summary_to_json(summary));
  });
}

ase_status ase_index_open(const char* path, ase_index** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto handle = std::make_unique<ase_index>(ase_index{ase::load_index_file(path)});
    *out = handle.release();
  });
}

void ase_index_close(ase_index* index) { delete index; }

ase_status ase_index_size(const ase_index* index, uint64_t* out) {
  return guarded([&] {
    require(index, "index");
    require(out, "out");
    *out = index->index.size();
  });
}

ase_status ase_index_paper(const ase_index* index, const char* paper_id, char** paper_json) {
  return guarded([&] {
    require(index, "index");
    require(paper_id, "paper_id");
    const auto& rec = index->index.record(index->index.row_of(paper_id));
    emit(paper_json, {{"paper_id", rec.paper_id},
                      {"title", rec.title},
                      {"abstract", ase::display_abstract(rec)},
                      {"segments", ase::paper_segments_json(rec)}});
  });
}

ase_status ase_index_search(const ase_index* index, const char* query_id, const char* config_json,
                            char** result_json) {
  return guarded([&] {
    require(index, "index");
    require(query_id, "query_id");
    ase::SearchConfig config = ase::search_config_from_json(parse_optional(config_json));
    ase::RankedList results = ase::run_search(index->index, query_id, config);
    emit(result_json, {{"query", query_id},
                       {"config", ase::search_config_to_json(config)},
                       {"results", ase::ranked_list_to_json(results, &index->index)}});
  });
}

ase_status ase_app_open(const char* index_path, const char* vote_log_path, ase_app** out) {
  return guarded([&] {
    require(index_path, "index_path");
    require(out, "out");
    *out = nullptr;
    auto handle = std::make_unique<ase_app>();
    handle->app = std::make_unique<ase::App>(ase::load_index_file(index_path),
                                             vote_log_path ? vote_log_path : "");
    *out = handle.release();
  });
}

void ase_app_close(ase_app* app) { delete app; }

ase_status ase_app_create_session(ase_app* app, const char* request_json, char** session_json) {
  return guarded([&] {
    require(app, "app");
    ase::Json req = parse_optional(request_json);
    auto seed_paper = req.find("seed_paper_id");
    if (seed_paper == req.end() || !seed_paper->is_string()) {
      throw ase::Error(ase::ErrorCode::kInvalidArgument, "request needs seed_paper_id");
    }
    ase::SearchConfig config = ase::search_config_from_json(
        req.contains("config") ? req["config"] : ase::Json::object());
    std::uint64_t seed = req.value("seed", std::uint64_t{0});
    ase::AbSession s = app->app->create_session(seed_paper->get<std::string>(), config, seed);
    emit(session_json, app->app->session_client_view(s));
  });
}

ase_status ase_app_handle(ase_app* app, const char* method, const char* target, const char* body,
                          int* http_status, char** response_json) {
  return guarded([&] {
    require(app, "app");
    require(method, "method");
    require(target, "target");
    ase::HttpResponse res =
        app->app->handle(ase::make_request(method, target, body ? body : ""));
    if (http_status) *http_status = res.status;
    if (response_json) *response_json = dup_string(res.body);
  });
}

ase_status ase_app_serve(ase_app* app, const char* host, int port) {
  return guarded([&] {
    require(app, "app");
    ase::serve(*app->app, host ? host : "127.0.0.1", port);
  });
}

ase_status ase_report_votes(const char* vote_log_path, char** report_json) {
  return guarded([&] {
    require(vote_log_path, "vote_log_path");
    // Replay through a store so repeated (user, test, result) votes collapse.
    ase::VoteStore store;
    for (const auto& p : ase::read_vote_log(vote_log_path)) store.record(p);
    auto points = store.points();
    emit(report_json, ase::aggregate_report_to_json(ase::aggregate_votes(points)));
  });
}

ase_status ase_tes_score(int64_t alpha, int64_t beta, int64_t n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = ase::tes_score({alpha, beta, n});
  });
}

}  // extern "C"
