/*
 * Copyright 2026 The ASE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the analogy search engine.
 *
 * Handles are opaque. Every call returns an ase_status; on failure the
 * thread-local ase_last_error() string describes the problem. Structured
 * inputs and outputs are UTF-8 JSON documents. Strings returned through
 * `char **` out-parameters are owned by the caller and released with
 * ase_string_free().
 */
#ifndef ASE_ASE_H_
#define ASE_ASE_H_

#include <stdint.h>

#if defined(_WIN32)
#  if defined(ASE_BUILDING_LIBRARY)
#    define ASE_API __declspec(dllexport)
#  else
#    define ASE_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define ASE_API __attribute__((visibility("default")))
#else
#  define ASE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ase_status {
  ASE_OK = 0,
  ASE_ERR_IO = 1,
  ASE_ERR_FORMAT = 2,
  ASE_ERR_INVALID_ARGUMENT = 3,
  ASE_ERR_NOT_FOUND = 4,
  ASE_ERR_VERSION = 5,
  ASE_ERR_CONFLICT = 6,
  ASE_ERR_INTERNAL = 99
} ase_status;

typedef struct ase_index ase_index;
typedef struct ase_app ase_app;

ASE_API const char *ase_version(void);
ASE_API const char *ase_status_name(ase_status status);
/* Message of the last failed call on this thread ("" if none). */
ASE_API const char *ase_last_error(void);
ASE_API void ase_string_free(char *s);

/* ingest -> dedup -> vectorize -> save. options_json may be NULL:
 * {"expected_dim": 300, "deduplicate": true}. summary_json may be NULL. */
ASE_API ase_status ase_build_index(const char *corpus_path, const char *embeddings_path,
                                   const char *out_path, const char *options_json,
                                   char **summary_json);

ASE_API ase_status ase_index_open(const char *path, ase_index **out);
ASE_API void ase_index_close(ase_index *index);
ASE_API ase_status ase_index_size(const ase_index *index, uint64_t *out);
/* {"paper_id", "title", "abstract", "segments": {...}} */
ASE_API ase_status ase_index_paper(const ase_index *index, const char *paper_id,
                                   char **paper_json);
/* config_json may be NULL for defaults. Result: {"query", "config", "results": [...]} */
ASE_API ase_status ase_index_search(const ase_index *index, const char *query_id,
                                    const char *config_json, char **result_json);

/* Service state: index plus an append-only vote log (vote_log_path may be
 * NULL for an in-memory store). */
ASE_API ase_status ase_app_open(const char *index_path, const char *vote_log_path,
                                ase_app **out);
ASE_API void ase_app_close(ase_app *app);
/* request_json: {"seed_paper_id", "config", "seed"}; returns the client view. */
ASE_API ase_status ase_app_create_session(ase_app *app, const char *request_json,
                                          char **session_json);
/* Routes one HTTP-shaped request. `target` is a path with optional query
 * string. Domain errors are reported through http_status, not the return. */
ASE_API ase_status ase_app_handle(ase_app *app, const char *method, const char *target,
                                  const char *body, int *http_status, char **response_json);
/* Blocks serving HTTP until the process is stopped. */
ASE_API ase_status ase_app_serve(ase_app *app, const char *host, int port);

/* Aggregate report over a vote log file. */
ASE_API ase_status ase_report_votes(const char *vote_log_path, char **report_json);
ASE_API ase_status ase_tes_score(int64_t alpha, int64_t beta, int64_t n, double *out);

#ifdef __cplusplus
}
#endif

#endif /* ASE_ASE_H_ */
