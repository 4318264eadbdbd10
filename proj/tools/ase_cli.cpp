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

// Command-line front end. Everything goes through the C API in libase.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ase/ase.h"

namespace {

using Json = nlohmann::json;

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  ~LibString() { ase_string_free(ptr_); }
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;

  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

int fail(ase_status status) {
  std::cerr << "error (" << ase_status_name(status) << "): " << ase_last_error() << "\n";
  return status == ASE_OK ? 0 : static_cast<int>(status);
}

struct ConfigFlags {
  std::string config_file;
  std::optional<std::string> algorithm;
  std::vector<std::string> near;
  std::optional<std::string> far;
  std::optional<long long> pool_size;
  std::optional<long long> result_size;
  std::optional<long long> k_clusters;
  std::optional<std::string> reduce_mode;
  std::optional<std::string> purpose_aspect;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "Search config JSON file (flags override it)");
    cmd->add_option("--algorithm", algorithm,
                    "naive_cosine | knn_kmeans | naive_farthest | farthest_neighbor | "
                    "lexical_baseline");
    cmd->add_option("--near", near, "Near aspect, optionally weighted: problem or problem:2.0");
    cmd->add_option("--far", far, "Far aspect");
    cmd->add_option("--pool-size", pool_size);
    cmd->add_option("--result-size", result_size);
    cmd->add_option("--k-clusters", k_clusters);
    cmd->add_option("--reduce-mode", reduce_mode, "nearest_to_query | nearest_to_centroid");
    cmd->add_option("--purpose-aspect", purpose_aspect, "problem | big_problem");
  }

  Json build(std::optional<long long> rng_seed) const {
    Json c = Json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::runtime_error("cannot open config file " + config_file);
      c = Json::parse(in);
    }
    if (algorithm) c["algorithm"] = *algorithm;
    if (!near.empty()) {
      Json list = Json::array();
      for (const auto& spec : near) {
        auto colon = spec.find(':');
        if (colon == std::string::npos) {
          list.push_back({{"aspect", spec}, {"weight", 1.0}});
        } else {
          list.push_back({{"aspect", spec.substr(0, colon)},
                          {"weight", std::stod(spec.substr(colon + 1))}});
        }
      }
      c["near_aspects"] = list;
    }
    if (far) c["far_aspect"] = *far;
    if (pool_size) c["pool_size"] = *pool_size;
    if (result_size) c["result_size"] = *result_size;
    if (k_clusters) c["k_clusters"] = *k_clusters;
    if (reduce_mode) c["reduce_mode"] = *reduce_mode;
    if (purpose_aspect) c["purpose_aspect"] = *purpose_aspect;
    if (rng_seed) c["rng_seed"] = *rng_seed;
    return c;
  }
};

int run_build_index(const std::string& corpus, const std::string& embeddings,
                    const std::string& out, std::optional<long long> dim, bool no_dedup,
                    bool as_json) {
  Json options = {{"deduplicate", !no_dedup}};
  if (dim) options["expected_dim"] = *dim;
  LibString summary;
  ase_status st = ase_build_index(corpus.c_str(), embeddings.c_str(), out.c_str(),
                                  options.dump().c_str(), summary.out());
  if (st != ASE_OK) return fail(st);
  Json s = Json::parse(summary.str());
  if (as_json) {
    std::cout << s.dump(2) << "\n";
    return 0;
  }
  std::cout << s["summary"].get<std::string>() << " (dim " << s["dim"] << ", "
            << s["input_records"] << " input records)\n";
  std::cout << "aspect coverage:\n";
  for (auto it = s["coverage"].begin(); it != s["coverage"].end(); ++it) {
    std::cout << "  " << it.key() << ": " << it.value() << "\n";
  }
  for (const auto& p : s["dedup_pairs"]) {
    std::cout << "  dropped " << p["dropped_id"].get<std::string>() << " -> kept "
              << p["retained_id"].get<std::string>() << "\n";
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_search(const std::string& index_path, const std::string& query, const ConfigFlags& flags,
               std::optional<long long> seed, bool as_json) {
  ase_index* index = nullptr;
  ase_status st = ase_index_open(index_path.c_str(), &index);
  if (st != ASE_OK) return fail(st);
  LibString result;
  const std::string config = flags.build(seed).dump();
  st = ase_index_search(index, query.c_str(), config.c_str(), result.out());
  ase_index_close(index);
  if (st != ASE_OK) return fail(st);

  Json r = Json::parse(result.str());
  if (as_json) {
    std::cout << r.dump(2) << "\n";
    return 0;
  }
  std::cout << "query " << query << " [" << r["config"]["algorithm"].get<std::string>() << "]\n";
  int rank = 1;
  for (const auto& e : r["results"]) {
    char score[32];
    std::snprintf(score, sizeof(score), "%.6f", e["score"].get<double>());
    std::cout << rank++ << "\t" << e["paper_id"].get<std::string>() << "\t" << score << "\t"
              << e["title"].get<std::string>() << "\n";
  }
  if (r["results"].empty()) std::cout << "(no results)\n";
  return 0;
}

int run_ab_session(const std::string& index_path, const std::string& votes,
                   const std::string& seed_paper, const ConfigFlags& flags, long long seed) {
  ase_app* app = nullptr;
  ase_status st = ase_app_open(index_path.c_str(), votes.empty() ? nullptr : votes.c_str(), &app);
  if (st != ASE_OK) return fail(st);
  Json request = {{"seed_paper_id", seed_paper}, {"config", flags.build(seed)}, {"seed", seed}};
  LibString session;
  st = ase_app_create_session(app, request.dump().c_str(), session.out());
  ase_app_close(app);
  if (st != ASE_OK) return fail(st);
  std::cout << Json::parse(session.str()).dump(2) << "\n";
  return 0;
}

int run_report(const std::string& votes, const std::vector<std::string>& tes_specs) {
  if (!votes.empty()) {
    LibString report;
    ase_status st = ase_report_votes(votes.c_str(), report.out());
    if (st != ASE_OK) return fail(st);
    std::cout << Json::parse(report.str()).dump(2) << "\n";
  }
  for (const auto& spec : tes_specs) {
    long long alpha = 0, beta = 0, n = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lld,%lld,%lld%c", &alpha, &beta, &n, &tail) != 3) {
      std::cerr << "error: --tes expects alpha,beta,n but got '" << spec << "'\n";
      return static_cast<int>(ASE_ERR_INVALID_ARGUMENT);
    }
    double tes = 0.0;
    ase_status st = ase_tes_score(alpha, beta, n, &tes);
    if (st != ASE_OK) return fail(st);
    std::cout << "TES(" << alpha << ", " << beta << ", " << n << ") = " << tes << "\n";
  }
  return 0;
}

int run_serve(const std::string& index_path, const std::string& votes, const std::string& host,
              int port) {
  ase_app* app = nullptr;
  ase_status st = ase_app_open(index_path.c_str(), votes.c_str(), &app);
  if (st != ASE_OK) return fail(st);
  std::cerr << "serving on http://" << host << ":" << port << "/v1\n";
  st = ase_app_serve(app, host.c_str(), port);
  ase_app_close(app);
  return st == ASE_OK ? 0 : fail(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Analogy search over segmented paper abstracts"};
  cli.require_subcommand(1);

  std::string corpus, embeddings, out, index_path, query, votes, seed_paper;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<long long> dim, seed;
  long long session_seed = 0;
  bool no_dedup = false, as_json = false;
  std::vector<std::string> tes_specs;
  ConfigFlags search_flags, session_flags;

  auto* build = cli.add_subcommand("build-index", "Ingest, deduplicate, vectorize and save an index");
  build->add_option("--corpus", corpus, "Corpus JSON-lines file")->required();
  build->add_option("--embeddings", embeddings, "GloVe-format text embeddings")->required();
  build->add_option("--out", out, "Index output path")->required();
  build->add_option("--dim", dim, "Expected embedding dimension");
  build->add_flag("--no-dedup", no_dedup, "Keep records with colliding titles");
  build->add_flag("--json", as_json, "Print the summary as JSON");

  auto* search = cli.add_subcommand("search", "Run an analogical or lexical search");
  search->add_option("--index", index_path)->required();
  search->add_option("--query", query, "Query paper_id")->required();
  search->add_option("--seed", seed, "rng_seed for clustering and dispersion");
  search->add_flag("--json", as_json, "Print machine-readable output");
  search_flags.add_to(search);

  auto* ab = cli.add_subcommand("ab-session", "Create a blind interleaved A/B session");
  ab->add_option("--index", index_path)->required();
  ab->add_option("--seed-paper", seed_paper)->required();
  ab->add_option("--votes", votes, "Vote log (optional)");
  ab->add_option("--seed", session_seed, "Seed for interleaving and the search");
  session_flags.add_to(ab);

  auto* report = cli.add_subcommand("report", "Aggregate a vote log and/or score TES inputs");
  report->add_option("--votes", votes, "Vote log to aggregate");
  report->add_option("--tes", tes_specs, "alpha,beta,n (repeatable)");

  auto* serve = cli.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--index", index_path)->required();
  serve->add_option("--votes", votes, "Vote log path")->required();
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*build) return run_build_index(corpus, embeddings, out, dim, no_dedup, as_json);
    if (*search) return run_search(index_path, query, search_flags, seed, as_json);
    if (*ab) return run_ab_session(index_path, votes, seed_paper, session_flags, session_seed);
    if (*report) {
      if (votes.empty() && tes_specs.empty()) {
        std::cerr << "error: report needs --votes and/or --tes\n";
        return static_cast<int>(ASE_ERR_INVALID_ARGUMENT);
      }
      return run_report(votes, tes_specs);
    }
    if (*serve) return run_serve(index_path, votes, host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ASE_ERR_INVALID_ARGUMENT);
  }
  return 0;
}
