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

#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ase/ase.h"

namespace {

using Json = nlohmann::json;

const std::filesystem::path kToyDir = ASE_TOY_DIR;

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ase_capi_tests";
  std::filesystem::create_directories(dir);
  return dir / (name + "_" + std::to_string(std::random_device{}()));
}

// Takes ownership of a library-allocated string.
Json take_json(char* s) {
  EXPECT_NE(s, nullptr);
  Json j = Json::parse(s);
  ase_string_free(s);
  return j;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    index_path_ = scratch("toy.idx");
    char* summary = nullptr;
    ASSERT_EQ(ase_build_index((kToyDir / "corpus.jsonl").c_str(),
                              (kToyDir / "embeddings.txt").c_str(), index_path_.c_str(), nullptr,
                              &summary),
              ASE_OK)
        << ase_last_error();
    summary_ = take_json(summary);
    ASSERT_EQ(ase_index_open(index_path_.c_str(), &index_), ASE_OK) << ase_last_error();
  }
  void TearDown() override {
    ase_index_close(index_);
    std::filesystem::remove(index_path_);
  }

  Json search(const std::string& query, const Json& config) {
    char* out = nullptr;
    const std::string text = config.dump();
    EXPECT_EQ(ase_index_search(index_, query.c_str(), text.c_str(), &out), ASE_OK)
        << ase_last_error();
    return take_json(out);
  }

  std::filesystem::path index_path_;
  Json summary_;
  ase_index* index_ = nullptr;
};

TEST(CApiBasics, VersionStatusNamesAndTes) {
  EXPECT_STREQ(ase_version(), "1.0.0");
  EXPECT_STREQ(ase_status_name(ASE_OK), "ok");
  EXPECT_STREQ(ase_status_name(ASE_ERR_NOT_FOUND), "not_found");
  double tes = 0;
  ASSERT_EQ(ase_tes_score(31, 9, 40, &tes), ASE_OK);
  EXPECT_EQ(tes, 0.55);
  EXPECT_EQ(ase_tes_score(1, 1, 0, &tes), ASE_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(ase_last_error()), 0u);
  EXPECT_EQ(ase_tes_score(1, 1, 4, nullptr), ASE_ERR_INVALID_ARGUMENT);
  ase_string_free(nullptr);
}

TEST_F(CApi, BuildSummary) {
  EXPECT_EQ(summary_["papers"], 30);
  EXPECT_EQ(summary_["summary"], "30 papers, 0 dedup pairs");
  EXPECT_EQ(summary_["coverage"]["full_abstract"], 30);
  EXPECT_LT(summary_["coverage"]["mechanism"].get<int>(), 30);
  std::uint64_t n = 0;
  ASSERT_EQ(ase_index_size(index_, &n), ASE_OK);
  EXPECT_EQ(n, 30u);
}

TEST_F(CApi, PaperAndSearch) {
  char* paper = nullptr;
  ASSERT_EQ(ase_index_paper(index_, "toy_04", &paper), ASE_OK);
  EXPECT_EQ(take_json(paper)["paper_id"], "toy_04");
  EXPECT_EQ(ase_index_paper(index_, "missing", &paper), ASE_ERR_NOT_FOUND);
  EXPECT_NE(std::string(ase_last_error()).find("missing"), std::string::npos);

  for (const char* alg : {"naive_cosine", "knn_kmeans", "naive_farthest", "farthest_neighbor",
                          "lexical_baseline"}) {
    Json config = {{"algorithm", alg}, {"k_clusters", 3}, {"result_size", 5}, {"rng_seed", 7}};
    auto a = search("toy_00", config);
    auto b = search("toy_00", config);
    EXPECT_EQ(a, b) << alg;
    EXPECT_FALSE(a["results"].empty()) << alg;
    for (const auto& r : a["results"]) EXPECT_NE(r["paper_id"], "toy_00");
  }

  char* out = nullptr;
  EXPECT_EQ(ase_index_search(index_, "nope", nullptr, &out), ASE_ERR_NOT_FOUND);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(ase_index_search(index_, "toy_00", "{\"pool_size\": 0}", &out),
            ASE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ase_index_search(index_, "toy_00", "{oops", &out), ASE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ase_index_search(nullptr, "toy_00", nullptr, &out), ASE_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, AppHandleAndSessions) {
  const auto log = scratch("votes.jsonl");
  ase_app* app = nullptr;
  ASSERT_EQ(ase_app_open(index_path_.c_str(), log.c_str(), &app), ASE_OK) << ase_last_error();
  int status = 0;
  char* resp = nullptr;
  ASSERT_EQ(ase_app_handle(app, "GET", "/v1/health", nullptr, &status, &resp), ASE_OK);
  EXPECT_EQ(status, 200);
  take_json(resp);

  char* session = nullptr;
  Json req = {{"seed_paper_id", "toy_01"}, {"config", {{"k_clusters", 3}}}, {"seed", 3}};
  ASSERT_EQ(ase_app_create_session(app, req.dump().c_str(), &session), ASE_OK) << ase_last_error();
  Json view = take_json(session);
  ASSERT_FALSE(view["results"].empty());

  Json vote = {{"session_id", view["session_id"]}, {"user_id", "u1"},
               {"paper_id", view["results"][0]["paper_id"]}, {"if_useful", "useful"},
               {"if_interesting", "maybe_interesting"}};
  ASSERT_EQ(ase_app_handle(app, "POST", "/v1/votes", vote.dump().c_str(), &status, &resp), ASE_OK);
  EXPECT_EQ(status, 200);
  take_json(resp);
  ASSERT_EQ(ase_app_handle(app, "GET", "/v1/papers/zzz", nullptr, &status, &resp), ASE_OK);
  EXPECT_EQ(status, 404);
  EXPECT_EQ(take_json(resp)["error"]["code"], "not_found");
  ase_app_close(app);

  char* report = nullptr;
  ASSERT_EQ(ase_report_votes(log.c_str(), &report), ASE_OK) << ase_last_error();
  Json r = take_json(report);
  EXPECT_EQ(r["points"]["ES"].get<int>() + r["points"]["AS"].get<int>(), 1);
  std::filesystem::remove(log);
  EXPECT_EQ(ase_report_votes(log.c_str(), &report), ASE_ERR_IO);
}

TEST(CApiErrors, BuildAndOpenFailures) {
  char* summary = nullptr;
  const auto out = scratch("never.idx");
  EXPECT_EQ(ase_build_index("/nonexistent/corpus.jsonl", (kToyDir / "embeddings.txt").c_str(),
                            out.c_str(), nullptr, &summary),
            ASE_ERR_IO);
  EXPECT_NE(std::string(ase_last_error()).find("corpus"), std::string::npos);
  EXPECT_EQ(ase_build_index((kToyDir / "corpus.jsonl").c_str(),
                            (kToyDir / "embeddings.txt").c_str(), out.c_str(),
                            "{\"expected_dim\": 7}", &summary),
            ASE_ERR_FORMAT);
  ase_index* index = nullptr;
  EXPECT_EQ(ase_index_open("/nonexistent.idx", &index), ASE_ERR_IO);
  EXPECT_EQ(index, nullptr);

  // Bumped version tag.
  const auto path = scratch("bumped.idx");
  ASSERT_EQ(ase_build_index((kToyDir / "corpus.jsonl").c_str(),
                            (kToyDir / "embeddings.txt").c_str(), path.c_str(), nullptr, nullptr),
            ASE_OK);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8);
    f.put(static_cast<char>(2));
  }
  EXPECT_EQ(ase_index_open(path.c_str(), &index), ASE_ERR_VERSION);
  std::filesystem::remove(path);
}

std::string canonical(const std::string& title) {
  std::string out;
  for (unsigned char c : title) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    if (std::isspace(c) && !out.empty() && out.back() != ' ') out.push_back(' ');
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

TEST(CApiErrors, DuplicateTitleCorpusReportsOnePair) {
  const auto corpus = scratch("dup_corpus.jsonl");
  std::size_t expected_pairs = 0;
  {
    std::ifstream in(kToyDir / "corpus.jsonl");
    std::ofstream out(corpus);
    std::string line;
    std::string first;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
      out << line << "\n";
      if (first.empty()) first = line;
      if (seen[canonical(Json::parse(line)["title"])]++ > 0) ++expected_pairs;
    }
    Json copy = Json::parse(first);
    copy["paper_id"] = "toy_copy";
    copy["title"] = "  " + copy["title"].get<std::string>() + "!";
    out << copy.dump() << "\n";
    if (seen[canonical(copy["title"])]++ > 0) ++expected_pairs;
  }
  ASSERT_EQ(expected_pairs, 1u);
  const auto out = scratch("dup.idx");
  char* summary = nullptr;
  ASSERT_EQ(ase_build_index(corpus.c_str(), (kToyDir / "embeddings.txt").c_str(), out.c_str(),
                            nullptr, &summary),
            ASE_OK)
      << ase_last_error();
  Json s = take_json(summary);
  EXPECT_EQ(s["dedup_pairs"].size(), expected_pairs);
  EXPECT_EQ(s["papers"], 30);
  EXPECT_EQ(s["summary"], "30 papers, 1 dedup pairs");

  ASSERT_EQ(ase_build_index(corpus.c_str(), (kToyDir / "embeddings.txt").c_str(), out.c_str(),
                            "{\"deduplicate\": false}", &summary),
            ASE_OK);
  EXPECT_EQ(take_json(summary)["papers"], 31);
  std::filesystem::remove(corpus);
  std::filesystem::remove(out);
}

}  // namespace
