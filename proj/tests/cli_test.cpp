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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ase/ase.h"

namespace {

using Json = nlohmann::json;

const std::filesystem::path kToyDir = ASE_TOY_DIR;
const std::string kCli = ASE_CLI_PATH;

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ase_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / (name + "_" + std::to_string(std::random_device{}()));
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    index_ = new std::filesystem::path(scratch("toy.idx"));
    auto r = run("build-index --corpus " + (kToyDir / "corpus.jsonl").string() + " --embeddings " +
                 (kToyDir / "embeddings.txt").string() + " --out " + index_->string());
    ASSERT_EQ(r.exit_code, 0);
    build_output_ = new std::string(r.out);
  }
  static void TearDownTestSuite() {
    std::filesystem::remove(*index_);
    delete index_;
    delete build_output_;
  }

  static std::filesystem::path* index_;
  static std::string* build_output_;
};

std::filesystem::path* Cli::index_ = nullptr;
std::string* Cli::build_output_ = nullptr;

TEST_F(Cli, BuildIndexPrintsSummary) {
  EXPECT_NE(build_output_->find("30 papers, 0 dedup pairs"), std::string::npos) << *build_output_;
  EXPECT_NE(build_output_->find("mechanism: 25"), std::string::npos);
}

TEST_F(Cli, MissingCorpusFails) {
  auto r = run("build-index --corpus /nonexistent.jsonl --embeddings " +
               (kToyDir / "embeddings.txt").string() + " --out " + scratch("x.idx").string());
  EXPECT_EQ(r.exit_code, ASE_ERR_IO);
}

TEST_F(Cli, SearchPassesThroughToLibrary) {
  ase_index* index = nullptr;
  ASSERT_EQ(ase_index_open(index_->c_str(), &index), ASE_OK);
  struct Case {
    std::string flags;
    Json config;
  };
  const Case cases[] = {
      {"--algorithm knn_kmeans --near problem --far mechanism --k-clusters 3 --seed 5",
       {{"algorithm", "knn_kmeans"}, {"near_aspects", {"problem"}}, {"far_aspect", "mechanism"},
        {"k_clusters", 3}, {"rng_seed", 5}}},
      {"--algorithm lexical_baseline --result-size 10",
       {{"algorithm", "lexical_baseline"}, {"result_size", 10}}},
      {"--algorithm farthest_neighbor --k-clusters 2 --pool-size 20 --result-size 4 --seed 9 "
       "--reduce-mode nearest_to_centroid",
       {{"algorithm", "farthest_neighbor"}, {"k_clusters", 2}, {"pool_size", 20},
        {"result_size", 4}, {"rng_seed", 9}, {"reduce_mode", "nearest_to_centroid"}}},
      {"--algorithm naive_cosine --near problem:2 --near background:1 --far method "
       "--result-size 6",
       {{"algorithm", "naive_cosine"},
        {"near_aspects", {{{"aspect", "problem"}, {"weight", 2}}, "background"}},
        {"far_aspect", "method"}, {"result_size", 6}}},
  };
  for (const auto& c : cases) {
    auto r = run("search --index " + index_->string() + " --query toy_02 --json " + c.flags);
    ASSERT_EQ(r.exit_code, 0) << c.flags;
    char* direct = nullptr;
    ASSERT_EQ(ase_index_search(index, "toy_02", c.config.dump().c_str(), &direct), ASE_OK)
        << ase_last_error();
    EXPECT_EQ(Json::parse(r.out), Json::parse(direct)) << c.flags;
    ase_string_free(direct);
  }
  ase_index_close(index);
}

TEST_F(Cli, SearchConfigFileAndErrors) {
  const auto config = scratch("config.json");
  std::ofstream(config) << R"({"algorithm": "naive_farthest", "k_clusters": 3, "result_size": 5})";
  auto from_file = run("search --index " + index_->string() + " --query toy_00 --json --config " +
                       config.string());
  ASSERT_EQ(from_file.exit_code, 0);
  EXPECT_EQ(Json::parse(from_file.out)["config"]["algorithm"], "naive_farthest");
  auto overridden = run("search --index " + index_->string() + " --query toy_00 --json --config " +
                        config.string() + " --result-size 2");
  ASSERT_EQ(overridden.exit_code, 0);
  EXPECT_EQ(Json::parse(overridden.out)["results"].size(), 2u);
  std::filesystem::remove(config);

  EXPECT_EQ(run("search --index " + index_->string() + " --query nope").exit_code,
            ASE_ERR_NOT_FOUND);
  EXPECT_EQ(run("search --index " + index_->string() + " --query toy_00 --algorithm bogus")
                .exit_code,
            ASE_ERR_INVALID_ARGUMENT);
  EXPECT_NE(run("search --query toy_00").exit_code, 0);
  auto text = run("search --index " + index_->string() + " --query toy_00 --k-clusters 3");
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("toy_"), std::string::npos);
}

TEST_F(Cli, AbSessionIsDeterministicAndBlind) {
  const std::string args =
      "ab-session --index " + index_->string() + " --seed-paper toy_03 --k-clusters 3 --seed 4";
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  auto view = Json::parse(a.out);
  EXPECT_LE(view["results"].size(), 20u);
  EXPECT_EQ(a.out.find("engine"), std::string::npos);
  EXPECT_EQ(a.out.find("\"AS\""), std::string::npos);
  EXPECT_EQ(a.out.find("\"ES\""), std::string::npos);
}

TEST_F(Cli, ReportTesAndVotes) {
  auto tes = run("report --tes 31,9,40 --tes 37,3,40");
  ASSERT_EQ(tes.exit_code, 0);
  EXPECT_NE(tes.out.find("0.55"), std::string::npos);
  EXPECT_NE(tes.out.find("0.85"), std::string::npos);
  EXPECT_EQ(run("report --tes 1,2").exit_code, ASE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(run("report --votes /nonexistent.jsonl").exit_code, ASE_ERR_IO);

  const auto log = scratch("votes.jsonl");
  {
    std::ofstream out(log);
    for (const auto& [engine, useful] :
         {std::pair{"AS", "useful"}, {"AS", "not_useful"}, {"ES", "maybe_useful"}}) {
      static int n = 0;
      out << Json{{"test_id", 1},
                  {"seed_paper_id", "toy_00"},
                  {"SE", engine},
                  {"paper_id", "toy_0" + std::to_string(++n)},
                  {"if_useful", useful},
                  {"if_interesting", "interesting"},
                  {"user_id", "u"}}
                 .dump()
          << "\n";
    }
  }
  auto report = run("report --votes " + log.string());
  ASSERT_EQ(report.exit_code, 0);
  EXPECT_NE(report.out.find("50.0"), std::string::npos) << report.out;
  std::filesystem::remove(log);
}

}  // namespace
