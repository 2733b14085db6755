// Copyright 2026 The Timbre Align Authors. All Rights Reserved.
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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace timbre {
namespace {

using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { ::unsetenv("TIMBRE_ALIGN_THREADS"); }
  TempDir dir_;
};

TEST_F(CliTest, EvalWritesReportCsvAndPlot) {
  testing::write_tone_corpus(dir_ / "corpus", {4, 5});
  const auto r = run({"eval", "--manifests", (dir_ / "corpus").string(), "--features", "mfcc,mss",
                      "--distances", "l2,poincare", "--out", (dir_ / "r.json").string(), "--csv",
                      (dir_ / "r.csv").string(), "--plot", (dir_ / "r.svg").string(),
                      "--threads", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("2 dataset(s), 8 configuration(s), 40 score slice(s)"), std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir_ / "r.json"));
  EXPECT_TRUE(report["mss"]["avg"]["poincare"]["ndcg"]["__aggregate__"].is_number());
  EXPECT_NE(slurp(dir_ / "r.csv").find("mfcc,dynamic,l2,mae,__aggregate__,"), std::string::npos);
  EXPECT_NE(slurp(dir_ / "r.svg").find("</svg>"), std::string::npos);

  const auto p = run({"plot", (dir_ / "r.json").string(), "--out", (dir_ / "p.svg").string()});
  EXPECT_EQ(p.code, cli::kExitOk) << p.err;
  EXPECT_EQ(slurp(dir_ / "p.svg"), slurp(dir_ / "r.svg"));
}

TEST_F(CliTest, MalformedManifestNamesFileAndField) {
  std::filesystem::create_directories(dir_ / "bad");
  write(dir_ / "bad" / "broken.json",
        R"({"name": "broken", "audio": ["a.wav", "b.wav"], "ratings": [[0, 5, 1.0]]})");
  const auto r = run({"eval", "--manifests", (dir_ / "bad").string(), "--features", "mfcc",
                      "--out", (dir_ / "r.json").string()});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("broken.json"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("ratings[0]"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir_ / "r.json"));
}

TEST_F(CliTest, PerfectEmbeddingScoresZeroMae) {
  std::filesystem::create_directories(dir_ / "m");
  write(dir_ / "m" / "sq.json",
        R"({"name": "sq", "audio": ["a.wav", "b.wav", "c.wav", "d.wav"],
            "ratings": [[0, 1, 1], [0, 2, 2], [0, 3, 1], [1, 2, 1], [1, 3, 2], [2, 3, 1]]})");
  testing::EmbeddingWriter w(dir_ / "emb");
  const std::vector<std::vector<double>> pts = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const char* names[] = {"a.wav", "b.wav", "c.wav", "d.wav"};
  for (int i = 0; i < 4; ++i) {
    w.add(std::string("sq/") + names[i], "unit", Tensor({2}, pts[i]), std::nullopt);
  }
  w.finish();
  const auto r = run({"eval", "--manifests", (dir_ / "m").string(), "--embeddings",
                      (dir_ / "emb").string(), "--distances", "cosine", "--out",
                      (dir_ / "r.json").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto report = nlohmann::json::parse(slurp(dir_ / "r.json"));
  EXPECT_EQ(report["unit"]["dynamic"]["cosine"]["mae"]["__aggregate__"].get<double>(), 0.0);
  EXPECT_EQ(report["unit"]["dynamic"]["cosine"]["kendall"]["__aggregate__"].get<double>(), 1.0);
}

TEST_F(CliTest, WarningsGiveExitOne) {
  testing::write_tone_corpus(dir_ / "corpus", {4});
  testing::EmbeddingWriter w(dir_ / "emb");
  w.add("set0/" + std::string("missing.wav"), "nothing", Tensor({2}, {1.0, 2.0}), std::nullopt);
  w.finish();
  const auto r = run({"eval", "--manifests", (dir_ / "corpus").string(), "--embeddings",
                      (dir_ / "emb" / "manifest.json").string(), "--out",
                      (dir_ / "r.json").string()});
  EXPECT_EQ(r.code, cli::kExitWarnings);
  EXPECT_NE(r.err.find("warning(s)"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "r.json"));
}

TEST_F(CliTest, RejectsBadArguments) {
  testing::write_tone_corpus(dir_ / "corpus", {3});
  const std::string m = (dir_ / "corpus").string();
  EXPECT_EQ(run({"eval", "--manifests", m}).code, cli::kExitInputError);
  EXPECT_EQ(run({"eval", "--manifests", m, "--features", "jtfs"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"eval", "--manifests", m, "--features", "mfcc", "--margin", "1.5"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run({"eval", "--manifests", m, "--features", "mfcc", "--distances", "l3"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run({"eval", "--features", "mfcc"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"plot", (dir_ / "none.json").string(), "--out", "x.svg"}).code,
            cli::kExitInputError);
}

TEST_F(CliTest, SummarizeTable) {
  testing::write_tone_corpus(dir_ / "corpus", {5});
  const auto r = run({"summarize", "--manifests", (dir_ / "corpus").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("loudness (LUFS)"), std::string::npos);
  EXPECT_NE(r.out.find("set0"), std::string::npos);
}

TEST_F(CliTest, SummarizeEmptyCorpus) {
  const auto r = run({"summarize", "--manifests", (dir_ / "nothing").string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

}  // namespace
}  // namespace timbre
