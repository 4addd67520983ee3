// Copyright 2026 The actag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "actag/text.h"

namespace actag::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSample = ACTAG_SAMPLE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "actag");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("actag_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kUsageError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kUsageError);
  EXPECT_EQ(Invoke({"--help"}).code, kOk);
  const Result missing = Invoke({"tokenize", "/nonexistent/input.txt"});
  EXPECT_EQ(missing.code, kUsageError);
  EXPECT_NE(missing.err.find("/nonexistent/input.txt"), std::string::npos);
  EXPECT_EQ(Invoke({"--config", kSample + "/config.json", "guess-train", "--suffix-limit", "0",
                 kSample + "/corpus/001.txt"})
                .code,
            kUsageError);
}

TEST(CliTest, Tokenize) {
  const fs::path dir = TempDir("tokenize");
  write_file(dir / "in.txt", "El 12.05.93 vino. Luego");
  const Result r = Invoke({"tokenize", (dir / "in.txt").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("1\t3\tdate\t12.05.93\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2\t18\tword\tLuego\n"), std::string::npos) << r.out;
}

TEST(CliTest, TrainTagEval) {
  const fs::path dir = TempDir("train");
  const std::string config = kSample + "/config.json";
  Result r = Invoke({"--config", config, "train", "--schedule", "1,2", "--iterations", "1", "--out",
                  dir.string(), kSample + "/corpus/001.txt", kSample + "/corpus/002.txt"});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const char* f : {"model-untrained.hmm", "model-001-001.hmm", "model-001-002.hmm",
                        "curve.txt", "curve.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(read_file(dir / "curve.txt"), r.out);

  r = Invoke({"--config", config, "tag", "--model", (dir / "model-001-002.hmm").string(),
           kSample + "/test.txt"});
  ASSERT_EQ(r.code, kOk) << r.err;
  write_file(dir / "out.txt", r.out);

  r = Invoke({"eval", "--exclude-tags", "FW,NP", (dir / "out.txt").string(),
           kSample + "/test.gold"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("errors: "), std::string::npos);
  EXPECT_NE(r.out.find("accuracy: "), std::string::npos);

  r = Invoke({"--config", config, "train", "--schedule", "1,5", "--out", dir.string(),
           kSample + "/corpus/001.txt"});
  EXPECT_EQ(r.code, kUsageError);
}

TEST(CliTest, DataErrors) {
  const fs::path dir = TempDir("data");
  write_file(dir / "bad.hmm", "ACTAG-HMM 1\ngarbage\n");
  write_file(dir / "old.hmm", "ACTAG-HMM 0\n");
  write_file(dir / "in.txt", "hola");
  const std::string config = kSample + "/config.json";
  EXPECT_EQ(Invoke({"--config", config, "tag", "--model", (dir / "bad.hmm").string(),
                 (dir / "in.txt").string()})
                .code,
            kDataError);
  EXPECT_EQ(Invoke({"--config", config, "tag", "--model", (dir / "old.hmm").string(),
                 (dir / "in.txt").string()})
                .code,
            kDataError);
  write_file(dir / "a.txt", "x_A y_B\n");
  write_file(dir / "b.txt", "x_A z_B\n");
  EXPECT_EQ(Invoke({"eval", (dir / "a.txt").string(), (dir / "b.txt").string()}).code, kDataError);
}

TEST(CliTest, GuessTrainAndSuffixStats) {
  const fs::path dir = TempDir("guess");
  const std::string config = kSample + "/config.json";
  Result r = Invoke({"--config", config, "guess-train", "--suffix-limit", "3", "--out",
                  (dir / "learned.txt").string(), kSample + "/corpus/001.txt"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(read_file(dir / "learned.txt").starts_with("# learned\n"));
  r = Invoke({"--config", config, "suffix-stats", kSample + "/suffixes.txt",
           (dir / "learned.txt").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("Tags per suffix"), std::string::npos);
  EXPECT_NE(r.out.find("learned"), std::string::npos);
}

}  // namespace
}  // namespace actag::cli
