// Copyright 2026 The CoopNav Authors
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

// Drives the command-line tool as a subprocess and checks exit codes.
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string output;
};

Result Cli(const std::string& args) {
  const std::string cmd =
      std::string(COOPNAV_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "coopnav_cli_test";
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Conf(const char* name) const {
    return std::string(COOPNAV_SCENARIO_DIR) + "/" + name + ".conf";
  }
  fs::path dir_;
};

TEST_F(CliTest, RunSucceeds) {
  const Result r = Cli("run --config " + Conf("open_facilitating") +
                       " --out " + (dir_ / "run").string());
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "run" / "trace.jsonl"));
  EXPECT_TRUE(fs::exists(dir_ / "run" / "summary.json"));
}

TEST_F(CliTest, InvalidConfigExitsTwoNamingField) {
  const Result r = Cli("run --config " + Conf("open_minimal") +
                       " --override world.corridor_width=-1 --out " +
                       (dir_ / "bad").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("world.corridor_width"), std::string::npos)
      << r.output;
}

TEST_F(CliTest, BadFlagExitsTwo) {
  EXPECT_EQ(Cli("run --bogus").code, 2);
  EXPECT_EQ(Cli("run --config " + Conf("open_minimal") + " --gamma 1.5")
                .code,
            2);
}

TEST_F(CliTest, TimeoutExitsThree) {
  const Result r = Cli("run --config " + Conf("open_minimal") +
                       " --override sim.max_ticks=5 --out " +
                       (dir_ / "slow").string());
  EXPECT_EQ(r.code, 3) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "slow" / "trace.jsonl"));
}

TEST_F(CliTest, MissingFilesExitFour) {
  EXPECT_EQ(Cli("run --config /nonexistent.conf").code, 4);
  EXPECT_EQ(Cli("plotdata --trace /nonexistent/trace.jsonl --out " +
                (dir_ / "p").string())
                .code,
            4);
  EXPECT_EQ(Cli("gamma-sweep --suite " + (dir_ / "none").string()).code, 4);
}

TEST_F(CliTest, SuiteThenSweepThenPlot) {
  const std::string suite = (dir_ / "suite").string();
  Result r = Cli("suite --out " + suite);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("Narrow"), std::string::npos);
  r = Cli("gamma-sweep --suite " + suite + " --gamma 0.5,0.9,0.98 --out " +
          (dir_ / "sweep.csv").string());
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "sweep.csv"));
  r = Cli("plotdata --trace " + suite + "/narrow_minimal/trace.jsonl --svg --out " +
          (dir_ / "plot").string());
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "plot" / "trajectories.svg"));
}

}  // namespace
