/*
 * Copyright 2026 The remsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(REMSIM_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("remsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "small.ini") << "[experiment]\nnetwork = 10x10x1-4c3-2s-6o\nimages = 2\ntimesteps = 5\n"
                                         "[memory]\nram_bytes = 8192\nrom_bytes = 8192\n"
                                         "[baseline]\ntech = rmram\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunWritesReportCsvAndJson) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(run_cli("run " + (dir_ / "small.ini").string() + " -o " + out.string() + " --json", dir_ / "log"), 0)
      << slurp(dir_ / "log");
  EXPECT_TRUE(fs::exists(out / "report.txt"));
  EXPECT_TRUE(fs::exists(out / "stats.json"));
  const std::string csv = slurp(out / "stats.csv");
  EXPECT_EQ(csv.rfind("scope,pe,layer", 0), 0u);
  EXPECT_NE(csv.find("\ntotal,"), std::string::npos);
}

TEST_F(Cli, RunOptionsDoNotChangeCsv) {
  const std::string cfg = (dir_ / "small.ini").string();
  ASSERT_EQ(run_cli("run " + cfg + " -o " + (dir_ / "a").string(), dir_ / "log"), 0);
  ASSERT_EQ(run_cli("run " + cfg + " -o " + (dir_ / "b").string() + " --threads 3 --pe-order shuffled", dir_ / "log"),
            0);
  EXPECT_EQ(slurp(dir_ / "a" / "stats.csv"), slurp(dir_ / "b" / "stats.csv"));
}

TEST_F(Cli, AreaPerfAndSweep) {
  const std::string cfg = (dir_ / "small.ini").string();
  const std::string out = (dir_ / "o").string();
  ASSERT_EQ(run_cli("area " + cfg + " -o " + out, dir_ / "log"), 0);
  EXPECT_NE(slurp(dir_ / "o" / "area.txt").find("SRAM / R-SRAM"), std::string::npos);
  ASSERT_EQ(run_cli("perf " + cfg + " -o " + out, dir_ / "log"), 0);
  EXPECT_NE(slurp(dir_ / "o" / "perf.txt").find("speedup"), std::string::npos);
  ASSERT_EQ(run_cli("sweep " + cfg + " -o " + out + " --fp 0.5,1 --tech rsram", dir_ / "log"), 0);
  const std::string sw = slurp(dir_ / "o" / "sweep.csv");
  EXPECT_EQ(std::count(sw.begin(), sw.end(), '\n'), 3);
}

TEST_F(Cli, ConfigErrorsExitWithOne) {
  std::ofstream(dir_ / "bad.ini") << "[experiment]\nnetwork = 8x8x1-4o\nfp = 1.5\n";
  EXPECT_EQ(run_cli("run " + (dir_ / "bad.ini").string() + " -o " + dir_.string(), dir_ / "log"), 1);
  EXPECT_NE(slurp(dir_ / "log").find("line 3: [experiment] fp = '1.5': out of range (0, 1]"), std::string::npos)
      << slurp(dir_ / "log");
  EXPECT_EQ(run_cli("run " + (dir_ / "missing.ini").string(), dir_ / "log"), 1);
  EXPECT_EQ(run_cli("frobnicate", dir_ / "log"), 1);
  EXPECT_EQ(run_cli("run " + (dir_ / "small.ini").string() + " --mode sideways -o " + dir_.string(), dir_ / "log"),
            1);
  EXPECT_EQ(run_cli("sweep " + (dir_ / "small.ini").string() + " --fp 0 -o " + dir_.string(), dir_ / "log"), 1);
}

TEST_F(Cli, RuntimeErrorsExitWithTwo) {
  std::ofstream(dir_ / "cifar.ini") << "[experiment]\nnetwork = 32x32x3-10o\ndataset = cifar10\n"
                                       "cifar_batch = nothing.bin\n";
  EXPECT_EQ(run_cli("run " + (dir_ / "cifar.ini").string() + " -o " + dir_.string(), dir_ / "log"), 2);
}

TEST_F(Cli, ShippedConfigsRunArea) {
  for (const auto& e : fs::directory_iterator(REMSIM_CONFIG_DIR)) {
    if (e.path().extension() != ".ini") continue;
    EXPECT_EQ(run_cli("area " + e.path().string() + " -o " + dir_.string(), dir_ / "log"), 0) << e.path();
  }
}
