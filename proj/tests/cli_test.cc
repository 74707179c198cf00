// Copyright 2026 The gradmarket Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int Cli(const std::string& args) {
  const std::string cmd = std::string(GRADMARKET_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("gradmarket_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, RunIsDeterministic) {
  const fs::path dir = Scratch("run");
  ASSERT_EQ(Cli("run --seed 3 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(Cli("run --seed 3 --out " + (dir / "b").string()), 0);
  const std::string a = Slurp(dir / "a" / "report.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, Slurp(dir / "b" / "report.json"));
}

TEST(CliTest, ConfigFile) {
  const fs::path dir = Scratch("config");
  std::ofstream(dir / "c.json") << R"({"adversary": {"malicious_dos": [{"id": 1}]}})";
  ASSERT_EQ(Cli("run --config " + (dir / "c.json").string() + " --out " + dir.string()), 0);
  EXPECT_NE(Slurp(dir / "report.json").find("\"do.1\": \"rejected_validation\""), std::string::npos);
  std::ofstream(dir / "bad.json") << R"({"colour": "red"})";
  EXPECT_EQ(Cli("run --config " + (dir / "bad.json").string()), 2);
}

TEST(CliTest, TrainWritesCurve) {
  const fs::path dir = Scratch("train");
  std::ofstream(dir / "c.json") << R"({"iterations": 2})";
  ASSERT_EQ(Cli("train --config " + (dir / "c.json").string() + " --out " + dir.string()), 0);
  EXPECT_EQ(Slurp(dir / "training.csv").rfind("iteration,mse\n", 0), 0u);
  EXPECT_TRUE(fs::exists(dir / "model.json"));
  EXPECT_TRUE(fs::exists(dir / "report.json"));
}

TEST(CliTest, GasCompare) {
  const fs::path dir = Scratch("gas");
  ASSERT_EQ(Cli("gas-compare --baseline --out " + dir.string()), 0);
  const std::string gas = Slurp(dir / "gas.json");
  EXPECT_NE(gas.find("\"m\": 2400"), std::string::npos);
  EXPECT_NE(gas.find("submit_gradient"), std::string::npos);
}

TEST(CliTest, ErrorsAndSelftest) {
  EXPECT_EQ(Cli("run --config /nonexistent/c.json"), 2);
  EXPECT_NE(Cli("run --no-such-flag"), 0);
  EXPECT_NE(Cli(""), 0);
  EXPECT_EQ(Cli("selftest"), 0);
}

}  // namespace
