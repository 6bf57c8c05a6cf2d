// Copyright 2026 The Spreadhedge Authors
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

#include "spreadhedge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spreadhedge/json_io.hpp"

namespace spreadhedge::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spreadhedge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spreadhedge_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                 ->current_test_info()
                                                 ->name()));
    fs::create_directories(dir_);
    const auto tree = testing::B1Tree();
    tree_ = Write("tree.json", dump_tree(tree));
    claim_ = Write("claim.json", R"({"payoffs":{"1":20,"2":0}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
  std::string tree_, claim_;
};

TEST_F(CliTest, PriceText) {
  const auto r = Cli({"price", "--tree", tree_, "--claim", claim_, "--lambda", "0.1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("primal 15.5556"), std::string::npos);
  EXPECT_NE(r.out.find("dual 15.5556"), std::string::npos);
}

TEST_F(CliTest, PriceJsonToFile) {
  const std::string out = (dir_ / "out.json").string();
  const auto r = Cli({"price", "--tree", tree_, "--claim", claim_, "--lambda", "0.1", "--format",
                      "json", "--output", out});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(read_file(out));
  EXPECT_NEAR(j.at("primal_value").get<double>(), 140.0 / 9.0, 1e-9);
}

TEST_F(CliTest, VerifyCps) {
  const auto good = Write("good.json", R"({"z0":{"0":1,"1":1,"2":1},
                                            "z1":{"0":100,"1":120,"2":80}})");
  const auto r = Cli({"verify-cps", "--tree", tree_, "--cps", good, "--lambda", "0.1"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto bad = Write("bad.json", R"({"z0":{"0":1,"1":1,"2":1},
                                          "z1":{"0":100,"1":200,"2":80}})");
  const auto b = Cli({"verify-cps", "--tree", tree_, "--cps", bad, "--lambda", "0.1"});
  EXPECT_EQ(b.code, kExitDomain);
  EXPECT_NE(b.out.find("InvalidCps"), std::string::npos);
}

TEST_F(CliTest, GenTreeIsValidAndSeeded) {
  const auto a = Cli({"gen-tree", "--seed", "1", "--depth", "3", "--branching", "2"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const auto tree = load_tree(a.out);
  EXPECT_EQ(tree.depth(), 3);
  EXPECT_EQ(Cli({"gen-tree", "--seed", "1", "--depth", "3", "--branching", "2"}).out, a.out);
  ::setenv("SPREADHEDGE_SEED", "2", 1);
  const auto env = Cli({"gen-tree", "--seed", "1", "--depth", "3", "--branching", "2"});
  ::unsetenv("SPREADHEDGE_SEED");
  EXPECT_EQ(env.out, Cli({"gen-tree", "--seed", "2", "--depth", "3", "--branching", "2"}).out);
}

TEST_F(CliTest, InputErrorsExitOne) {
  EXPECT_EQ(Cli({"price", "--tree", "/nonexistent.json", "--claim", claim_}).code, kExitInput);
  const auto broken = Write("broken.json", "{");
  const auto r = Cli({"price", "--tree", broken, "--claim", claim_});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(Cli({"price", "--tree", tree_, "--claim", claim_, "--lambda", "1.5"}).code,
            kExitInput);
  EXPECT_EQ(Cli({"price", "--bogus"}).code, kExitInput);
  EXPECT_EQ(Cli({"price", "--tree", tree_, "--claim", claim_, "--format", "xml"}).code,
            kExitInput);
}

TEST_F(CliTest, DomainFindingExitsTwoWithOneReason) {
  const auto tree = Write("rising.json", dump_tree(testing::RisingPath()));
  const auto claim = Write("one.json", R"({"payoffs":{"1":1}})");
  const auto r = Cli({"price", "--tree", tree, "--claim", claim, "--lambda", "0.1", "--format",
                      "json"});
  EXPECT_EQ(r.code, kExitDomain);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("reason"), "DualInfeasible");
}

TEST_F(CliTest, CheckStrategyReasons) {
  const auto idle = Write("idle.json", "{}");
  const auto r = Cli({"check-strategy", "--tree", tree_, "--claim", claim_, "--strategy", idle,
                      "--lambda", "0.1"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.out.find("DoesNotSuperReplicate"), std::string::npos);
}

TEST_F(CliTest, ReportCurve) {
  const auto r = Cli({"report", "--tree", tree_, "--claim", claim_, "--lambdas",
                      "0,0.05,0.1,0.2,0.3", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(Cli({"--help"}).code, kExitOk); }

TEST_F(CliTest, BinaryIsDeterministic) {
  const std::string bin = SPREADHEDGE_CLI_PATH;
  const auto run = [&](const std::string& out) {
    const std::string cmd = bin + " price --tree " + tree_ + " --claim " + claim_ +
                            " --lambda 0.1 --format json --output " + out;
    return std::system(cmd.c_str());
  };
  const std::string a = (dir_ / "a.json").string(), b = (dir_ / "b.json").string();
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(read_file(a), read_file(b));
}

}  // namespace
}  // namespace spreadhedge::cli
