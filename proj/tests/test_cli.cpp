// Copyright 2026 The vecmap Authors
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

#include "cli.hpp"

#include "vecmap/matching.hpp"
#include "vecmap/scene_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vecmap
{
namespace
{

namespace fs = std::filesystem;

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("vecmap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string & name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, HelpAndUsageErrors)
{
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({"gen", "--help"}).code, cli::kOk);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  const auto r = run({"gen", "--out", p("g"), "--bogus-flag"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"perturb", "--in", p("g"), "--out", p("o"), "--mode", "sideways"}).code, cli::kUsage);
  EXPECT_EQ(run({"demo", "transformer"}).code, cli::kUsage);
}

TEST_F(CliTest, GenIsByteIdenticalAcrossRuns)
{
  ASSERT_EQ(run({"gen", "--seed", "7", "--frames", "3", "--out", p("a")}).code, cli::kOk);
  ASSERT_EQ(run({"gen", "--seed", "7", "--frames", "3", "--out", p("b")}).code, cli::kOk);
  for (const auto * f : {"frame_0000.json", "frame_0001.json", "frame_0002.json"}) {
    const std::string a = slurp(dir_ / "a" / f);
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir_ / "b" / f));
  }
  EXPECT_NE(slurp(dir_ / "a" / "frame_0000.json"), slurp(dir_ / "a" / "frame_0001.json"));
}

TEST_F(CliTest, GenIntoUnwritablePathFails)
{
  std::ofstream(p("blocker")) << "x";
  EXPECT_EQ(run({"gen", "--out", p("blocker/sub")}).code, cli::kUnwritable);
}

TEST_F(CliTest, EvalMatchesLibraryByteForByte)
{
  ASSERT_EQ(run({"gen", "--seed", "3", "--frames", "4", "--out", p("gt")}).code, cli::kOk);
  ASSERT_EQ(
    run({"perturb", "--in", p("gt"), "--out", p("pr"), "--sigma", "0.3", "--drop-rate", "0.1",
         "--spurious-rate", "0.2", "--seed", "11"})
      .code,
    cli::kOk);
  ASSERT_EQ(run({"eval", "--pred", p("pr"), "--gt", p("gt"), "--out", p("r.json")}).code, cli::kOk);
  ASSERT_EQ(run({"eval", "--pred", p("pr"), "--gt", p("gt"), "--out", p("again.json")}).code, cli::kOk);

  const auto report = evaluate(read_scene_dir(dir_ / "pr"), read_scene_dir(dir_ / "gt"));
  EXPECT_EQ(slurp(p("r.json")), emit_report_json(report, 4));
  EXPECT_EQ(slurp(p("r.csv")), emit_report_csv(report));
  EXPECT_EQ(slurp(p("r.json")), slurp(p("again.json")));

  ASSERT_EQ(
    run({"eval", "--pred", p("pr"), "--gt", p("gt"), "--out", p("only.csv"), "--format", "csv"}).code,
    cli::kOk);
  EXPECT_EQ(slurp(p("only.csv")), emit_report_csv(report));
}

TEST_F(CliTest, EvalErrorCodes)
{
  ASSERT_EQ(run({"gen", "--frames", "2", "--out", p("gt")}).code, cli::kOk);
  ASSERT_EQ(run({"gen", "--frames", "1", "--out", p("pr")}).code, cli::kOk);
  const auto missing = run({"eval", "--pred", p("pr"), "--gt", p("gt"), "--out", p("r.json")});
  EXPECT_EQ(missing.code, cli::kMissingFrame);
  EXPECT_NE(missing.err.find("frame_0001"), std::string::npos) << missing.err;

  std::ofstream(dir_ / "pr" / "frame_0001.json") << "{ not json";
  EXPECT_EQ(run({"eval", "--pred", p("pr"), "--gt", p("gt"), "--out", p("r.json")}).code, cli::kMalformed);
}

void write_pair(const fs::path & dir)
{
  Scene pred;
  pred.frame_id = "x";
  pred.instances.push_back({MapClass::divider, {{0, 0}, {1, 1}, {2, 0}}, Topology::open, 0.9});
  Scene gt = pred;
  gt.instances[0].points = {{0, 0}, {1, 0}, {2, 0}};
  gt.instances[0].confidence.reset();
  write_scene_file(dir / "pred.json", pred);
  write_scene_file(dir / "gt.json", gt);
}

TEST_F(CliTest, LossOnHandFixture)
{
  write_pair(dir_);
  const auto r = run({"loss", "--pred", p("pred.json"), "--gt", p("gt.json"), "--grad"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["total"]["vddl"].get<double>(), 1.17157, 1e-5);
  EXPECT_NEAR(doc["total"]["l1"].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(doc["instances"][0]["grad"].size(), 3u);

  const auto pure_l1 = run({"loss", "--pred", p("pred.json"), "--gt", p("gt.json"), "--lambda-vddl", "0"});
  ASSERT_EQ(pure_l1.code, cli::kOk);
  const auto d2 = nlohmann::json::parse(pure_l1.out);
  EXPECT_NEAR(d2["total"]["combined"].get<double>(), 5.0 * d2["total"]["l1"].get<double>(), 1e-15);
}

TEST_F(CliTest, LossUnpairable)
{
  write_pair(dir_);
  Scene extra = read_scene_file(dir_ / "gt.json");
  extra.instances.push_back(extra.instances[0]);
  write_scene_file(dir_ / "gt2.json", extra);
  EXPECT_EQ(run({"loss", "--pred", p("pred.json"), "--gt", p("gt2.json")}).code, cli::kUnpairable);
}

TEST_F(CliTest, GradcheckPasses)
{
  const auto r = run({"gradcheck", "--seed", "0", "--trials", "100", "--dump", p("worst.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_FALSE(fs::exists(p("worst.json")));
  EXPECT_EQ(run({"gradcheck", "--identical", "--trials", "20"}).code, cli::kOk);
}

TEST_F(CliTest, DemosPassAndAreDeterministic)
{
  for (const auto * block : {"iia", "mpn"}) {
    const auto a = run({"demo", block, "--seed", "5"});
    const auto b = run({"demo", block, "--seed", "5"});
    EXPECT_EQ(a.code, cli::kOk) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("hash: "), std::string::npos);
  }
  EXPECT_NE(run({"demo", "iia", "--seed", "5"}).out, run({"demo", "iia", "--seed", "6"}).out);
  EXPECT_EQ(run({"demo", "mpn", "--layers", "3", "--height", "9", "--width", "13"}).code, cli::kOk);
}

TEST_F(CliTest, SweepWritesTable)
{
  const auto r = run({"sweep", "--trials", "3", "--sigmas", "0.05,0.4", "--out", p("s.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string csv = slurp(p("s.csv"));
  EXPECT_EQ(csv.rfind("sigma,mean_vddl,mean_map,mean_acd,trials\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace vecmap
