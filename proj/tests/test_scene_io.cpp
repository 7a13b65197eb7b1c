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

#include "vecmap/scene_io.hpp"
#include "vecmap/synth.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vecmap
{
namespace
{

std::string slurp(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::filesystem::path kData = VECMAP_TEST_DATA_DIR;

Scene golden_scene()
{
  Scene s;
  s.frame_id = "golden_0000";
  s.instances.push_back({MapClass::divider, {{0, 0}, {1, 0.5}, {2, 0.25}}, Topology::open, std::nullopt});
  s.instances.push_back(
    {MapClass::pedestrian_crossing, {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, Topology::closed, 0.875});
  s.instances.push_back({MapClass::boundary, {{0.1, -2.5}, {0.3, 3.75}}, Topology::open, 0.1});
  return s;
}

void expect_same(const Scene & a, const Scene & b)
{
  EXPECT_EQ(a.frame_id, b.frame_id);
  EXPECT_EQ(a.extent.x_min, b.extent.x_min);
  EXPECT_EQ(a.extent.y_max, b.extent.y_max);
  ASSERT_EQ(a.instances.size(), b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    EXPECT_EQ(a.instances[i].label, b.instances[i].label);
    EXPECT_EQ(a.instances[i].topology, b.instances[i].topology);
    EXPECT_EQ(a.instances[i].confidence, b.instances[i].confidence);
    EXPECT_EQ(a.instances[i].points, b.instances[i].points);
  }
}

TEST(SceneIo, EmitMatchesGoldenFile)
{
  EXPECT_EQ(emit_scene(golden_scene()), slurp(kData / "golden_scene.json"));
}

TEST(SceneIo, GoldenFileParsesBack)
{
  const Scene s = read_scene_file(kData / "golden_scene.json");
  expect_same(s, golden_scene());
  EXPECT_EQ(emit_scene(s), slurp(kData / "golden_scene.json"));
}

TEST(SceneIo, RoundTripIsExactOnRandomScenes)
{
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SceneConfig cfg;
    cfg.seed = seed;
    const Scene gt = generate_scene(cfg);
    JitterConfig j;
    j.sigma = 0.3;
    j.seed = seed;
    j.spurious_rate = 0.5;
    const Scene pred = perturb(gt, j);
    for (const Scene * s : {&gt, &pred}) {
      const std::string text = emit_scene(*s);
      const Scene back = parse_scene(text);
      expect_same(back, *s);
      EXPECT_EQ(emit_scene(back), text);
    }
  }
}

std::string parse_error_of(std::string_view text)
{
  try {
    parse_scene(text, "case.json");
  } catch (const ParseError & ex) {
    return ex.what();
  }
  return "";
}

TEST(SceneIo, SyntaxErrorReportsLineAndColumn)
{
  const std::string msg = parse_error_of("{\n  \"format_version\": \"1\",\n  \"frame_id\": ,\n}");
  EXPECT_NE(msg.find("case.json"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(SceneIo, SchemaErrorsNameTheField)
{
  const std::string base = slurp(kData / "golden_scene.json");
  auto replaced = [&](std::string_view from, std::string_view to) {
    std::string s = base;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_NE(parse_error_of(replaced("\"class\": \"boundary\"", "\"class\": \"curb\"")).find("instances[2].class"), std::string::npos);
  EXPECT_NE(parse_error_of(replaced("\"topology\": \"closed\"", "\"topology\": 3")).find("instances[1].topology"), std::string::npos);
  EXPECT_NE(parse_error_of(replaced("[1, 0.5]", "[1]")).find("instances[0].points[1]"), std::string::npos);
  EXPECT_NE(parse_error_of(replaced("\"format_version\": \"1\"", "\"format_version\": \"9\"")).find("format_version"), std::string::npos);
  EXPECT_NE(parse_error_of(replaced("\"frame_id\": \"golden_0000\",", "")).find("frame_id"), std::string::npos);
  EXPECT_NE(parse_error_of(replaced("\"confidence\": 0.875", "\"confidence\": 1.5")).find("instances[1]"), std::string::npos);
}

TEST(SceneIo, MissingFileIsParseError)
{
  EXPECT_THROW(read_scene_file(kData / "does_not_exist.json"), ParseError);
}

EvalReport sample_report()
{
  std::vector<Scene> gts;
  std::vector<Scene> preds;
  for (std::uint64_t f = 0; f < 3; ++f) {
    SceneConfig cfg;
    cfg.seed = 100 + f;
    cfg.frame_id = "f" + std::to_string(f);
    gts.push_back(generate_scene(cfg));
    JitterConfig j;
    j.sigma = 0.25;
    j.seed = f;
    j.drop_rate = 0.2;
    j.spurious_rate = 0.3;
    preds.push_back(perturb(gts.back(), j));
  }
  return evaluate(preds, gts);
}

TEST(ReportFormat, JsonStructureCarriesProtocolConstants)
{
  const EvalReport r = sample_report();
  const auto doc = nlohmann::json::parse(emit_report_json(r, 3));
  EXPECT_EQ(doc["tool"], std::string(kToolVersion));
  EXPECT_EQ(doc["config"]["thresholds"], nlohmann::json({0.5, 1.0, 1.5}));
  EXPECT_EQ(doc["config"]["acd_threshold"], 1.5);
  EXPECT_EQ(doc["config"]["recall_samples"], 101);
  EXPECT_EQ(doc["config"]["frames"], 3);

  double map_sum = 0.0;
  for (const auto * name : {"divider", "pedestrian_crossing", "boundary"}) {
    const auto & c = doc["classes"][name];
    ASSERT_EQ(c["ap"].size(), 3u);
    const double mean =
      (c["ap"]["0.5"].get<double>() + c["ap"]["1.0"].get<double>() + c["ap"]["1.5"].get<double>()) / 3.0;
    EXPECT_DOUBLE_EQ(c["ap_mean"].get<double>(), mean);
    EXPECT_DOUBLE_EQ(doc["ap_per_class"][name].get<double>(), mean);
    map_sum += mean;
  }
  EXPECT_DOUBLE_EQ(doc["mAP"].get<double>(), map_sum / 3.0);
  EXPECT_DOUBLE_EQ(doc["mAP"].get<double>(), r.map);
}

TEST(ReportFormat, CsvHasOneRowPerClassAndThreshold)
{
  const std::string csv = emit_report_csv(sample_report());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "class,threshold,ap");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line.substr(0, line.rfind(',')));
  EXPECT_EQ(
    rows, (std::vector<std::string>{
            "divider,0.5", "divider,1.0", "divider,1.5", "pedestrian_crossing,0.5",
            "pedestrian_crossing,1.0", "pedestrian_crossing,1.5", "boundary,0.5", "boundary,1.0",
            "boundary,1.5"}));
}

TEST(ReportFormat, RepeatedEmissionIsByteIdentical)
{
  EXPECT_EQ(emit_report_json(sample_report(), 3), emit_report_json(sample_report(), 3));
  EXPECT_EQ(emit_report_csv(sample_report()), emit_report_csv(sample_report()));
}

}  // namespace
}  // namespace vecmap
