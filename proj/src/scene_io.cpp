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

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vecmap
{
namespace
{

using nlohmann::json;

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

[[noreturn]] void field_error(std::string_view source, const std::string & path, const std::string & what)
{
  throw ParseError(std::string(source) + ": field '" + path + "': " + what);
}

double number_at(const json & j, std::string_view source, const std::string & path)
{
  if (!j.is_number()) field_error(source, path, "expected a number");
  return j.get<double>();
}

std::string string_at(const json & j, std::string_view source, const std::string & path)
{
  if (!j.is_string()) field_error(source, path, "expected a string");
  return j.get<std::string>();
}

const json & member(const json & obj, const char * key, std::string_view source, const std::string & path)
{
  auto it = obj.find(key);
  if (it == obj.end()) field_error(source, path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string line_column(std::string_view text, std::size_t byte)
{
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string emit_scene(const Scene & scene)
{
  std::string out;
  out += "{\n";
  out += "  \"format_version\": " + json_string(kSceneFormatVersion) + ",\n";
  out += "  \"frame_id\": " + json_string(scene.frame_id) + ",\n";
  const auto & e = scene.extent;
  out += fmt::format(
    "  \"extent\": [{}, {}, {}, {}],\n", format_number(e.x_min), format_number(e.y_min),
    format_number(e.x_max), format_number(e.y_max));
  out += "  \"instances\": [";
  for (std::size_t i = 0; i < scene.instances.size(); ++i) {
    const auto & inst = scene.instances[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"class\": " + json_string(to_string(inst.label));
    out += ", \"topology\": " + json_string(to_string(inst.topology));
    if (inst.confidence) {
      out += ", \"confidence\": " + format_number(*inst.confidence);
    }
    out += ", \"points\": [";
    for (std::size_t k = 0; k < inst.points.size(); ++k) {
      if (k) out += ", ";
      out += "[" + format_number(inst.points[k].x) + ", " + format_number(inst.points[k].y) + "]";
    }
    out += "]}";
  }
  out += scene.instances.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

Scene parse_scene(std::string_view text, std::string_view source)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & ex) {
    throw ParseError(
      std::string(source) + ": " + line_column(text, ex.byte) + ": malformed JSON");
  }
  if (!doc.is_object()) field_error(source, "<root>", "expected an object");

  const std::string version = string_at(member(doc, "format_version", source, ""), source, "format_version");
  if (version != kSceneFormatVersion) {
    field_error(source, "format_version", "unsupported version '" + version + "'");
  }
  Scene scene;
  scene.frame_id = string_at(member(doc, "frame_id", source, ""), source, "frame_id");

  const json & ext = member(doc, "extent", source, "");
  if (!ext.is_array() || ext.size() != 4) field_error(source, "extent", "expected 4 numbers");
  scene.extent = {
    number_at(ext[0], source, "extent[0]"), number_at(ext[1], source, "extent[1]"),
    number_at(ext[2], source, "extent[2]"), number_at(ext[3], source, "extent[3]")};

  const json & insts = member(doc, "instances", source, "");
  if (!insts.is_array()) field_error(source, "instances", "expected an array");
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const std::string path = "instances[" + std::to_string(i) + "]";
    const json & ji = insts[i];
    if (!ji.is_object()) field_error(source, path, "expected an object");
    MapInstance inst;
    const std::string label = string_at(member(ji, "class", source, path), source, path + ".class");
    try {
      inst.label = parse_map_class(label);
    } catch (const InvalidInput & ex) {
      field_error(source, path + ".class", ex.what());
    }
    const std::string topo = string_at(member(ji, "topology", source, path), source, path + ".topology");
    try {
      inst.topology = parse_topology(topo);
    } catch (const InvalidInput & ex) {
      field_error(source, path + ".topology", ex.what());
    }
    if (auto it = ji.find("confidence"); it != ji.end() && !it->is_null()) {
      inst.confidence = number_at(*it, source, path + ".confidence");
    }
    const json & pts = member(ji, "points", source, path);
    if (!pts.is_array()) field_error(source, path + ".points", "expected an array");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const std::string ppath = path + ".points[" + std::to_string(k) + "]";
      if (!pts[k].is_array() || pts[k].size() != 2) field_error(source, ppath, "expected [x, y]");
      inst.points.push_back({number_at(pts[k][0], source, ppath), number_at(pts[k][1], source, ppath)});
    }
    try {
      validate(inst);
    } catch (const InvalidInput & ex) {
      field_error(source, path, ex.what());
    }
    scene.instances.push_back(std::move(inst));
  }
  return scene;
}

Scene read_scene_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path & path, std::string_view s)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_scene_file(const std::filesystem::path & path, const Scene & scene)
{
  write_text_file(path, emit_scene(scene));
}

std::vector<Scene> read_scene_dir(const std::filesystem::path & dir)
{
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Scene> scenes;
  scenes.reserve(files.size());
  for (const auto & f : files) scenes.push_back(read_scene_file(f));
  return scenes;
}

std::string emit_report_json(const EvalReport & report, std::size_t n_frames)
{
  using ojson = nlohmann::ordered_json;
  auto opt = [](const std::optional<double> & v) { return v ? ojson(*v) : ojson(nullptr); };

  ojson doc;
  doc["tool"] = kToolVersion;
  doc["config"] = {
    {"thresholds", kChamferThresholds},
    {"acd_threshold", kAcdThreshold},
    {"recall_samples", kRecallSamples},
    {"matcher", "greedy_by_confidence"},
    {"frames", n_frames}};
  ojson classes = ojson::object();
  ojson per_class = ojson::object();
  for (const auto & cls : report.classes) {
    ojson ap_at = ojson::object();
    for (std::size_t t = 0; t < kChamferThresholds.size(); ++t) {
      ap_at[fmt::format("{:.1f}", kChamferThresholds[t])] = opt(cls.ap_at[t]);
    }
    const std::string name(to_string(cls.label));
    classes[name] = {
      {"ap", ap_at}, {"ap_mean", opt(cls.ap)}, {"n_pred", cls.n_pred}, {"n_gt", cls.n_gt}};
    per_class[name] = opt(cls.ap);
  }
  doc["classes"] = classes;
  doc["ap_per_class"] = per_class;
  doc["mAP"] = report.map;
  doc["acd"] = opt(report.acd);
  ojson matches = ojson::array();
  for (const auto & m : report.matches) {
    matches.push_back({
      {"frame_id", m.frame_id},
      {"class", std::string(to_string(m.label))},
      {"pred_index", m.pred_index},
      {"gt_index", m.gt_index},
      {"chamfer", m.chamfer}});
  }
  doc["matches"] = matches;
  return doc.dump(2) + "\n";
}

std::string emit_report_csv(const EvalReport & report)
{
  std::string out = "class,threshold,ap\n";
  for (const auto & cls : report.classes) {
    for (std::size_t t = 0; t < kChamferThresholds.size(); ++t) {
      out += fmt::format(
        "{},{:.1f},{}\n", to_string(cls.label), kChamferThresholds[t],
        cls.ap_at[t] ? format_number(*cls.ap_at[t]) : "");
    }
  }
  return out;
}

}  // namespace vecmap
