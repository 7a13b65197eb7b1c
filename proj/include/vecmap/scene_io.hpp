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

#ifndef VECMAP__SCENE_IO_HPP_
#define VECMAP__SCENE_IO_HPP_

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vecmap
{

inline constexpr std::string_view kSceneFormatVersion = "1";
inline constexpr std::string_view kToolVersion = "vecmap 0.1.0";

/// Malformed scene file. what() carries line/column or the offending field path.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// JSON text with every number written to 17 significant digits.
std::string emit_scene(const Scene & scene);

/// Throws ParseError. `source` prefixes messages (usually the file name).
Scene parse_scene(std::string_view text, std::string_view source = "<input>");

/// Throws ParseError when unreadable or malformed.
Scene read_scene_file(const std::filesystem::path & path);

/// Throws std::runtime_error when the file cannot be written.
void write_scene_file(const std::filesystem::path & path, const Scene & scene);

/// Every *.json file in dir, parsed, in file-name order.
std::vector<Scene> read_scene_dir(const std::filesystem::path & dir);

std::string emit_report_json(const EvalReport & report, std::size_t n_frames);

/// One row per (class, threshold): class,threshold,ap. Excluded classes leave ap empty.
std::string emit_report_csv(const EvalReport & report);

/// Writes s to path, throwing std::runtime_error on failure.
void write_text_file(const std::filesystem::path & path, std::string_view s);

std::string format_number(double v);

}  // namespace vecmap

#endif  // VECMAP__SCENE_IO_HPP_
