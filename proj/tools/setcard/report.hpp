// Copyright 2026 The setcard Authors
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

#ifndef SETCARD_TOOLS_REPORT_HPP
#define SETCARD_TOOLS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "setcard/semantics.hpp"

namespace setcard::cli {

using Json = nlohmann::ordered_json;

/// Universes above this size are reported as ranges instead of element lists.
inline constexpr unsigned long kMaxListedUniverse = 65536;

struct Report {
  std::string verdict;
  std::optional<Model> model;
  std::uint64_t branches = 0;
  std::uint64_t ilp_nodes = 0;
  std::uint64_t ms = 0;
  std::string strategy;
  /// Subcommand-specific fields appended after the common ones.
  Json extra = Json::object();
  /// Lines printed after the verdict in text mode.
  std::vector<std::string> details;
};

Json model_to_json(const Model& m);
/// Accepts a bare model or a whole report with a "model" field.
/// Throws std::invalid_argument on malformed input.
Model model_from_json(const Json& j);

std::string render_json(const Report& r);
std::string render_text(const Report& r, bool with_model);

}  // namespace setcard::cli

#endif  // SETCARD_TOOLS_REPORT_HPP
