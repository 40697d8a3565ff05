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

#include "report.hpp"

#include <stdexcept>

namespace setcard::cli {

namespace {

Json integer_json(const Integer& v) {
  if (v.fits_ulong_p()) return static_cast<std::uint64_t>(v.get_ui());
  return to_decimal(v);
}

Integer integer_from(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return Integer(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v >= 0) return Integer(static_cast<unsigned long>(v));
    return -Integer(static_cast<unsigned long>(-(v + 1))) - 1;
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    bool negative = !s.empty() && s.front() == '-';
    auto mag = parse_natural(negative ? std::string_view(s).substr(1) : std::string_view(s));
    if (mag) return negative ? Integer(-*mag) : *mag;
  }
  throw std::invalid_argument(std::string("bad integer in ") + what);
}

std::string set_text(const ElementSet& s) {
  std::string out;
  for (const auto& [lo, hi] : s.ranges()) {
    if (!out.empty()) out += " u ";
    out += "[" + to_decimal(lo) + ", " + to_decimal(hi) + ")";
  }
  return out.empty() ? "{}" : out;
}

std::string listed_text(const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : s.elements()) {
    if (!first) out += ", ";
    out += to_decimal(e);
    first = false;
  }
  return out + "}";
}

}  // namespace

Json model_to_json(const Model& m) {
  Json j = Json::object();
  j["universe"] = integer_json(m.universe);
  const bool listed = m.universe <= kMaxListedUniverse;
  Json sets = Json::object();
  for (const auto& [name, s] : m.sets) {
    Json items = Json::array();
    if (listed) {
      for (const auto& e : s.elements()) items.push_back(static_cast<std::uint64_t>(e.get_ui()));
    } else {
      for (const auto& [lo, hi] : s.ranges()) items.push_back(Json::array({to_decimal(lo), to_decimal(hi)}));
    }
    sets[name] = std::move(items);
  }
  j[listed ? "sets" : "ranges"] = std::move(sets);
  Json ints = Json::object();
  for (const auto& [name, v] : m.ints) ints[name] = to_decimal(v);
  j["ints"] = std::move(ints);
  return j;
}

Model model_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("model must be a JSON object");
  if (j.contains("model")) return model_from_json(j.at("model"));
  Model m;
  if (!j.contains("universe")) throw std::invalid_argument("model lacks \"universe\"");
  m.universe = integer_from(j.at("universe"), "universe");
  if (j.contains("sets")) {
    for (const auto& [name, items] : j.at("sets").items()) {
      std::vector<Integer> elems;
      for (const auto& e : items) elems.push_back(integer_from(e, "sets"));
      m.sets[name] = ElementSet::of(elems);
    }
  }
  if (j.contains("ranges")) {
    for (const auto& [name, items] : j.at("ranges").items()) {
      ElementSet s;
      for (const auto& r : items) {
        if (!r.is_array() || r.size() != 2) throw std::invalid_argument("ranges entries must be [lo, hi] pairs");
        s.add_range(integer_from(r[0], "ranges"), integer_from(r[1], "ranges"));
      }
      m.sets[name] = std::move(s);
    }
  }
  if (j.contains("ints")) {
    for (const auto& [name, v] : j.at("ints").items()) m.ints[name] = integer_from(v, "ints");
  }
  for (const auto& [name, s] : m.sets) {
    if (!s.below(m.universe)) throw std::invalid_argument("set '" + name + "' has elements outside the universe");
  }
  return m;
}

std::string render_json(const Report& r) {
  Json j = Json::object();
  j["verdict"] = r.verdict;
  if (r.model) j["model"] = model_to_json(*r.model);
  j["stats"] = Json{{"branches", r.branches}, {"ilp_nodes", r.ilp_nodes}, {"ms", r.ms}};
  j["strategy"] = r.strategy;
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string render_text(const Report& r, bool with_model) {
  std::string out = r.verdict + "\n";
  for (const auto& line : r.details) out += line + "\n";
  if (with_model && r.model) {
    const Model& m = *r.model;
    const bool listed = m.universe <= kMaxListedUniverse;
    out += "universe " + to_decimal(m.universe) + "\n";
    for (const auto& [name, s] : m.sets) out += "set " + name + " = " + (listed ? listed_text(s) : set_text(s)) + "\n";
    for (const auto& [name, v] : m.ints) out += "int " + name + " = " + to_decimal(v) + "\n";
  }
  out += "stats branches=" + std::to_string(r.branches) + " ilp_nodes=" + std::to_string(r.ilp_nodes) +
         " ms=" + std::to_string(r.ms) + "\n";
  if (!r.strategy.empty()) out += "strategy " + r.strategy + "\n";
  return out;
}

}  // namespace setcard::cli
