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

#ifndef SETCARD_TESTS_SUPPORT_HPP
#define SETCARD_TESTS_SUPPORT_HPP

// Helpers shared by the unit tests, including a raw-subset brute force that
// is independent of the region-vector machinery under test.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setcard/parser.hpp"
#include "setcard/semantics.hpp"

namespace setcard::testing {

inline Problem P(const std::string& text) { return parse_problem(text); }

inline Integer Z(const char* decimal) { return Integer(decimal); }

/// Model over universe {0..n-1}; each set given by a bitmask.
inline Model bitmask_model(unsigned n, const std::map<std::string, unsigned>& masks,
                           const std::map<std::string, long>& ints = {}) {
  Model m;
  m.universe = n;
  for (const auto& [name, mask] : masks) {
    std::vector<Integer> elems;
    for (unsigned e = 0; e < n; ++e) {
      if ((mask >> e) & 1U) elems.emplace_back(e);
    }
    m.sets[name] = ElementSet::of(elems);
  }
  for (const auto& [name, v] : ints) m.ints[name] = v;
  return m;
}

/// Calls `visit` on every model with universe size <= max_universe, every
/// subset assignment of the set variables, and integers in [-int_range,
/// int_range]. Stops early when `visit` returns true; returns whether it did.
inline bool for_each_raw_model(const Problem& p, unsigned max_universe, long int_range,
                               const std::function<bool(const Model&)>& visit) {
  const std::size_t k = p.set_vars.size();
  for (unsigned n = 0; n <= max_universe; ++n) {
    const std::uint64_t per_set = std::uint64_t{1} << n;
    std::uint64_t set_combos = 1;
    for (std::size_t i = 0; i < k; ++i) set_combos *= per_set;
    const std::uint64_t width = static_cast<std::uint64_t>(2 * int_range + 1);
    std::uint64_t int_combos = 1;
    for (std::size_t i = 0; i < p.int_vars.size(); ++i) int_combos *= width;
    for (std::uint64_t sc = 0; sc < set_combos; ++sc) {
      std::map<std::string, unsigned> masks;
      std::uint64_t rest = sc;
      for (std::size_t i = 0; i < k; ++i) {
        masks[p.set_vars[i]] = static_cast<unsigned>(rest % per_set);
        rest /= per_set;
      }
      for (std::uint64_t ic = 0; ic < int_combos; ++ic) {
        std::map<std::string, long> ints;
        std::uint64_t r = ic;
        for (const auto& x : p.int_vars) {
          ints[x] = static_cast<long>(r % width) - int_range;
          r /= width;
        }
        if (visit(bitmask_model(n, masks, ints))) return true;
      }
    }
  }
  return false;
}

/// Raw brute-force satisfiability within the given universe and int range.
inline std::optional<Model> raw_sat(const Problem& p, unsigned max_universe, long int_range) {
  std::optional<Model> found;
  for_each_raw_model(p, max_universe, int_range, [&](const Model& m) {
    if (eval_formula(p.formula, m)) {
      found = m;
      return true;
    }
    return false;
  });
  return found;
}

}  // namespace setcard::testing

#endif  // SETCARD_TESTS_SUPPORT_HPP
