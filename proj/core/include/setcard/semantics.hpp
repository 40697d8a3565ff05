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

#ifndef SETCARD_SEMANTICS_HPP
#define SETCARD_SEMANTICS_HPP

// Ground-truth semantics over explicit finite models, and the bounded
// brute-force satisfiability oracle used to cross-check every decision
// procedure in the library.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/bigint.hpp"

namespace setcard {

/// A finite set of naturals stored as sorted, disjoint, non-adjacent
/// half-open ranges [lo, hi). Sizes stay exact for astronomically large sets.
class ElementSet {
 public:
  using Range = std::pair<Integer, Integer>;

  ElementSet() = default;
  static ElementSet range(const Integer& lo, const Integer& hi);
  static ElementSet of(const std::vector<Integer>& elements);

  /// Adds [lo, hi); ranges may arrive in any order.
  void add_range(const Integer& lo, const Integer& hi);

  ElementSet unite(const ElementSet& other) const;
  ElementSet intersect(const ElementSet& other) const;
  /// Complement relative to {0, ..., universe-1}.
  ElementSet complement(const Integer& universe) const;
  /// Elements with rank in [offset, offset+count) in increasing order.
  ElementSet slice(const Integer& offset, const Integer& count) const;

  Integer size() const;
  bool empty() const { return ranges_.empty(); }
  bool subset_of(const ElementSet& other) const;
  /// True iff every element is below `universe`.
  bool below(const Integer& universe) const;

  const std::vector<Range>& ranges() const { return ranges_; }
  /// Explicit element list; only sensible for small sets.
  std::vector<Integer> elements() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<Range> ranges_;
};

struct Model {
  Integer universe;
  std::map<std::string, ElementSet> sets;
  std::map<std::string, Integer> ints;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Counts of the 2^n Venn regions. Bit i of a region index is membership in
/// var_order[i].
struct RegionVector {
  std::vector<std::string> var_order;
  std::vector<Integer> counts;

  friend bool operator==(const RegionVector&, const RegionVector&) = default;
};

class UnassignedVariable : public std::out_of_range {
 public:
  explicit UnassignedVariable(const std::string& name)
      : std::out_of_range("unassigned variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

ElementSet eval_set(const SetTerm& s, const Model& m);
Integer eval_int(const IntTerm& t, const Model& m);
bool eval_atom(const Atom& a, const Model& m);
/// Throws UnassignedVariable when `m` lacks a free variable of `f`.
bool eval_formula(const Formula& f, const Model& m);

/// Lays out one contiguous block of fresh elements per region, in increasing
/// region index order.
Model model_from_regions(const RegionVector& rv, const std::map<std::string, Integer>& ints = {});

/// Inverse of model_from_regions up to element renaming.
RegionVector region_vector_of(const Model& m, const std::vector<std::string>& var_order);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::uint64_t region_bound = 6;
  std::uint64_t int_bound = 6;
  /// Maximum number of candidate (region vector, integer assignment) pairs.
  std::uint64_t ceiling = 100'000'000;
};

struct OracleResult {
  /// SatWithin when true, UnsatWithin otherwise.
  bool sat = false;
  Model model;
  std::uint64_t candidates = 0;
};

/// Exhaustive search over region counts in [0, region_bound] and integer
/// values in [-int_bound, int_bound]; returns the lexicographically first
/// satisfying candidate. Throws BudgetExceeded past the ceiling.
OracleResult oracle_sat(const Problem& p, const OracleOptions& options = {});

}  // namespace setcard

#endif  // SETCARD_SEMANTICS_HPP
