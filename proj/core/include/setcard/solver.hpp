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

#ifndef SETCARD_SOLVER_HPP
#define SETCARD_SOLVER_HPP

// Decision procedure for quantifier-free set/cardinality constraints.
//
// Every set term denotes a union of Venn regions over the declared set
// variables. A boolean search over the negation normal form enumerates
// conjunctions of atoms; each conjunction becomes a linear system over one
// natural count per admitted region plus the integer variables, which the
// exact ILP engine decides. Sat answers carry a concrete model that is
// re-checked against the original formula before being returned.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/ilp.hpp"
#include "setcard/semantics.hpp"

namespace setcard {

/// Subset of the 2^n region signatures over a fixed variable order.
class RegionSet {
 public:
  explicit RegionSet(std::size_t num_vars = 0, bool full = false);

  /// Regions inside variable `index`.
  static RegionSet of_var(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t universe_size() const { return std::size_t{1} << num_vars_; }

  bool contains(std::size_t sig) const { return (words_[sig / 64] >> (sig % 64)) & 1U; }
  void insert(std::size_t sig) { words_[sig / 64] |= std::uint64_t{1} << (sig % 64); }
  bool empty() const;
  std::size_t count() const;
  std::vector<std::size_t> members() const;

  RegionSet operator|(const RegionSet& o) const;
  RegionSet operator&(const RegionSet& o) const;
  RegionSet operator~() const;
  friend bool operator==(const RegionSet&, const RegionSet&) = default;

 private:
  void clear_padding();

  std::size_t num_vars_;
  std::vector<std::uint64_t> words_;
};

/// Regions whose boolean evaluation of `s` is true.
RegionSet region_set(const SetTerm& s, const std::vector<std::string>& var_order);

/// Signature rendered with var_order[0] first, e.g. "10" is inside the first
/// variable and outside the second.
std::string region_name(std::size_t sig, std::size_t num_vars);

/// Unknown of a reduced atom: a region count `l_<bits>`, a declared integer
/// variable, or a fresh divisibility witness `__q<i>` / `__r<i>`.
struct VennVar {
  enum class Kind { Region, Int, Fresh };
  Kind kind = Kind::Region;
  std::size_t region = 0;
  std::string name;

  friend auto operator<=>(const VennVar&, const VennVar&) = default;
};

struct VennConstraint {
  std::vector<std::pair<VennVar, Integer>> coeffs;
  Relation rel = Relation::Le;
  Integer rhs;
};

/// Human-readable rendering, e.g. `l_10 + l_11 - 2*__q0 = 0`.
std::string to_string(const VennConstraint& c, std::size_t num_vars);

struct ReducedAtom {
  /// Regions whose count must be zero (set equalities and inclusions).
  RegionSet zero;
  std::vector<VennConstraint> rows;
  std::vector<std::string> fresh_ints;  // unrestricted sign
  std::vector<std::string> fresh_nats;  // nonnegative
};

struct FreshCounter {
  int next = 0;
};

/// Linear condition for `a` (or its negation, for Dvd atoms only).
/// `a` must be Minus-free.
ReducedAtom reduce_atom(const Atom& a, bool negated, const std::vector<std::string>& var_order,
                        FreshCounter& fresh);

struct Strategy {
  enum class Kind { Explicit, Sparse };
  Kind kind = Kind::Explicit;
  /// Sparse only; nullopt selects the default budget.
  std::optional<std::size_t> max_nonzero;

  static Strategy explicit_regions() { return {}; }
  static Strategy sparse(std::optional<std::size_t> k = std::nullopt) { return {Kind::Sparse, k}; }
  std::string to_string() const;
};

struct SolveLimits {
  std::optional<std::chrono::milliseconds> time_limit;
  std::uint64_t ilp_node_limit = 1'000'000;
  std::uint64_t branch_limit = 1'000'000;
  /// Largest number of set variables whose regions may be materialized.
  std::size_t max_set_vars = 20;
};

struct SolveStats {
  std::uint64_t branches = 0;
  std::uint64_t ilp_calls = 0;
  std::uint64_t ilp_nodes = 0;
};

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  Model model;  // Sat only
  std::string reason;  // Unknown only
  SolveStats stats;
  std::string strategy;
  /// Nonzero-region budget actually used (sparse only).
  std::size_t sparse_k = 0;
};

std::string to_string(Verdict::Kind kind);

/// Default sparse budget: distinct atoms + distinct cardinality terms + 1.
std::size_t default_sparse_budget(const Problem& p);

/// Throws std::invalid_argument if `p` does not type-check.
Verdict solve(const Problem& p, const Strategy& strategy = {}, const SolveLimits& limits = {});

class SortMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Union of declarations, first problem's order first. Throws SortMismatch.
Problem merge_declarations(const Problem& a, const Problem& b);

struct EntailVerdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  Model counter_model;  // No only
  std::string reason;
  SolveStats stats;
};

std::string to_string(EntailVerdict::Kind kind);

/// Refutation: p1 entails p2 iff p1 and not p2 is unsat.
EntailVerdict entails(const Problem& p1, const Problem& p2, const SolveLimits& limits = {});

}  // namespace setcard

#endif  // SETCARD_SOLVER_HPP
