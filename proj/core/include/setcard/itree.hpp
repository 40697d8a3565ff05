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

#ifndef SETCARD_ITREE_HPP
#define SETCARD_ITREE_HPP

// Independent trees ("i-trees"): forests of set variables linked by subset
// edges, with optional disjoint/exhaustive decompositions and per-node
// cardinality intervals. Satisfiability, interval tightening and entailment
// run in time polynomial in the size of the forest.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/bigint.hpp"
#include "setcard/semantics.hpp"

namespace setcard {

struct ITreeNode {
  std::string var;
  Integer lo = 0;
  std::optional<Integer> hi;  // nullopt is +infinity
  std::vector<ITreeNode> children;
  bool disjoint = false;
  bool exhaustive = false;

  friend bool operator==(const ITreeNode&, const ITreeNode&) = default;
};

struct ITree {
  std::vector<ITreeNode> roots;

  friend bool operator==(const ITree&, const ITree&) = default;
};

class MalformedTree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cardinality interval; `hi == nullopt` is unbounded.
struct Interval {
  Integer lo;
  std::optional<Integer> hi;

  bool contains(const Integer& v) const { return v >= lo && (!hi || v <= *hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Throws MalformedTree on duplicate variables, lo > hi, or flags on a leaf.
void validate(const ITree& t);

/// Number of nodes in the forest.
std::size_t tree_size(const ITree& t);

/// The constraint denoted by the forest, as a general formula. Variables are
/// the tree variables in preorder.
Formula itree_semantics(const ITree& t);
Problem itree_problem(const ITree& t);

struct ITreeSat {
  bool sat = false;
  /// Chosen cardinality per variable (Sat only).
  std::map<std::string, Integer> witness;
};

ITreeSat itree_sat(const ITree& t);

/// Builds concrete sets realizing the cardinalities of a Sat witness.
Model realize_witness(const ITree& t, const std::map<std::string, Integer>& witness);

/// Exact per-variable intervals: every value inside is attained by some model
/// and no value outside is. Throws std::domain_error if `t` is unsat.
std::map<std::string, Interval> tighten(const ITree& t);

struct EntailYes {};
struct EntailNo {
  Model counter_model;
  std::string violated;  // the t2 constraint the model falsifies, as text
};
struct EntailUnknown {
  std::string reason;
};
using EntailResult = std::variant<EntailYes, EntailNo, EntailUnknown>;

struct ITreeEntailOptions {
  /// Cap on membership patterns tried per failed structural check.
  std::size_t pattern_budget = 4096;
};

/// Does every model of t1 satisfy t2?
EntailResult itree_entails(const ITree& t1, const ITree& t2, const ITreeEntailOptions& options = {});

}  // namespace setcard

#endif  // SETCARD_ITREE_HPP
