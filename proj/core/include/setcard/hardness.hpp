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

#ifndef SETCARD_HARDNESS_HPP
#define SETCARD_HARDNESS_HPP

// Instance encoders for the two classic hardness sources of the language
// (propositional structure and large constants), and seeded random
// generators for problems and i-trees.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/bigint.hpp"
#include "setcard/itree.hpp"
#include "setcard/semantics.hpp"

namespace setcard {

struct CnfLiteral {
  std::size_t var = 0;  // 0-based
  bool positive = true;

  friend bool operator==(const CnfLiteral&, const CnfLiteral&) = default;
};

struct Cnf3 {
  std::size_t num_vars = 0;
  std::vector<std::array<CnfLiteral, 3>> clauses;
};

class MalformedCnf : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// DIMACS CNF with a `p cnf V C` header; every clause must have exactly three
/// literals. Throws MalformedCnf.
Cnf3 read_dimacs(std::string_view text);

/// One set variable X<i> per propositional variable (1-based, as in DIMACS),
/// a one-element universe, and one cardinality atom per clause.
Problem encode_3sat(const Cnf3& c);
/// Variable i is true iff X<i+1> is nonempty.
std::vector<bool> decode_3sat(const Cnf3& c, const Model& m);
bool cnf_satisfied(const Cnf3& c, const std::vector<bool>& assignment);

struct SubsetSumInstance {
  std::vector<Integer> items;
  Integer target;
};

/// Target on the first line, then one item per line. Blank lines and `#`
/// comments are ignored. Throws MalformedInstance.
SubsetSumInstance read_subset_sum(std::string_view text);

Problem encode_subset_sum(const SubsetSumInstance& s);
/// Item i is chosen iff |X<i+1>| equals the item (and the item is nonzero).
std::vector<bool> decode_subset_sum(const SubsetSumInstance& s, const Model& m);

/// Uniform draws on top of mt19937_64's raw output, identical on every
/// platform (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  /// Uniform in [0, 2^bits).
  Integer bits(unsigned bits);

 private:
  std::mt19937_64 engine_;
};

struct GenProfile {
  std::size_t set_vars = 2;
  std::size_t int_vars = 2;
  unsigned depth = 3;
  unsigned const_bits = 2;
  /// Conjoin guards pinning every region count to [0, bound] and every
  /// integer variable to [-bound, bound].
  bool bounded = false;
  std::uint64_t bound = 6;
};

/// Set variables are S0, S1, ...; integer variables x0, x1, ...
Problem gen_random(std::uint64_t seed, const GenProfile& profile);

/// Guards described in GenProfile::bounded.
Formula box_guards(const Problem& p, std::uint64_t bound);

struct ITreeProfile {
  std::size_t nodes = 6;
  /// Bounds are drawn from [0, max_bound]; a node's hi is infinite with
  /// probability 1/3.
  std::uint64_t max_bound = 5;
  /// Probability (in percent) that a node starts a new root.
  unsigned new_root_percent = 20;
};

/// Variables T0, T1, ... in preorder-compatible numbering (parents first).
ITree gen_random_itree(std::uint64_t seed, const ITreeProfile& profile);

}  // namespace setcard

#endif  // SETCARD_HARDNESS_HPP
