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

#ifndef SETCARD_ILP_HPP
#define SETCARD_ILP_HPP

// Exact feasibility for linear systems over natural- and integer-valued
// unknowns with arbitrary-precision coefficients. Equalities are solved over
// the integers first (unimodular column operations), the remaining
// inequalities by depth-first branch and bound over a growing box, and each
// relaxation by a dense phase-one simplex under Bland's rule. No floating
// point anywhere.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setcard/bigint.hpp"

namespace setcard {

enum class Domain { Natural, Integer };
enum class Relation { Eq, Le };

struct LinearTerm {
  std::size_t var;
  Integer coeff;
};

struct LinearRow {
  std::vector<LinearTerm> terms;  // sorted by var, no zero coefficients
  Relation rel = Relation::Le;
  Integer rhs;
};

struct Unknown {
  std::string name;
  Domain domain = Domain::Natural;
};

class LinearSystem {
 public:
  std::size_t add_unknown(std::string name, Domain domain);

  /// sum(terms) rel rhs. Repeated variables are merged.
  void add_row(std::vector<LinearTerm> terms, Relation rel, Integer rhs);
  /// sum(terms) < rhs, stored as sum(terms) <= rhs - 1.
  void add_lt(std::vector<LinearTerm> terms, Integer rhs);
  /// sum(terms) >= rhs, stored as -sum(terms) <= -rhs.
  void add_ge(std::vector<LinearTerm> terms, Integer rhs);

  const std::vector<Unknown>& unknowns() const { return unknowns_; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  std::size_t size() const { return unknowns_.size(); }

  /// Exact check of every row and every domain.
  bool satisfied_by(const std::vector<Integer>& values) const;

  std::string to_string() const;

 private:
  std::vector<Unknown> unknowns_;
  std::vector<LinearRow> rows_;
};

struct RationalResult {
  bool feasible = false;
  std::vector<Rational> point;
};

/// Exact rational feasibility (natural unknowns >= 0, integer unknowns free).
RationalResult rational_feasible(const LinearSystem& sys);

enum class IlpStatus { Feasible, Infeasible, Unknown };

struct IlpOptions {
  std::uint64_t node_limit = 1'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct IlpResult {
  IlpStatus status = IlpStatus::Unknown;
  std::vector<Integer> assignment;
  std::uint64_t nodes = 0;
  /// Set when some branch was cut by the small-solution bound.
  bool bound_pruned = false;
  std::string reason;
};

IlpResult integer_feasible(const LinearSystem& sys, const IlpOptions& options = {});

/// (m * a_max + 1)^(3m): m rows, a_max the largest coefficient or rhs
/// magnitude. Minimal integer solutions lie within this box.
Integer small_solution_bound(const LinearSystem& sys);

}  // namespace setcard

#endif  // SETCARD_ILP_HPP
