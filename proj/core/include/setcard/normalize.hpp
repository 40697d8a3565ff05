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

#ifndef SETCARD_NORMALIZE_HPP
#define SETCARD_NORMALIZE_HPP

#include <string>
#include <vector>

#include "setcard/ast.hpp"

namespace setcard {

enum class Sort { Set, Int };

struct FreeVars {
  std::vector<std::string> sets;
  std::vector<std::string> ints;

  friend bool operator==(const FreeVars&, const FreeVars&) = default;
};

/// Variables of `f`, each once, in first-occurrence order (left to right).
FreeVars free_vars(const Formula& f);

struct TypeError {
  enum class Kind { UndeclaredVariable, SortClash, BadDivisor, DuplicateDeclaration, BadIdentifier };

  Kind kind;
  std::string name;    // offending variable, if any
  Sort sort = Sort::Set;  // sort of the use site (UndeclaredVariable)
  int position = -1;   // preorder atom index (BadDivisor)

  std::string message() const;
};

/// Empty result means the problem is well-formed.
std::vector<TypeError> type_check(const Problem& p);

/// Negation normal form: negations only over Dvd atoms, Minus eliminated,
/// negated comparisons and set atoms rewritten into positive atoms.
Formula to_nnf(const Formula& f);

/// Rewrites every Minus(a, b) into Inter(a, Compl(b)).
SetTerm strip_minus(const SetTerm& s);
IntTerm strip_minus(const IntTerm& t);

/// Symmetric difference spelled with Union/Inter/Compl.
SetTerm symmetric_difference(const SetTerm& a, const SetTerm& b);

}  // namespace setcard

#endif  // SETCARD_NORMALIZE_HPP
