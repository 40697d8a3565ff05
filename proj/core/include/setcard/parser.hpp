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

#ifndef SETCARD_PARSER_HPP
#define SETCARD_PARSER_HPP

// Concrete syntax for problems (`.cbs`) and i-trees.
//
//   problem  := decl* assert+
//   decl     := (declare-set IDENT) | (declare-int IDENT)
//   assert   := (assert formula)              ; several asserts conjoin
//   formula  := true | false | atom | (and formula+) | (or formula+) | (not formula)
//   atom     := (= set set) | (subset set set) | (= int int) | (<= int int)
//             | (< int int) | (dvd NAT int)
//   set      := IDENT | empty | univ | (union set set) | (inter set set)
//             | (compl set) | (minus set set)
//   int      := NAT | IDENT | maxc | (+ int int) | (* NAT int) | (card set)
//
// `;` starts a comment running to end of line.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/itree.hpp"
#include "setcard/normalize.hpp"

namespace setcard {

struct SourceSpan {
  std::size_t start = 0;  // byte offsets, start <= end
  std::size_t end = 0;
  std::size_t line = 1;   // 1-based
  std::size_t column = 1;

  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Sort or declaration errors found while reading a problem.
class TypeCheckError : public std::runtime_error {
 public:
  TypeCheckError(std::vector<TypeError> errors, SourceSpan span);
  const std::vector<TypeError>& errors() const { return errors_; }
  const SourceSpan& span() const { return span_; }

 private:
  std::vector<TypeError> errors_;
  SourceSpan span_;
};

/// Throws ParseError or TypeCheckError. The returned problem type-checks.
Problem parse_problem(std::string_view text);

/// Canonical text; parse_problem(print_problem(p)) == p.
std::string print_problem(const Problem& p);

/// Reads `(itree (node NAME [:lo N] [:hi N|inf] [:disjoint B] [:exhaustive B] node*)*)`.
/// Throws ParseError. Structural well-formedness is checked by the itree module.
ITree parse_itree(std::string_view text);

std::string print_itree(const ITree& t);

}  // namespace setcard

#endif  // SETCARD_PARSER_HPP
