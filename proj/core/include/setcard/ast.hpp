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

#ifndef SETCARD_AST_HPP
#define SETCARD_AST_HPP

// Abstract syntax of quantifier-free set/cardinality constraints.
//
// All node types are immutable handles over shared nodes: copying is cheap
// and values may be shared freely across threads. Equality is structural.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "setcard/bigint.hpp"

namespace setcard {

class SetTerm {
 public:
  enum class Kind : std::uint8_t { Var, Empty, Univ, Union, Inter, Compl, Minus };

  /// The empty set.
  SetTerm();

  static SetTerm var(std::string name);
  static SetTerm empty();
  static SetTerm univ();
  static SetTerm unite(SetTerm lhs, SetTerm rhs);
  static SetTerm inter(SetTerm lhs, SetTerm rhs);
  static SetTerm complement(SetTerm inner);
  static SetTerm minus(SetTerm lhs, SetTerm rhs);

  Kind kind() const;
  /// Variable name; only meaningful for Kind::Var.
  const std::string& name() const;
  /// First operand of a binary node, or the operand of Compl.
  const SetTerm& left() const;
  const SetTerm& right() const;

  bool is_binary() const {
    return kind() == Kind::Union || kind() == Kind::Inter || kind() == Kind::Minus;
  }

  friend bool operator==(const SetTerm& a, const SetTerm& b);

 private:
  struct Node;
  explicit SetTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class IntTerm {
 public:
  enum class Kind : std::uint8_t { Const, Var, Add, MulConst, Card, MaxC };

  /// The constant 0.
  IntTerm();

  static IntTerm constant(Integer value);
  static IntTerm var(std::string name);
  static IntTerm add(IntTerm lhs, IntTerm rhs);
  static IntTerm mul(Integer coeff, IntTerm inner);
  static IntTerm card(SetTerm set);
  static IntTerm maxc();

  Kind kind() const;
  /// Constant value (Const) or coefficient (MulConst).
  const Integer& value() const;
  const std::string& name() const;
  /// Lhs of Add, or the scaled term of MulConst.
  const IntTerm& left() const;
  const IntTerm& right() const;
  /// Operand of Card.
  const SetTerm& set() const;

  friend bool operator==(const IntTerm& a, const IntTerm& b);

 private:
  struct Node;
  explicit IntTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Atom {
  enum class Kind : std::uint8_t { SetEq, Subset, IntEq, IntLe, IntLt, Dvd };

  Kind kind = Kind::IntEq;
  SetTerm set_lhs;
  SetTerm set_rhs;
  IntTerm int_lhs;  // also the dividend of Dvd
  IntTerm int_rhs;
  Integer divisor;  // Dvd only

  static Atom set_eq(SetTerm a, SetTerm b);
  static Atom subset(SetTerm a, SetTerm b);
  static Atom int_eq(IntTerm a, IntTerm b);
  static Atom int_le(IntTerm a, IntTerm b);
  static Atom int_lt(IntTerm a, IntTerm b);
  static Atom dvd(Integer divisor, IntTerm term);

  bool is_set_atom() const { return kind == Kind::SetEq || kind == Kind::Subset; }

  friend bool operator==(const Atom& a, const Atom& b);
};

class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, And, Or, Not };

  /// The formula `true`.
  Formula();

  static Formula truth();
  static Formula falsity();
  static Formula atom(Atom a);
  /// Requires a nonempty list.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negate(Formula inner);

  Kind kind() const;
  const setcard::Atom& atom() const;
  const std::vector<Formula>& children() const;
  const Formula& inner() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Conjunction helper: returns `true` for an empty list and the sole element
/// for a singleton.
Formula conjoin(std::vector<Formula> parts);

struct Problem {
  std::vector<std::string> set_vars;
  std::vector<std::string> int_vars;
  Formula formula;

  friend bool operator==(const Problem& a, const Problem& b) = default;
};

// S-expression rendering in the concrete `.cbs` syntax.
std::string to_sexpr(const SetTerm& s);
std::string to_sexpr(const IntTerm& t);
std::string to_sexpr(const Atom& a);
std::string to_sexpr(const Formula& f);

/// Language keywords; never valid as identifiers.
bool is_keyword(const std::string& word);
/// Matches [A-Za-z_][A-Za-z0-9_]* and is not a keyword.
bool is_identifier(const std::string& word);

}  // namespace setcard

#endif  // SETCARD_AST_HPP
