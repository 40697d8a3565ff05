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

#include "setcard/ast.hpp"

#include <array>
#include <stdexcept>
#include <string_view>

namespace setcard {

struct SetTerm::Node {
  Kind kind;
  std::string name;
  SetTerm left;
  SetTerm right;
};

struct IntTerm::Node {
  Kind kind;
  Integer value;
  std::string name;
  IntTerm left;
  IntTerm right;
  SetTerm set;
};

struct Formula::Node {
  Kind kind;
  setcard::Atom atom;
  std::vector<Formula> children;
};

// ---------------------------------------------------------------- SetTerm

SetTerm::SetTerm() : node_(nullptr) {}

SetTerm SetTerm::var(std::string name) {
  return SetTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}}));
}
SetTerm SetTerm::empty() { return SetTerm(); }
SetTerm SetTerm::univ() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Univ, {}, {}, {}});
  return SetTerm(node);
}
SetTerm SetTerm::unite(SetTerm lhs, SetTerm rhs) {
  return SetTerm(std::make_shared<const Node>(Node{Kind::Union, {}, std::move(lhs), std::move(rhs)}));
}
SetTerm SetTerm::inter(SetTerm lhs, SetTerm rhs) {
  return SetTerm(std::make_shared<const Node>(Node{Kind::Inter, {}, std::move(lhs), std::move(rhs)}));
}
SetTerm SetTerm::complement(SetTerm inner) {
  return SetTerm(std::make_shared<const Node>(Node{Kind::Compl, {}, std::move(inner), {}}));
}
SetTerm SetTerm::minus(SetTerm lhs, SetTerm rhs) {
  return SetTerm(std::make_shared<const Node>(Node{Kind::Minus, {}, std::move(lhs), std::move(rhs)}));
}

// A null node stands for Empty so that default construction never allocates.
SetTerm::Kind SetTerm::kind() const { return node_ ? node_->kind : Kind::Empty; }

const std::string& SetTerm::name() const {
  static const std::string none;
  return node_ ? node_->name : none;
}
const SetTerm& SetTerm::left() const {
  if (!node_) throw std::logic_error("SetTerm::left on empty");
  return node_->left;
}
const SetTerm& SetTerm::right() const {
  if (!node_) throw std::logic_error("SetTerm::right on empty");
  return node_->right;
}

bool operator==(const SetTerm& a, const SetTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SetTerm::Kind::Empty:
    case SetTerm::Kind::Univ:
      return true;
    case SetTerm::Kind::Var:
      return a.name() == b.name();
    case SetTerm::Kind::Compl:
      return a.left() == b.left();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------- IntTerm

IntTerm::IntTerm() : node_(nullptr) {}

IntTerm IntTerm::constant(Integer value) {
  return IntTerm(std::make_shared<const Node>(Node{Kind::Const, std::move(value), {}, {}, {}, {}}));
}
IntTerm IntTerm::var(std::string name) {
  return IntTerm(std::make_shared<const Node>(Node{Kind::Var, {}, std::move(name), {}, {}, {}}));
}
IntTerm IntTerm::add(IntTerm lhs, IntTerm rhs) {
  return IntTerm(
      std::make_shared<const Node>(Node{Kind::Add, {}, {}, std::move(lhs), std::move(rhs), {}}));
}
IntTerm IntTerm::mul(Integer coeff, IntTerm inner) {
  return IntTerm(std::make_shared<const Node>(
      Node{Kind::MulConst, std::move(coeff), {}, std::move(inner), {}, {}}));
}
IntTerm IntTerm::card(SetTerm set) {
  return IntTerm(std::make_shared<const Node>(Node{Kind::Card, {}, {}, {}, {}, std::move(set)}));
}
IntTerm IntTerm::maxc() {
  static const auto node = std::make_shared<const Node>(Node{Kind::MaxC, {}, {}, {}, {}, {}});
  return IntTerm(node);
}

IntTerm::Kind IntTerm::kind() const { return node_ ? node_->kind : Kind::Const; }

const Integer& IntTerm::value() const {
  static const Integer zero = 0;
  return node_ ? node_->value : zero;
}
const std::string& IntTerm::name() const {
  static const std::string none;
  return node_ ? node_->name : none;
}
const IntTerm& IntTerm::left() const {
  if (!node_) throw std::logic_error("IntTerm::left on constant");
  return node_->left;
}
const IntTerm& IntTerm::right() const {
  if (!node_) throw std::logic_error("IntTerm::right on constant");
  return node_->right;
}
const SetTerm& IntTerm::set() const {
  if (!node_) throw std::logic_error("IntTerm::set on constant");
  return node_->set;
}

bool operator==(const IntTerm& a, const IntTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case IntTerm::Kind::Const:
      return a.value() == b.value();
    case IntTerm::Kind::Var:
      return a.name() == b.name();
    case IntTerm::Kind::Add:
      return a.left() == b.left() && a.right() == b.right();
    case IntTerm::Kind::MulConst:
      return a.value() == b.value() && a.left() == b.left();
    case IntTerm::Kind::Card:
      return a.set() == b.set();
    case IntTerm::Kind::MaxC:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------- Atom

Atom Atom::set_eq(SetTerm a, SetTerm b) {
  Atom out;
  out.kind = Kind::SetEq;
  out.set_lhs = std::move(a);
  out.set_rhs = std::move(b);
  return out;
}
Atom Atom::subset(SetTerm a, SetTerm b) {
  Atom out = set_eq(std::move(a), std::move(b));
  out.kind = Kind::Subset;
  return out;
}
Atom Atom::int_eq(IntTerm a, IntTerm b) {
  Atom out;
  out.kind = Kind::IntEq;
  out.int_lhs = std::move(a);
  out.int_rhs = std::move(b);
  return out;
}
Atom Atom::int_le(IntTerm a, IntTerm b) {
  Atom out = int_eq(std::move(a), std::move(b));
  out.kind = Kind::IntLe;
  return out;
}
Atom Atom::int_lt(IntTerm a, IntTerm b) {
  Atom out = int_eq(std::move(a), std::move(b));
  out.kind = Kind::IntLt;
  return out;
}
Atom Atom::dvd(Integer divisor, IntTerm term) {
  Atom out;
  out.kind = Kind::Dvd;
  out.divisor = std::move(divisor);
  out.int_lhs = std::move(term);
  return out;
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Atom::Kind::SetEq:
    case Atom::Kind::Subset:
      return a.set_lhs == b.set_lhs && a.set_rhs == b.set_rhs;
    case Atom::Kind::Dvd:
      return a.divisor == b.divisor && a.int_lhs == b.int_lhs;
    default:
      return a.int_lhs == b.int_lhs && a.int_rhs == b.int_rhs;
  }
}

// ---------------------------------------------------------------- Formula

Formula::Formula() : node_(nullptr) {}

Formula Formula::truth() { return Formula(); }
Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return Formula(node);
}
Formula Formula::atom(setcard::Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}
Formula Formula::conj(std::vector<Formula> parts) {
  if (parts.empty()) throw std::invalid_argument("and: empty operand list");
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(parts)}));
}
Formula Formula::disj(std::vector<Formula> parts) {
  if (parts.empty()) throw std::invalid_argument("or: empty operand list");
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(parts)}));
}
Formula Formula::negate(Formula inner) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(inner)}}));
}

Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::True; }

const Atom& Formula::atom() const {
  if (!node_ || node_->kind != Kind::Atom) throw std::logic_error("Formula::atom on non-atom");
  return node_->atom;
}
const std::vector<Formula>& Formula::children() const {
  static const std::vector<Formula> none;
  return node_ ? node_->children : none;
}
const Formula& Formula::inner() const {
  if (!node_ || node_->kind != Kind::Not) throw std::logic_error("Formula::inner on non-not");
  return node_->children.front();
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      return a.atom() == b.atom();
    default:
      return a.children() == b.children();
  }
}

Formula conjoin(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::truth();
  if (parts.size() == 1) return std::move(parts.front());
  return Formula::conj(std::move(parts));
}

// ---------------------------------------------------------------- printing

namespace {

void print(std::string& out, const SetTerm& s) {
  switch (s.kind()) {
    case SetTerm::Kind::Var: out += s.name(); return;
    case SetTerm::Kind::Empty: out += "empty"; return;
    case SetTerm::Kind::Univ: out += "univ"; return;
    case SetTerm::Kind::Compl:
      out += "(compl ";
      print(out, s.left());
      out += ')';
      return;
    case SetTerm::Kind::Union: out += "(union "; break;
    case SetTerm::Kind::Inter: out += "(inter "; break;
    case SetTerm::Kind::Minus: out += "(minus "; break;
  }
  print(out, s.left());
  out += ' ';
  print(out, s.right());
  out += ')';
}

void print(std::string& out, const IntTerm& t) {
  switch (t.kind()) {
    case IntTerm::Kind::Const: out += to_decimal(t.value()); return;
    case IntTerm::Kind::Var: out += t.name(); return;
    case IntTerm::Kind::MaxC: out += "maxc"; return;
    case IntTerm::Kind::Add:
      out += "(+ ";
      print(out, t.left());
      out += ' ';
      print(out, t.right());
      out += ')';
      return;
    case IntTerm::Kind::MulConst:
      out += "(* ";
      out += to_decimal(t.value());
      out += ' ';
      print(out, t.left());
      out += ')';
      return;
    case IntTerm::Kind::Card:
      out += "(card ";
      print(out, t.set());
      out += ')';
      return;
  }
}

void print(std::string& out, const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::SetEq:
    case Atom::Kind::Subset:
      out += a.kind == Atom::Kind::SetEq ? "(= " : "(subset ";
      print(out, a.set_lhs);
      out += ' ';
      print(out, a.set_rhs);
      out += ')';
      return;
    case Atom::Kind::Dvd:
      out += "(dvd ";
      out += to_decimal(a.divisor);
      out += ' ';
      print(out, a.int_lhs);
      out += ')';
      return;
    case Atom::Kind::IntEq: out += "(= "; break;
    case Atom::Kind::IntLe: out += "(<= "; break;
    case Atom::Kind::IntLt: out += "(< "; break;
  }
  print(out, a.int_lhs);
  out += ' ';
  print(out, a.int_rhs);
  out += ')';
}

void print(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: out += "true"; return;
    case Formula::Kind::False: out += "false"; return;
    case Formula::Kind::Atom: print(out, f.atom()); return;
    case Formula::Kind::Not:
      out += "(not ";
      print(out, f.inner());
      out += ')';
      return;
    case Formula::Kind::And: out += "(and"; break;
    case Formula::Kind::Or: out += "(or"; break;
  }
  for (const auto& c : f.children()) {
    out += ' ';
    print(out, c);
  }
  out += ')';
}

constexpr std::array<std::string_view, 21> kKeywords = {
    "declare-set", "declare-int", "assert", "true",  "false", "and",   "or",
    "not",         "subset",      "dvd",    "empty", "univ",  "union", "inter",
    "compl",       "minus",       "maxc",   "card",  "itree", "node",  "inf"};

}  // namespace

std::string to_sexpr(const SetTerm& s) {
  std::string out;
  print(out, s);
  return out;
}
std::string to_sexpr(const IntTerm& t) {
  std::string out;
  print(out, t);
  return out;
}
std::string to_sexpr(const Atom& a) {
  std::string out;
  print(out, a);
  return out;
}
std::string to_sexpr(const Formula& f) {
  std::string out;
  print(out, f);
  return out;
}

bool is_keyword(const std::string& word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool is_identifier(const std::string& word) {
  if (word.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(word[0])) return false;
  for (char c : word) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return !is_keyword(word);
}

}  // namespace setcard
