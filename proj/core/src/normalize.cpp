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

#include "setcard/normalize.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace setcard {

namespace {

class VarCollector {
 public:
  void set(const SetTerm& s) {
    switch (s.kind()) {
      case SetTerm::Kind::Var:
        if (seen_sets_.insert(s.name()).second) out_.sets.push_back(s.name());
        return;
      case SetTerm::Kind::Empty:
      case SetTerm::Kind::Univ:
        return;
      case SetTerm::Kind::Compl:
        set(s.left());
        return;
      default:
        set(s.left());
        set(s.right());
    }
  }

  void integer(const IntTerm& t) {
    switch (t.kind()) {
      case IntTerm::Kind::Var:
        if (seen_ints_.insert(t.name()).second) out_.ints.push_back(t.name());
        return;
      case IntTerm::Kind::Add:
        integer(t.left());
        integer(t.right());
        return;
      case IntTerm::Kind::MulConst:
        integer(t.left());
        return;
      case IntTerm::Kind::Card:
        set(t.set());
        return;
      default:
        return;
    }
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        const Atom& a = f.atom();
        if (a.is_set_atom()) {
          set(a.set_lhs);
          set(a.set_rhs);
        } else if (a.kind == Atom::Kind::Dvd) {
          integer(a.int_lhs);
        } else {
          integer(a.int_lhs);
          integer(a.int_rhs);
        }
        return;
      }
      case Formula::Kind::Not:
        formula(f.inner());
        return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const auto& c : f.children()) formula(c);
        return;
      default:
        return;
    }
  }

  FreeVars take() { return std::move(out_); }

 private:
  FreeVars out_;
  std::unordered_set<std::string> seen_sets_;
  std::unordered_set<std::string> seen_ints_;
};

class Checker {
 public:
  explicit Checker(const Problem& p) {
    for (const auto& name : p.set_vars) declare(name, Sort::Set);
    for (const auto& name : p.int_vars) declare(name, Sort::Int);
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: atom(f.atom()); return;
      case Formula::Kind::Not: formula(f.inner()); return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const auto& c : f.children()) formula(c);
        return;
      default: return;
    }
  }

  std::vector<TypeError> take() { return std::move(errors_); }

 private:
  void declare(const std::string& name, Sort sort) {
    if (!is_identifier(name)) {
      errors_.push_back({TypeError::Kind::BadIdentifier, name});
      return;
    }
    auto [it, fresh] = declared_.emplace(name, sort);
    if (fresh) return;
    if (it->second == sort) {
      errors_.push_back({TypeError::Kind::DuplicateDeclaration, name});
    } else {
      errors_.push_back({TypeError::Kind::SortClash, name});
    }
  }

  void use(const std::string& name, Sort sort) {
    auto it = declared_.find(name);
    if (it == declared_.end()) {
      if (reported_.insert(name).second) {
        errors_.push_back({TypeError::Kind::UndeclaredVariable, name, sort});
      }
    } else if (it->second != sort && reported_.insert(name).second) {
      errors_.push_back({TypeError::Kind::SortClash, name, sort});
    }
  }

  void set(const SetTerm& s) {
    switch (s.kind()) {
      case SetTerm::Kind::Var: use(s.name(), Sort::Set); return;
      case SetTerm::Kind::Empty:
      case SetTerm::Kind::Univ: return;
      case SetTerm::Kind::Compl: set(s.left()); return;
      default:
        set(s.left());
        set(s.right());
    }
  }

  void integer(const IntTerm& t) {
    switch (t.kind()) {
      case IntTerm::Kind::Var: use(t.name(), Sort::Int); return;
      case IntTerm::Kind::Add:
        integer(t.left());
        integer(t.right());
        return;
      case IntTerm::Kind::MulConst:
        integer(t.left());
        return;
      case IntTerm::Kind::Card: set(t.set()); return;
      default: return;
    }
  }

  void atom(const Atom& a) {
    const int position = atom_index_++;
    if (a.is_set_atom()) {
      set(a.set_lhs);
      set(a.set_rhs);
      return;
    }
    integer(a.int_lhs);
    if (a.kind == Atom::Kind::Dvd) {
      if (a.divisor < 1) errors_.push_back({TypeError::Kind::BadDivisor, {}, Sort::Int, position});
    } else {
      integer(a.int_rhs);
    }
  }

  std::unordered_map<std::string, Sort> declared_;
  std::unordered_set<std::string> reported_;
  std::vector<TypeError> errors_;
  int atom_index_ = 0;
};

Formula nnf(const Formula& f, bool negated);

Formula negated_atom(const Atom& a) {
  const IntTerm one = IntTerm::constant(1);
  switch (a.kind) {
    case Atom::Kind::IntLe:
      return Formula::atom(Atom::int_lt(a.int_rhs, a.int_lhs));
    case Atom::Kind::IntLt:
      return Formula::atom(Atom::int_le(a.int_rhs, a.int_lhs));
    case Atom::Kind::IntEq:
      return Formula::disj({Formula::atom(Atom::int_lt(a.int_lhs, a.int_rhs)),
                            Formula::atom(Atom::int_lt(a.int_rhs, a.int_lhs))});
    case Atom::Kind::SetEq:
      return Formula::atom(
          Atom::int_le(one, IntTerm::card(symmetric_difference(a.set_lhs, a.set_rhs))));
    case Atom::Kind::Subset:
      return Formula::atom(Atom::int_le(
          one, IntTerm::card(SetTerm::inter(a.set_lhs, SetTerm::complement(a.set_rhs)))));
    case Atom::Kind::Dvd:
      return Formula::negate(Formula::atom(a));
  }
  return Formula::falsity();
}

Atom strip_atom(const Atom& a) {
  Atom out = a;
  if (a.is_set_atom()) {
    out.set_lhs = strip_minus(a.set_lhs);
    out.set_rhs = strip_minus(a.set_rhs);
  } else {
    out.int_lhs = strip_minus(a.int_lhs);
    if (a.kind != Atom::Kind::Dvd) out.int_rhs = strip_minus(a.int_rhs);
  }
  return out;
}

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return negated ? Formula::falsity() : Formula::truth();
    case Formula::Kind::False:
      return negated ? Formula::truth() : Formula::falsity();
    case Formula::Kind::Atom: {
      Atom a = strip_atom(f.atom());
      return negated ? negated_atom(a) : Formula::atom(std::move(a));
    }
    case Formula::Kind::Not:
      return nnf(f.inner(), !negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(nnf(c, negated));
      const bool conj = (f.kind() == Formula::Kind::And) != negated;
      return conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
  }
  return f;
}

}  // namespace

FreeVars free_vars(const Formula& f) {
  VarCollector collector;
  collector.formula(f);
  return collector.take();
}

std::string TypeError::message() const {
  switch (kind) {
    case Kind::UndeclaredVariable:
      return "undeclared " + std::string(sort == Sort::Set ? "set" : "int") + " variable '" +
             name + "'";
    case Kind::SortClash:
      return "variable '" + name + "' used with conflicting sorts";
    case Kind::BadDivisor:
      return "divisor of dvd atom #" + std::to_string(position) + " must be at least 1";
    case Kind::DuplicateDeclaration:
      return "variable '" + name + "' declared twice";
    case Kind::BadIdentifier:
      return "'" + name + "' is not a valid identifier";
  }
  return "type error";
}

std::vector<TypeError> type_check(const Problem& p) {
  Checker checker(p);
  checker.formula(p.formula);
  return checker.take();
}

SetTerm strip_minus(const SetTerm& s) {
  switch (s.kind()) {
    case SetTerm::Kind::Var:
    case SetTerm::Kind::Empty:
    case SetTerm::Kind::Univ:
      return s;
    case SetTerm::Kind::Compl:
      return SetTerm::complement(strip_minus(s.left()));
    case SetTerm::Kind::Union:
      return SetTerm::unite(strip_minus(s.left()), strip_minus(s.right()));
    case SetTerm::Kind::Inter:
      return SetTerm::inter(strip_minus(s.left()), strip_minus(s.right()));
    case SetTerm::Kind::Minus:
      return SetTerm::inter(strip_minus(s.left()), SetTerm::complement(strip_minus(s.right())));
  }
  return s;
}

IntTerm strip_minus(const IntTerm& t) {
  switch (t.kind()) {
    case IntTerm::Kind::Add:
      return IntTerm::add(strip_minus(t.left()), strip_minus(t.right()));
    case IntTerm::Kind::MulConst:
      return IntTerm::mul(t.value(), strip_minus(t.left()));
    case IntTerm::Kind::Card:
      return IntTerm::card(strip_minus(t.set()));
    default:
      return t;
  }
}

SetTerm symmetric_difference(const SetTerm& a, const SetTerm& b) {
  return SetTerm::unite(SetTerm::inter(a, SetTerm::complement(b)),
                        SetTerm::inter(b, SetTerm::complement(a)));
}

Formula to_nnf(const Formula& f) { return nnf(f, false); }

}  // namespace setcard
