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

#include "setcard/parser.hpp"

#include <memory>
#include <unordered_map>

namespace setcard {

std::string SourceSpan::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(const std::string& message, SourceSpan span)
    : std::runtime_error(span.to_string() + ": " + message), span_(span) {}

namespace {

std::string join_errors(const std::vector<TypeError>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e.message();
  }
  return out;
}

}  // namespace

TypeCheckError::TypeCheckError(std::vector<TypeError> errors, SourceSpan span)
    : std::runtime_error(span.to_string() + ": " + join_errors(errors)),
      errors_(std::move(errors)),
      span_(span) {}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceSpan span;

  const std::string* head() const {
    if (!is_list || items.empty() || items.front().is_list) return nullptr;
    return &items.front().atom;
  }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_blank();
    }
    return out;
  }

 private:
  SourceSpan here() const { return {pos_, pos_, line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool delimiter(char c) {
    return c == '(' || c == ')' || c == ';' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  SExpr read() {
    SExpr node;
    node.span = here();
    char c = text_[pos_];
    if (c == ')') {
      SourceSpan span = here();
      span.end = pos_ + 1;
      throw ParseError("unexpected ')'", span);
    }
    if (c == '(') {
      node.is_list = true;
      advance();
      skip_blank();
      while (true) {
        if (pos_ >= text_.size()) {
          throw ParseError("expected ')' before end of input", node.span);
        }
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        node.items.push_back(read());
        skip_blank();
      }
    } else {
      while (pos_ < text_.size() && !delimiter(text_[pos_])) advance();
      node.atom = std::string(text_.substr(node.span.start, pos_ - node.span.start));
    }
    node.span.end = pos_;
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

[[noreturn]] void fail(const SExpr& at, const std::string& message) { throw ParseError(message, at.span); }

[[noreturn]] void type_fail(const SExpr& at, TypeError error) {
  throw TypeCheckError({std::move(error)}, at.span);
}

bool is_nat(const std::string& s) { return parse_natural(s).has_value(); }

class ProblemBuilder {
 public:
  Problem build(const std::vector<SExpr>& top) {
    Problem p;
    std::vector<Formula> asserts;
    for (const auto& item : top) {
      const std::string* head = item.head();
      if (!head) fail(item, "expected '(declare-set ...)', '(declare-int ...)' or '(assert ...)'");
      if (*head == "declare-set" || *head == "declare-int") {
        if (!asserts.empty()) fail(item, "declarations must precede assertions");
        if (item.items.size() != 2 || item.items[1].is_list) fail(item, "expected one identifier");
        const std::string& name = item.items[1].atom;
        if (!is_identifier(name)) fail(item.items[1], "expected identifier, got '" + name + "'");
        const Sort sort = *head == "declare-set" ? Sort::Set : Sort::Int;
        auto [it, fresh] = sorts_.emplace(name, sort);
        if (!fresh) {
          type_fail(item.items[1], {it->second == sort ? TypeError::Kind::DuplicateDeclaration
                                                       : TypeError::Kind::SortClash,
                                    name});
        }
        (sort == Sort::Set ? p.set_vars : p.int_vars).push_back(name);
      } else if (*head == "assert") {
        if (item.items.size() != 2) fail(item, "expected exactly one formula in assert");
        asserts.push_back(formula(item.items[1]));
      } else {
        fail(item.items.front(), "unknown command '" + *head + "'");
      }
    }
    if (asserts.empty()) {
      SourceSpan end_span;
      if (!top.empty()) end_span = top.back().span;
      throw ParseError("expected at least one '(assert ...)'", end_span);
    }
    p.formula = conjoin(std::move(asserts));
    return p;
  }

 private:
  Formula formula(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "true") return Formula::truth();
      if (e.atom == "false") return Formula::falsity();
      fail(e, "expected formula, got '" + e.atom + "'");
    }
    const std::string* head = e.head();
    if (!head) fail(e, "expected formula");
    const auto& args = e.items;
    const std::size_t argc = args.size() - 1;
    auto want = [&](std::size_t n) {
      if (argc != n) fail(e, "'" + *head + "' expects " + std::to_string(n) + " operands");
    };
    if (*head == "and" || *head == "or") {
      if (argc == 0) fail(e, "'" + *head + "' expects at least one operand");
      std::vector<Formula> parts;
      for (std::size_t i = 1; i < args.size(); ++i) parts.push_back(formula(args[i]));
      return *head == "and" ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    if (*head == "not") {
      want(1);
      return Formula::negate(formula(args[1]));
    }
    if (*head == "=") {
      want(2);
      const Sort l = sort_of(args[1]);
      const Sort r = sort_of(args[2]);
      if (l != r) {
        type_fail(e, {TypeError::Kind::SortClash, "="});
      }
      if (l == Sort::Set) return Formula::atom(Atom::set_eq(set(args[1]), set(args[2])));
      return Formula::atom(Atom::int_eq(integer(args[1]), integer(args[2])));
    }
    if (*head == "subset") {
      want(2);
      return Formula::atom(Atom::subset(set(args[1]), set(args[2])));
    }
    if (*head == "<=") {
      want(2);
      return Formula::atom(Atom::int_le(integer(args[1]), integer(args[2])));
    }
    if (*head == "<") {
      want(2);
      return Formula::atom(Atom::int_lt(integer(args[1]), integer(args[2])));
    }
    if (*head == "dvd") {
      want(2);
      auto divisor = args[1].is_list ? std::nullopt : parse_natural(args[1].atom);
      if (!divisor) fail(args[1], "expected natural divisor");
      if (*divisor < 1) type_fail(args[1], {TypeError::Kind::BadDivisor, {}, Sort::Int, 0});
      return Formula::atom(Atom::dvd(*divisor, integer(args[2])));
    }
    fail(e, "unknown formula operator '" + *head + "'");
  }

  Sort lookup(const SExpr& e, Sort wanted) {
    auto it = sorts_.find(e.atom);
    if (it == sorts_.end()) type_fail(e, {TypeError::Kind::UndeclaredVariable, e.atom, wanted});
    return it->second;
  }

  Sort sort_of(const SExpr& e) {
    if (!e.is_list) {
      if (is_nat(e.atom) || e.atom == "maxc") return Sort::Int;
      if (e.atom == "empty" || e.atom == "univ") return Sort::Set;
      if (!is_identifier(e.atom)) fail(e, "expected set or integer term, got '" + e.atom + "'");
      return lookup(e, Sort::Set);
    }
    const std::string* head = e.head();
    if (head) {
      if (*head == "union" || *head == "inter" || *head == "compl" || *head == "minus") return Sort::Set;
      if (*head == "+" || *head == "*" || *head == "card") return Sort::Int;
    }
    fail(e, "expected set or integer term");
  }

  SetTerm set(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "empty") return SetTerm::empty();
      if (e.atom == "univ") return SetTerm::univ();
      if (!is_identifier(e.atom)) fail(e, "expected set term, got '" + e.atom + "'");
      if (lookup(e, Sort::Set) != Sort::Set) type_fail(e, {TypeError::Kind::SortClash, e.atom, Sort::Set});
      return SetTerm::var(e.atom);
    }
    const std::string* head = e.head();
    if (!head) fail(e, "expected set term");
    const auto& args = e.items;
    if (*head == "compl") {
      if (args.size() != 2) fail(e, "'compl' expects 1 operand");
      return SetTerm::complement(set(args[1]));
    }
    if (*head == "union" || *head == "inter" || *head == "minus") {
      if (args.size() != 3) fail(e, "'" + *head + "' expects 2 operands");
      SetTerm l = set(args[1]);
      SetTerm r = set(args[2]);
      if (*head == "union") return SetTerm::unite(std::move(l), std::move(r));
      if (*head == "inter") return SetTerm::inter(std::move(l), std::move(r));
      return SetTerm::minus(std::move(l), std::move(r));
    }
    if (*head == "+" || *head == "*" || *head == "card") {
      type_fail(e, {TypeError::Kind::SortClash, *head, Sort::Set});
    }
    fail(e, "unknown set operator '" + *head + "'");
  }

  IntTerm integer(const SExpr& e) {
    if (!e.is_list) {
      if (auto n = parse_natural(e.atom)) return IntTerm::constant(std::move(*n));
      if (e.atom == "maxc") return IntTerm::maxc();
      if (e.atom == "empty" || e.atom == "univ") {
        type_fail(e, {TypeError::Kind::SortClash, e.atom, Sort::Int});
      }
      if (!is_identifier(e.atom)) fail(e, "expected integer term, got '" + e.atom + "'");
      if (lookup(e, Sort::Int) != Sort::Int) type_fail(e, {TypeError::Kind::SortClash, e.atom, Sort::Int});
      return IntTerm::var(e.atom);
    }
    const std::string* head = e.head();
    if (!head) fail(e, "expected integer term");
    const auto& args = e.items;
    if (*head == "+") {
      if (args.size() != 3) fail(e, "'+' expects 2 operands");
      return IntTerm::add(integer(args[1]), integer(args[2]));
    }
    if (*head == "*") {
      if (args.size() != 3) fail(e, "'*' expects 2 operands");
      auto coeff = args[1].is_list ? std::nullopt : parse_natural(args[1].atom);
      if (!coeff) fail(args[1], "expected natural coefficient");
      return IntTerm::mul(std::move(*coeff), integer(args[2]));
    }
    if (*head == "card") {
      if (args.size() != 2) fail(e, "'card' expects 1 operand");
      return IntTerm::card(set(args[1]));
    }
    if (*head == "union" || *head == "inter" || *head == "compl" || *head == "minus") {
      type_fail(e, {TypeError::Kind::SortClash, *head, Sort::Int});
    }
    fail(e, "unknown integer operator '" + *head + "'");
  }

  std::unordered_map<std::string, Sort> sorts_;
};

// ---------------------------------------------------------------- i-trees

bool parse_bool(const SExpr& e) {
  if (!e.is_list && e.atom == "true") return true;
  if (!e.is_list && e.atom == "false") return false;
  fail(e, "expected 'true' or 'false'");
}

ITreeNode parse_node(const SExpr& e) {
  const std::string* head = e.head();
  if (!head || *head != "node") fail(e, "expected '(node NAME ...)'");
  if (e.items.size() < 2 || e.items[1].is_list) fail(e, "expected node variable name");
  ITreeNode node;
  node.var = e.items[1].atom;
  if (!is_identifier(node.var)) fail(e.items[1], "expected identifier, got '" + node.var + "'");
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& item = e.items[i];
    if (item.is_list) {
      node.children.push_back(parse_node(item));
      continue;
    }
    if (i + 1 >= e.items.size()) fail(item, "option '" + item.atom + "' expects a value");
    const SExpr& value = e.items[++i];
    if (item.atom == ":lo") {
      auto n = value.is_list ? std::nullopt : parse_natural(value.atom);
      if (!n) fail(value, "expected natural lower bound");
      node.lo = *n;
    } else if (item.atom == ":hi") {
      if (!value.is_list && value.atom == "inf") {
        node.hi.reset();
      } else {
        auto n = value.is_list ? std::nullopt : parse_natural(value.atom);
        if (!n) fail(value, "expected natural upper bound or 'inf'");
        node.hi = *n;
      }
    } else if (item.atom == ":disjoint") {
      node.disjoint = parse_bool(value);
    } else if (item.atom == ":exhaustive") {
      node.exhaustive = parse_bool(value);
    } else {
      fail(item, "unknown node option '" + item.atom + "'");
    }
  }
  return node;
}

void print_node(std::string& out, const ITreeNode& n, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "(node ";
  out += n.var;
  if (n.lo != 0) out += " :lo " + to_decimal(n.lo);
  if (n.hi) out += " :hi " + to_decimal(*n.hi);
  if (n.disjoint) out += " :disjoint true";
  if (n.exhaustive) out += " :exhaustive true";
  for (const auto& c : n.children) {
    out += '\n';
    print_node(out, c, depth + 1);
  }
  out += ')';
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Reader reader(text);
  ProblemBuilder builder;
  Problem p = builder.build(reader.read_all());
  if (auto errors = type_check(p); !errors.empty()) {
    throw TypeCheckError(std::move(errors), SourceSpan{});
  }
  return p;
}

std::string print_problem(const Problem& p) {
  std::string out;
  for (const auto& s : p.set_vars) out += "(declare-set " + s + ")\n";
  for (const auto& s : p.int_vars) out += "(declare-int " + s + ")\n";
  out += "(assert " + to_sexpr(p.formula) + ")\n";
  return out;
}

ITree parse_itree(std::string_view text) {
  Reader reader(text);
  auto top = reader.read_all();
  if (top.size() != 1) {
    SourceSpan span = top.empty() ? SourceSpan{} : top[1].span;
    throw ParseError("expected exactly one '(itree ...)' form", span);
  }
  const SExpr& root = top.front();
  const std::string* head = root.head();
  if (!head || *head != "itree") fail(root, "expected '(itree ...)'");
  ITree t;
  for (std::size_t i = 1; i < root.items.size(); ++i) t.roots.push_back(parse_node(root.items[i]));
  return t;
}

std::string print_itree(const ITree& t) {
  std::string out = "(itree";
  for (const auto& r : t.roots) {
    out += '\n';
    print_node(out, r, 1);
  }
  out += ")\n";
  return out;
}

}  // namespace setcard
