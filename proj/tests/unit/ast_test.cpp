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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "setcard/ast.hpp"
#include "setcard/hardness.hpp"
#include "setcard/normalize.hpp"
#include "support.hpp"

namespace setcard {
namespace {

using testing::P;

SetTerm V(const char* n) { return SetTerm::var(n); }
IntTerm K(long v) { return IntTerm::constant(v); }

TEST(FreeVars, CardinalityAtom) {
  auto f = Formula::atom(Atom::int_eq(IntTerm::card(V("A")), IntTerm::var("k")));
  FreeVars fv = free_vars(f);
  EXPECT_EQ(fv.sets, std::vector<std::string>{"A"});
  EXPECT_EQ(fv.ints, std::vector<std::string>{"k"});
}

TEST(FreeVars, TrueHasNone) {
  FreeVars fv = free_vars(Formula::truth());
  EXPECT_TRUE(fv.sets.empty());
  EXPECT_TRUE(fv.ints.empty());
}

TEST(FreeVars, FirstOccurrenceOrder) {
  auto f = Formula::conj({Formula::atom(Atom::set_eq(V("A"), SetTerm::unite(V("B"), V("C")))),
                          Formula::atom(Atom::int_le(IntTerm::card(V("B")), IntTerm::var("k")))});
  FreeVars fv = free_vars(f);
  EXPECT_EQ(fv.sets, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(fv.ints, std::vector<std::string>{"k"});
}

TEST(TypeCheck, SubsetOfItselfIsFine) {
  Problem p{{"A"}, {}, Formula::atom(Atom::subset(V("A"), V("A")))};
  EXPECT_TRUE(type_check(p).empty());
}

TEST(TypeCheck, SetUsedAsInteger) {
  Problem p{{"A"}, {}, Formula::atom(Atom::int_eq(IntTerm::add(IntTerm::var("A"), K(1)), K(2)))};
  auto errors = type_check(p);
  ASSERT_FALSE(errors.empty());
  EXPECT_TRUE(errors[0].kind == TypeError::Kind::SortClash || errors[0].kind == TypeError::Kind::UndeclaredVariable);
  EXPECT_EQ(errors[0].name, "A");
}

TEST(TypeCheck, ZeroDivisor) {
  Problem p{{}, {"k"}, Formula::atom(Atom::dvd(0, IntTerm::var("k")))};
  auto errors = type_check(p);
  ASSERT_EQ(errors.size(), 1U);
  EXPECT_EQ(errors[0].kind, TypeError::Kind::BadDivisor);
  EXPECT_EQ(errors[0].position, 0);
}

TEST(TypeCheck, OverlappingNamespaces) {
  Problem p{{"A"}, {"A"}, Formula::truth()};
  EXPECT_FALSE(type_check(p).empty());
}

TEST(TypeCheck, Undeclared) {
  Problem p{{}, {}, Formula::atom(Atom::subset(V("A"), V("A")))};
  auto errors = type_check(p);
  ASSERT_FALSE(errors.empty());
  EXPECT_EQ(errors[0].kind, TypeError::Kind::UndeclaredVariable);
}

TEST(Nnf, OrderDuality) {
  auto le = Formula::atom(Atom::int_le(IntTerm::var("x"), IntTerm::var("y")));
  EXPECT_EQ(to_nnf(Formula::negate(le)), Formula::atom(Atom::int_lt(IntTerm::var("y"), IntTerm::var("x"))));
  auto lt = Formula::atom(Atom::int_lt(IntTerm::var("x"), IntTerm::var("y")));
  EXPECT_EQ(to_nnf(Formula::negate(lt)), Formula::atom(Atom::int_le(IntTerm::var("y"), IntTerm::var("x"))));
}

TEST(Nnf, NegatedSetEquality) {
  auto eq = Formula::atom(Atom::set_eq(V("A"), V("B")));
  auto expected = Formula::atom(Atom::int_le(
      K(1), IntTerm::card(SetTerm::unite(SetTerm::inter(V("A"), SetTerm::complement(V("B"))),
                                         SetTerm::inter(V("B"), SetTerm::complement(V("A")))))));
  EXPECT_EQ(to_nnf(Formula::negate(eq)), expected);
}

TEST(Nnf, NegatedIntEqualitySplits) {
  auto eq = Formula::atom(Atom::int_eq(IntTerm::var("x"), K(3)));
  auto expected = Formula::disj({Formula::atom(Atom::int_lt(IntTerm::var("x"), K(3))),
                                 Formula::atom(Atom::int_lt(K(3), IntTerm::var("x")))});
  EXPECT_EQ(to_nnf(Formula::negate(eq)), expected);
}

TEST(Nnf, NegatedSubset) {
  auto sub = Formula::atom(Atom::subset(V("A"), V("B")));
  auto expected = Formula::atom(Atom::int_le(K(1), IntTerm::card(SetTerm::inter(V("A"), SetTerm::complement(V("B"))))));
  EXPECT_EQ(to_nnf(Formula::negate(sub)), expected);
}

TEST(Nnf, DoubleNegation) {
  auto f = Formula::disj({Formula::atom(Atom::subset(V("A"), V("B"))), Formula::atom(Atom::dvd(2, IntTerm::var("k")))});
  EXPECT_EQ(to_nnf(Formula::negate(Formula::negate(f))), to_nnf(f));
}

TEST(Nnf, NegatedDvdStaysMarked) {
  auto d = Formula::atom(Atom::dvd(3, IntTerm::card(V("A"))));
  Formula n = to_nnf(Formula::negate(d));
  ASSERT_EQ(n.kind(), Formula::Kind::Not);
  EXPECT_EQ(n.inner(), d);
}

TEST(Nnf, MinusRemoved) {
  auto f = Formula::atom(Atom::set_eq(SetTerm::minus(V("A"), V("B")), SetTerm::empty()));
  EXPECT_EQ(to_nnf(f), Formula::atom(Atom::set_eq(SetTerm::inter(V("A"), SetTerm::complement(V("B"))), SetTerm::empty())));
}

TEST(Nnf, ConstantsFlip) {
  EXPECT_EQ(to_nnf(Formula::negate(Formula::truth())), Formula::falsity());
  EXPECT_EQ(to_nnf(Formula::negate(Formula::falsity())), Formula::truth());
}

bool contains_minus(const SetTerm& s) {
  if (s.kind() == SetTerm::Kind::Minus) return true;
  if (s.kind() == SetTerm::Kind::Compl) return contains_minus(s.left());
  if (s.is_binary()) return contains_minus(s.left()) || contains_minus(s.right());
  return false;
}

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return f.inner().kind() == Formula::Kind::Atom && f.inner().atom().kind == Atom::Kind::Dvd;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return std::all_of(f.children().begin(), f.children().end(), is_nnf);
    case Formula::Kind::Atom: {
      const Atom& a = f.atom();
      return !a.is_set_atom() || (!contains_minus(a.set_lhs) && !contains_minus(a.set_rhs));
    }
    default:
      return true;
  }
}

class NnfProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(NnfProperty, IdempotentShapedAndVarsPreserved) {
  GenProfile profile;
  profile.depth = 4;
  Problem p = gen_random(GetParam(), profile);
  Formula n = to_nnf(p.formula);
  EXPECT_TRUE(is_nnf(n));
  EXPECT_EQ(to_nnf(n), n);
  FreeVars a = free_vars(p.formula);
  FreeVars b = free_vars(n);
  EXPECT_EQ(std::set<std::string>(a.sets.begin(), a.sets.end()), std::set<std::string>(b.sets.begin(), b.sets.end()));
  EXPECT_EQ(std::set<std::string>(a.ints.begin(), a.ints.end()), std::set<std::string>(b.ints.begin(), b.ints.end()));
}

TEST_P(NnfProperty, SemanticsPreservedOnEnumeratedModels) {
  GenProfile profile;
  profile.set_vars = 2;
  profile.int_vars = 1;
  Problem p = gen_random(GetParam(), profile);
  Formula n = to_nnf(p.formula);
  std::size_t checked = 0;
  testing::for_each_raw_model(p, 2, 2, [&](const Model& m) {
    EXPECT_EQ(eval_formula(p.formula, m), eval_formula(n, m)) << print_problem(p);
    ++checked;
    return false;
  });
  EXPECT_GT(checked, 0U);
}

INSTANTIATE_TEST_SUITE_P(Seeds, NnfProperty, ::testing::Range<std::uint64_t>(0, 200));

TEST(Ast, StructuralEquality) {
  EXPECT_EQ(SetTerm::unite(V("A"), V("B")), SetTerm::unite(V("A"), V("B")));
  EXPECT_NE(SetTerm::unite(V("A"), V("B")), SetTerm::unite(V("B"), V("A")));
  EXPECT_EQ(K(5), IntTerm::constant(5));
}

TEST(Ast, EmptyJunctionRejected) {
  EXPECT_THROW(Formula::conj({}), std::invalid_argument);
  EXPECT_THROW(Formula::disj({}), std::invalid_argument);
}

TEST(Ast, Identifiers) {
  EXPECT_TRUE(is_identifier("A_1"));
  EXPECT_TRUE(is_identifier("_x"));
  EXPECT_FALSE(is_identifier("1A"));
  EXPECT_FALSE(is_identifier("union"));
  EXPECT_FALSE(is_identifier(""));
}

TEST(Ast, ProblemFromText) {
  Problem p = P("(declare-set A) (declare-int k) (assert (= (card A) k))");
  EXPECT_EQ(p.set_vars, std::vector<std::string>{"A"});
  EXPECT_EQ(p.int_vars, std::vector<std::string>{"k"});
}

}  // namespace
}  // namespace setcard
