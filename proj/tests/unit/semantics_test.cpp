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

#include <set>

#include "setcard/hardness.hpp"
#include "setcard/semantics.hpp"
#include "support.hpp"

namespace setcard {
namespace {

using testing::bitmask_model;
using testing::P;

TEST(Eval, EmptyHasNoElements) {
  Problem p = P("(assert (= (card empty) 0))");
  EXPECT_TRUE(eval_formula(p.formula, Model{}));
  EXPECT_TRUE(eval_formula(p.formula, bitmask_model(4, {})));
}

TEST(Eval, InclusionExclusionOnEveryModel) {
  Problem p = P(
      "(declare-set A) (declare-set B)"
      "(assert (= (+ (card (union A B)) (card (inter A B))) (+ (card A) (card B))))");
  std::size_t n = 0;
  testing::for_each_raw_model(p, 4, 0, [&](const Model& m) {
    EXPECT_TRUE(eval_formula(p.formula, m));
    ++n;
    return false;
  });
  EXPECT_EQ(n, 1U + 4U + 16U + 64U + 256U);
}

TEST(Eval, UnionEquationDirect) {
  Problem p = P("(declare-set A) (declare-set B) (declare-set C) (assert (= A (union B C)))");
  EXPECT_TRUE(eval_formula(p.formula, bitmask_model(3, {{"A", 0b011}, {"B", 0b001}, {"C", 0b010}})));
  EXPECT_FALSE(eval_formula(p.formula, bitmask_model(3, {{"A", 0b011}, {"B", 0b001}, {"C", 0b100}})));
}

TEST(Eval, UnassignedVariableThrows) {
  Problem p = P("(declare-set A) (assert (subset A A))");
  EXPECT_THROW(eval_formula(p.formula, Model{}), UnassignedVariable);
}

TEST(Eval, DivisibilityAndNegativeIntegers) {
  Problem p = P("(declare-int x) (assert (and (dvd 3 x) (< x 0)))");
  Model m;
  m.ints["x"] = -6;
  EXPECT_TRUE(eval_formula(p.formula, m));
  m.ints["x"] = -4;
  EXPECT_FALSE(eval_formula(p.formula, m));
}

TEST(Eval, MaxcIsUniverse) {
  Problem p = P("(declare-set A) (assert (= (card (compl A)) (+ maxc (* 0 (card A)))))");
  EXPECT_TRUE(eval_formula(p.formula, bitmask_model(3, {{"A", 0}})));
  EXPECT_FALSE(eval_formula(p.formula, bitmask_model(3, {{"A", 1}})));
}

TEST(ModelFromRegions, OneVariable) {
  Model m = model_from_regions({{"A"}, {2, 3}});
  EXPECT_EQ(m.universe, 5);
  EXPECT_EQ(m.sets.at("A"), ElementSet::range(2, 5));
}

TEST(ModelFromRegions, AllZero) {
  Model m = model_from_regions({{"A", "B"}, {0, 0, 0, 0}});
  EXPECT_EQ(m.universe, 0);
  EXPECT_TRUE(m.sets.at("A").empty());
  EXPECT_TRUE(m.sets.at("B").empty());
}

TEST(ModelFromRegions, SharedElement) {
  Model m = model_from_regions({{"A", "B"}, {0, 0, 0, 1}});
  EXPECT_EQ(m.universe, 1);
  EXPECT_EQ(m.sets.at("A"), ElementSet::of({0}));
  EXPECT_EQ(m.sets.at("B"), ElementSet::of({0}));
}

TEST(ModelFromRegions, HugeCountsStayExact) {
  const Integer big = pow_int(2, 256);
  Model m = model_from_regions({{"A"}, {big, big}});
  EXPECT_EQ(m.universe, 2 * big);
  EXPECT_EQ(m.sets.at("A").size(), big);
}

TEST(RegionVector, RoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng.below(4);
    RegionVector rv{{}, {}};
    for (std::size_t v = 0; v < n; ++v) rv.var_order.push_back("V" + std::to_string(v));
    for (std::size_t r = 0; r < (std::size_t{1} << n); ++r) rv.counts.emplace_back(static_cast<unsigned long>(rng.below(5)));
    Model m = model_from_regions(rv);
    EXPECT_EQ(region_vector_of(m, rv.var_order), rv);
  }
}

class RegionDependence : public ::testing::TestWithParam<std::uint64_t> {};

// Two models with the same region vector agree on every formula.
TEST_P(RegionDependence, PermutedElementsAgree) {
  GenProfile profile;
  profile.int_vars = 0;
  Problem p = gen_random(GetParam(), profile);
  Rng rng(GetParam() ^ 0x5eedULL);
  for (int round = 0; round < 10; ++round) {
    const unsigned n = static_cast<unsigned>(rng.below(5));
    std::map<std::string, unsigned> masks;
    for (const auto& s : p.set_vars) masks[s] = static_cast<unsigned>(rng.below(1U << n));
    Model a = bitmask_model(n, masks);
    // Reverse the element order to get a different model with the same regions.
    std::map<std::string, unsigned> reversed;
    for (const auto& [name, mask] : masks) {
      unsigned r = 0;
      for (unsigned e = 0; e < n; ++e) {
        if ((mask >> e) & 1U) r |= 1U << (n - 1 - e);
      }
      reversed[name] = r;
    }
    Model b = bitmask_model(n, reversed);
    ASSERT_EQ(region_vector_of(a, p.set_vars), region_vector_of(b, p.set_vars));
    EXPECT_EQ(eval_formula(p.formula, a), eval_formula(p.formula, b));
    Model c = model_from_regions(region_vector_of(a, p.set_vars));
    EXPECT_EQ(eval_formula(p.formula, a), eval_formula(p.formula, c));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RegionDependence, ::testing::Range<std::uint64_t>(0, 100));

TEST(ElementSet, MatchesStdSet) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    std::set<unsigned> xa, xb;
    std::vector<Integer> va, vb;
    for (unsigned e = 0; e < 20; ++e) {
      if (rng.chance(1, 2)) {
        xa.insert(e);
        va.emplace_back(e);
      }
      if (rng.chance(1, 3)) {
        xb.insert(e);
        vb.emplace_back(e);
      }
    }
    ElementSet a = ElementSet::of(va), b = ElementSet::of(vb);
    auto as_set = [](const ElementSet& s) {
      std::set<unsigned> out;
      for (const auto& e : s.elements()) out.insert(static_cast<unsigned>(e.get_ui()));
      return out;
    };
    std::set<unsigned> u = xa, in, comp;
    u.insert(xb.begin(), xb.end());
    for (auto e : xa) {
      if (xb.count(e)) in.insert(e);
    }
    for (unsigned e = 0; e < 20; ++e) {
      if (!xa.count(e)) comp.insert(e);
    }
    EXPECT_EQ(as_set(a.unite(b)), u);
    EXPECT_EQ(as_set(a.intersect(b)), in);
    EXPECT_EQ(as_set(a.complement(20)), comp);
    EXPECT_EQ(a.size(), xa.size());
    EXPECT_EQ(a.subset_of(b), std::includes(xb.begin(), xb.end(), xa.begin(), xa.end()));
    const unsigned off = static_cast<unsigned>(rng.below(xa.size() + 1));
    const unsigned cnt = static_cast<unsigned>(rng.below(xa.size() - off + 1));
    std::set<unsigned> sl;
    auto it = xa.begin();
    std::advance(it, off);
    for (unsigned k = 0; k < cnt; ++k, ++it) sl.insert(*it);
    EXPECT_EQ(as_set(a.slice(off, cnt)), sl);
  }
}

// The two oracle examples are first established by the raw-subset brute
// force, which never looks at region vectors.
TEST(Oracle, UnionTooSmallIsUnsatWithin) {
  Problem p = P(
      "(declare-set A) (declare-set B) (declare-set C)"
      "(assert (and (= (card A) 5) (= A (union B C)) (<= (card B) 2) (<= (card C) 2)))");
  EXPECT_FALSE(testing::raw_sat(p, 5, 0).has_value());
  OracleOptions o;
  o.region_bound = 6;
  EXPECT_FALSE(oracle_sat(p, o).sat);
}

TEST(Oracle, OverlapOneIsSatWithin) {
  Problem p = P(
      "(declare-set A) (declare-set B) (declare-set C)"
      "(assert (and (= A (union B C)) (= (card B) 2) (= (card C) 2) (= (card A) 3)))");
  ASSERT_TRUE(testing::raw_sat(p, 3, 0).has_value());
  OracleOptions o;
  o.region_bound = 4;
  OracleResult r = oracle_sat(p, o);
  ASSERT_TRUE(r.sat);
  EXPECT_TRUE(eval_formula(p.formula, r.model));
  EXPECT_EQ(r.model.sets.at("B").intersect(r.model.sets.at("C")).size(), 1);
}

TEST(Oracle, EmptyUniverse) {
  Problem p = P("(assert (= maxc 0))");
  OracleResult r = oracle_sat(p, {});
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model.universe, 0);
}

TEST(Oracle, LexicographicallyFirstModel) {
  // counts[0] (outside A) is the most significant digit, so the first model
  // puts both elements inside A.
  Problem p = P("(declare-set A) (assert (= maxc 2))");
  OracleResult r = oracle_sat(p, {});
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(region_vector_of(r.model, {"A"}).counts, (std::vector<Integer>{0, 2}));
}

TEST(Oracle, IntegersStartAtNegativeBound) {
  Problem p = P("(declare-int x) (assert (<= x 100))");
  OracleResult r = oracle_sat(p, {});
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model.ints.at("x"), -6);
}

TEST(Oracle, BudgetExceeded) {
  Problem p = P("(declare-set A) (declare-set B) (declare-set C) (assert false)");
  OracleOptions o;
  o.ceiling = 1000;
  EXPECT_THROW(oracle_sat(p, o), BudgetExceeded);
}

class OracleMonotone : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(OracleMonotone, SatSurvivesLargerBounds) {
  GenProfile profile;
  profile.set_vars = 1 + GetParam() % 2;
  profile.int_vars = 1;
  Problem p = gen_random(GetParam(), profile);
  OracleOptions small;
  small.region_bound = 2;
  small.int_bound = 2;
  OracleOptions large;
  large.region_bound = 4;
  large.int_bound = 3;
  OracleResult a = oracle_sat(p, small);
  OracleResult b = oracle_sat(p, large);
  if (a.sat) {
    EXPECT_TRUE(b.sat);
    EXPECT_TRUE(eval_formula(p.formula, a.model));
  }
  if (b.sat) EXPECT_TRUE(eval_formula(p.formula, b.model));
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleMonotone, ::testing::Range<std::uint64_t>(0, 150));

class OracleVsRaw : public ::testing::TestWithParam<std::uint64_t> {};

// With counts bounded by 1 and two set variables the universe is at most 4,
// which the raw-subset enumeration covers completely.
TEST_P(OracleVsRaw, AgreeOnTinyBounds) {
  GenProfile profile;
  profile.set_vars = 2;
  profile.int_vars = 1;
  profile.bounded = true;
  profile.bound = 1;
  Problem p = gen_random(GetParam(), profile);
  OracleOptions o;
  o.region_bound = 1;
  o.int_bound = 1;
  EXPECT_EQ(oracle_sat(p, o).sat, testing::raw_sat(p, 4, 1).has_value()) << print_problem(p);
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleVsRaw, ::testing::Range<std::uint64_t>(0, 100));

}  // namespace
}  // namespace setcard
