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

#include "setcard/semantics.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

#include "setcard/normalize.hpp"

namespace setcard {

// ---------------------------------------------------------------- ElementSet

namespace {

std::vector<ElementSet::Range> normalized(std::vector<ElementSet::Range> ranges) {
  std::erase_if(ranges, [](const ElementSet::Range& r) { return r.first >= r.second; });
  std::sort(ranges.begin(), ranges.end());
  std::vector<ElementSet::Range> out;
  for (auto& r : ranges) {
    if (!out.empty() && r.first <= out.back().second) {
      if (r.second > out.back().second) out.back().second = r.second;
    } else {
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

ElementSet ElementSet::range(const Integer& lo, const Integer& hi) {
  ElementSet out;
  out.add_range(lo, hi);
  return out;
}

ElementSet ElementSet::of(const std::vector<Integer>& elements) {
  std::vector<Range> ranges;
  ranges.reserve(elements.size());
  for (const auto& e : elements) ranges.emplace_back(e, e + 1);
  ElementSet out;
  out.ranges_ = normalized(std::move(ranges));
  return out;
}

void ElementSet::add_range(const Integer& lo, const Integer& hi) {
  if (lo >= hi) return;
  if (ranges_.empty() || lo > ranges_.back().second) {
    ranges_.emplace_back(lo, hi);
    return;
  }
  ranges_.emplace_back(lo, hi);
  ranges_ = normalized(std::move(ranges_));
}

ElementSet ElementSet::unite(const ElementSet& other) const {
  std::vector<Range> all = ranges_;
  all.insert(all.end(), other.ranges_.begin(), other.ranges_.end());
  ElementSet out;
  out.ranges_ = normalized(std::move(all));
  return out;
}

ElementSet ElementSet::intersect(const ElementSet& other) const {
  ElementSet out;
  std::size_t i = 0, j = 0;
  while (i < ranges_.size() && j < other.ranges_.size()) {
    const auto& a = ranges_[i];
    const auto& b = other.ranges_[j];
    const Integer& lo = a.first > b.first ? a.first : b.first;
    const Integer& hi = a.second < b.second ? a.second : b.second;
    if (lo < hi) out.ranges_.emplace_back(lo, hi);
    if (a.second < b.second) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

ElementSet ElementSet::complement(const Integer& universe) const {
  ElementSet out;
  Integer cursor = 0;
  for (const auto& r : ranges_) {
    if (r.first >= universe) break;
    if (cursor < r.first) out.ranges_.emplace_back(cursor, r.first);
    cursor = r.second;
  }
  if (cursor < universe) out.ranges_.emplace_back(cursor, universe);
  return out;
}

ElementSet ElementSet::slice(const Integer& offset, const Integer& count) const {
  ElementSet out;
  Integer skip = offset;
  Integer want = count;
  for (const auto& r : ranges_) {
    if (want <= 0) break;
    Integer len = r.second - r.first;
    if (skip >= len) {
      skip -= len;
      continue;
    }
    Integer lo = r.first + skip;
    skip = 0;
    Integer take = r.second - lo;
    if (take > want) take = want;
    out.ranges_.emplace_back(lo, lo + take);
    want -= take;
  }
  return out;
}

Integer ElementSet::size() const {
  Integer total = 0;
  for (const auto& r : ranges_) total += r.second - r.first;
  return total;
}

bool ElementSet::subset_of(const ElementSet& other) const { return intersect(other) == *this; }

bool ElementSet::below(const Integer& universe) const {
  return ranges_.empty() || ranges_.back().second <= universe;
}

std::vector<Integer> ElementSet::elements() const {
  std::vector<Integer> out;
  for (const auto& r : ranges_) {
    for (Integer e = r.first; e < r.second; ++e) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

ElementSet eval_set(const SetTerm& s, const Model& m) {
  switch (s.kind()) {
    case SetTerm::Kind::Var: {
      auto it = m.sets.find(s.name());
      if (it == m.sets.end()) throw UnassignedVariable(s.name());
      return it->second;
    }
    case SetTerm::Kind::Empty:
      return {};
    case SetTerm::Kind::Univ:
      return ElementSet::range(0, m.universe);
    case SetTerm::Kind::Union:
      return eval_set(s.left(), m).unite(eval_set(s.right(), m));
    case SetTerm::Kind::Inter:
      return eval_set(s.left(), m).intersect(eval_set(s.right(), m));
    case SetTerm::Kind::Compl:
      return eval_set(s.left(), m).complement(m.universe);
    case SetTerm::Kind::Minus:
      return eval_set(s.left(), m).intersect(eval_set(s.right(), m).complement(m.universe));
  }
  return {};
}

Integer eval_int(const IntTerm& t, const Model& m) {
  switch (t.kind()) {
    case IntTerm::Kind::Const:
      return t.value();
    case IntTerm::Kind::Var: {
      auto it = m.ints.find(t.name());
      if (it == m.ints.end()) throw UnassignedVariable(t.name());
      return it->second;
    }
    case IntTerm::Kind::Add:
      return eval_int(t.left(), m) + eval_int(t.right(), m);
    case IntTerm::Kind::MulConst:
      return t.value() * eval_int(t.left(), m);
    case IntTerm::Kind::Card:
      return eval_set(t.set(), m).size();
    case IntTerm::Kind::MaxC:
      return m.universe;
  }
  return 0;
}

bool eval_atom(const Atom& a, const Model& m) {
  switch (a.kind) {
    case Atom::Kind::SetEq:
      return eval_set(a.set_lhs, m) == eval_set(a.set_rhs, m);
    case Atom::Kind::Subset:
      return eval_set(a.set_lhs, m).subset_of(eval_set(a.set_rhs, m));
    case Atom::Kind::IntEq:
      return eval_int(a.int_lhs, m) == eval_int(a.int_rhs, m);
    case Atom::Kind::IntLe:
      return eval_int(a.int_lhs, m) <= eval_int(a.int_rhs, m);
    case Atom::Kind::IntLt:
      return eval_int(a.int_lhs, m) < eval_int(a.int_rhs, m);
    case Atom::Kind::Dvd: {
      Integer v = eval_int(a.int_lhs, m);
      return mpz_divisible_p(v.get_mpz_t(), a.divisor.get_mpz_t()) != 0;
    }
  }
  return false;
}

bool eval_formula(const Formula& f, const Model& m) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return eval_atom(f.atom(), m);
    case Formula::Kind::Not:
      return !eval_formula(f.inner(), m);
    case Formula::Kind::And:
      for (const auto& c : f.children()) {
        if (!eval_formula(c, m)) return false;
      }
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children()) {
        if (eval_formula(c, m)) return true;
      }
      return false;
  }
  return false;
}

Model model_from_regions(const RegionVector& rv, const std::map<std::string, Integer>& ints) {
  Model m;
  m.ints = ints;
  for (const auto& name : rv.var_order) m.sets[name];
  Integer offset = 0;
  for (std::size_t sig = 0; sig < rv.counts.size(); ++sig) {
    const Integer& count = rv.counts[sig];
    if (count == 0) continue;
    for (std::size_t i = 0; i < rv.var_order.size(); ++i) {
      if ((sig >> i) & 1U) m.sets[rv.var_order[i]].add_range(offset, offset + count);
    }
    offset += count;
  }
  m.universe = offset;
  return m;
}

RegionVector region_vector_of(const Model& m, const std::vector<std::string>& var_order) {
  RegionVector rv;
  rv.var_order = var_order;
  const std::size_t regions = std::size_t{1} << var_order.size();
  rv.counts.reserve(regions);
  for (std::size_t sig = 0; sig < regions; ++sig) {
    ElementSet cell = ElementSet::range(0, m.universe);
    for (std::size_t i = 0; i < var_order.size(); ++i) {
      auto it = m.sets.find(var_order[i]);
      if (it == m.sets.end()) throw UnassignedVariable(var_order[i]);
      cell = ((sig >> i) & 1U) ? cell.intersect(it->second)
                               : cell.intersect(it->second.complement(m.universe));
    }
    rv.counts.push_back(cell.size());
  }
  return rv;
}

// ---------------------------------------------------------------- oracle

namespace {

using Mask = std::vector<std::uint64_t>;

bool test_bit(const Mask& mask, std::size_t i) { return (mask[i / 64] >> (i % 64)) & 1U; }

/// Formula compiled against a fixed variable order. Cardinalities are read
/// off a region-count vector; arithmetic runs in int64 with overflow
/// detection and falls back to exact integers when needed.
class CompiledFormula {
 public:
  CompiledFormula(const Problem& p, const std::vector<std::string>& int_order)
      : regions_(std::size_t{1} << p.set_vars.size()) {
    for (std::size_t i = 0; i < p.set_vars.size(); ++i) set_index_[p.set_vars[i]] = i;
    for (std::size_t i = 0; i < int_order.size(); ++i) int_index_[int_order[i]] = i;
    root_ = formula(p.formula);
  }

  std::size_t mask_count() const { return masks_.size(); }

  /// Refreshes cached cardinalities for a new region vector.
  void load_regions(const std::vector<std::uint64_t>& counts) {
    counts_ = &counts;
    cards_.assign(masks_.size(), 0);
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      std::int64_t total = 0;
      for (std::size_t sig = 0; sig < regions_; ++sig) {
        if (test_bit(masks_[k], sig)) total += static_cast<std::int64_t>(counts[sig]);
      }
      cards_[k] = total;
    }
    universe_ = 0;
    for (auto c : counts) universe_ += static_cast<std::int64_t>(c);
    set_atom_cache_.assign(atoms_.size(), -1);
  }

  bool eval(const std::vector<std::int64_t>& ints) {
    ints_ = &ints;
    return eval_formula_node(root_);
  }

 private:
  enum class IKind { Const, Var, Add, Mul, Card, MaxC };
  struct INode {
    IKind kind;
    int left = -1;
    int right = -1;
    std::size_t index = 0;  // constant, variable or mask index
  };
  enum class FKind { True, False, Atom, And, Or, Not };
  struct FNode {
    FKind kind = FKind::True;
    std::vector<int> children;
    std::size_t atom = 0;
  };
  struct CAtom {
    Atom::Kind kind = Atom::Kind::SetEq;
    int lhs = -1;
    int rhs = -1;
    Mask zero_mask;  // set atoms: regions that must be empty
    Integer divisor;
  };

  Mask set_mask(const SetTerm& s) {
    Mask mask((regions_ + 63) / 64, 0);
    for (std::size_t sig = 0; sig < regions_; ++sig) {
      if (member(s, sig)) mask[sig / 64] |= std::uint64_t{1} << (sig % 64);
    }
    return mask;
  }

  bool member(const SetTerm& s, std::size_t sig) const {
    switch (s.kind()) {
      case SetTerm::Kind::Var: return (sig >> set_index_.at(s.name())) & 1U;
      case SetTerm::Kind::Empty: return false;
      case SetTerm::Kind::Univ: return true;
      case SetTerm::Kind::Union: return member(s.left(), sig) || member(s.right(), sig);
      case SetTerm::Kind::Inter: return member(s.left(), sig) && member(s.right(), sig);
      case SetTerm::Kind::Compl: return !member(s.left(), sig);
      case SetTerm::Kind::Minus: return member(s.left(), sig) && !member(s.right(), sig);
    }
    return false;
  }

  int integer(const IntTerm& t) {
    INode node{IKind::Const};
    switch (t.kind()) {
      case IntTerm::Kind::Const:
        node.kind = IKind::Const;
        node.index = add_const(t.value());
        break;
      case IntTerm::Kind::Var:
        node.kind = IKind::Var;
        node.index = int_index_.at(t.name());
        break;
      case IntTerm::Kind::Add:
        node.kind = IKind::Add;
        node.left = integer(t.left());
        node.right = integer(t.right());
        break;
      case IntTerm::Kind::MulConst:
        node.kind = IKind::Mul;
        node.index = add_const(t.value());
        node.left = integer(t.left());
        break;
      case IntTerm::Kind::Card:
        node.kind = IKind::Card;
        node.index = masks_.size();
        masks_.push_back(set_mask(t.set()));
        break;
      case IntTerm::Kind::MaxC:
        node.kind = IKind::MaxC;
        break;
    }
    inodes_.push_back(node);
    return static_cast<int>(inodes_.size() - 1);
  }

  std::size_t add_const(const Integer& v) {
    big_consts_.push_back(v);
    small_consts_.push_back(v.fits_slong_p() ? std::optional<std::int64_t>(v.get_si()) : std::nullopt);
    return big_consts_.size() - 1;
  }

  int formula(const Formula& f) {
    FNode node;
    switch (f.kind()) {
      case Formula::Kind::True: node.kind = FKind::True; break;
      case Formula::Kind::False: node.kind = FKind::False; break;
      case Formula::Kind::Not:
        node.kind = FKind::Not;
        node.children.push_back(formula(f.inner()));
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        node.kind = f.kind() == Formula::Kind::And ? FKind::And : FKind::Or;
        for (const auto& c : f.children()) node.children.push_back(formula(c));
        break;
      case Formula::Kind::Atom: {
        const Atom& a = f.atom();
        CAtom ca;
        ca.kind = a.kind;
        if (a.is_set_atom()) {
          Mask l = set_mask(a.set_lhs);
          Mask r = set_mask(a.set_rhs);
          ca.zero_mask.resize(l.size());
          for (std::size_t w = 0; w < l.size(); ++w) {
            ca.zero_mask[w] = a.kind == Atom::Kind::SetEq ? (l[w] ^ r[w]) : (l[w] & ~r[w]);
          }
        } else {
          ca.lhs = integer(a.int_lhs);
          if (a.kind == Atom::Kind::Dvd) {
            ca.divisor = a.divisor;
          } else {
            ca.rhs = integer(a.int_rhs);
          }
        }
        atoms_.push_back(std::move(ca));
        node.kind = FKind::Atom;
        node.atom = atoms_.size() - 1;
        break;
      }
    }
    fnodes_.push_back(std::move(node));
    return static_cast<int>(fnodes_.size() - 1);
  }

  std::optional<std::int64_t> small(int i) const {
    const INode& n = inodes_[static_cast<std::size_t>(i)];
    std::int64_t out = 0;
    switch (n.kind) {
      case IKind::Const: return small_consts_[n.index];
      case IKind::Var: return (*ints_)[n.index];
      case IKind::Card: return cards_[n.index];
      case IKind::MaxC: return universe_;
      case IKind::Add: {
        auto l = small(n.left);
        auto r = small(n.right);
        if (!l || !r || __builtin_add_overflow(*l, *r, &out)) return std::nullopt;
        return out;
      }
      case IKind::Mul: {
        auto c = small_consts_[n.index];
        auto v = small(n.left);
        if (!c || !v || __builtin_mul_overflow(*c, *v, &out)) return std::nullopt;
        return out;
      }
    }
    return std::nullopt;
  }

  Integer big(int i) const {
    const INode& n = inodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case IKind::Const: return big_consts_[n.index];
      case IKind::Var: return Integer(static_cast<long>((*ints_)[n.index]));
      case IKind::Card: return Integer(static_cast<long>(cards_[n.index]));
      case IKind::MaxC: return Integer(static_cast<long>(universe_));
      case IKind::Add: return big(n.left) + big(n.right);
      case IKind::Mul: return big_consts_[n.index] * big(n.left);
    }
    return 0;
  }

  bool eval_atom_node(std::size_t index) {
    const CAtom& a = atoms_[index];
    if (a.kind == Atom::Kind::SetEq || a.kind == Atom::Kind::Subset) {
      int& cached = set_atom_cache_[index];
      if (cached < 0) {
        cached = 1;
        for (std::size_t sig = 0; sig < regions_; ++sig) {
          if (test_bit(a.zero_mask, sig) && (*counts_)[sig] != 0) {
            cached = 0;
            break;
          }
        }
      }
      return cached == 1;
    }
    if (a.kind == Atom::Kind::Dvd) {
      auto v = small(a.lhs);
      if (v && a.divisor.fits_slong_p()) return *v % a.divisor.get_si() == 0;
      Integer bv = big(a.lhs);
      return mpz_divisible_p(bv.get_mpz_t(), a.divisor.get_mpz_t()) != 0;
    }
    auto l = small(a.lhs);
    auto r = small(a.rhs);
    if (l && r) {
      switch (a.kind) {
        case Atom::Kind::IntEq: return *l == *r;
        case Atom::Kind::IntLe: return *l <= *r;
        default: return *l < *r;
      }
    }
    Integer bl = big(a.lhs);
    Integer br = big(a.rhs);
    switch (a.kind) {
      case Atom::Kind::IntEq: return bl == br;
      case Atom::Kind::IntLe: return bl <= br;
      default: return bl < br;
    }
  }

  bool eval_formula_node(int i) {
    const FNode& n = fnodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Atom: return eval_atom_node(n.atom);
      case FKind::Not: return !eval_formula_node(n.children.front());
      case FKind::And:
        for (int c : n.children) {
          if (!eval_formula_node(c)) return false;
        }
        return true;
      case FKind::Or:
        for (int c : n.children) {
          if (eval_formula_node(c)) return true;
        }
        return false;
    }
    return false;
  }

  std::size_t regions_;
  std::unordered_map<std::string, std::size_t> set_index_;
  std::unordered_map<std::string, std::size_t> int_index_;
  std::vector<Mask> masks_;
  std::vector<INode> inodes_;
  std::vector<FNode> fnodes_;
  std::vector<CAtom> atoms_;
  std::vector<Integer> big_consts_;
  std::vector<std::optional<std::int64_t>> small_consts_;
  int root_ = -1;

  const std::vector<std::uint64_t>* counts_ = nullptr;
  const std::vector<std::int64_t>* ints_ = nullptr;
  std::vector<std::int64_t> cards_;
  std::int64_t universe_ = 0;
  std::vector<int> set_atom_cache_;
};

}  // namespace

OracleResult oracle_sat(const Problem& p, const OracleOptions& options) {
  constexpr std::uint64_t kMaxBound = std::uint64_t{1} << 31;
  if (options.region_bound > kMaxBound || options.int_bound > kMaxBound) {
    throw std::invalid_argument("oracle bounds must not exceed 2^31");
  }
  if (p.set_vars.size() > 20) throw BudgetExceeded("oracle: too many set variables");

  // Declared integer variables that never occur keep the first value of
  // their range; enumerating them cannot change the verdict.
  const FreeVars used = free_vars(p.formula);
  std::vector<std::string> enumerated;
  for (const auto& name : p.int_vars) {
    if (std::find(used.ints.begin(), used.ints.end(), name) != used.ints.end()) {
      enumerated.push_back(name);
    }
  }

  CompiledFormula compiled(p, enumerated);
  const std::size_t regions = std::size_t{1} << p.set_vars.size();
  const auto lowest = -static_cast<std::int64_t>(options.int_bound);
  const auto highest = static_cast<std::int64_t>(options.int_bound);

  std::vector<std::uint64_t> counts(regions, 0);
  std::vector<std::int64_t> ints(enumerated.size(), lowest);
  OracleResult result;

  while (true) {
    compiled.load_regions(counts);
    std::fill(ints.begin(), ints.end(), lowest);
    while (true) {
      if (++result.candidates > options.ceiling) {
        throw BudgetExceeded("oracle: enumeration ceiling of " + std::to_string(options.ceiling) +
                             " candidates reached");
      }
      if (compiled.eval(ints)) {
        RegionVector rv{p.set_vars, {}};
        for (auto c : counts) rv.counts.emplace_back(static_cast<unsigned long>(c));
        std::map<std::string, Integer> assignment;
        for (const auto& name : p.int_vars) assignment[name] = Integer(static_cast<long>(lowest));
        for (std::size_t i = 0; i < enumerated.size(); ++i) {
          assignment[enumerated[i]] = Integer(static_cast<long>(ints[i]));
        }
        result.model = model_from_regions(rv, assignment);
        if (!eval_formula(p.formula, result.model)) {
          throw std::logic_error("oracle: compiled evaluation disagrees with eval_formula");
        }
        result.sat = true;
        return result;
      }
      std::size_t k = ints.size();
      while (k > 0 && ints[k - 1] == highest) {
        ints[k - 1] = lowest;
        --k;
      }
      if (k == 0) break;
      ++ints[k - 1];
    }
    std::size_t k = counts.size();
    while (k > 0 && counts[k - 1] == options.region_bound) {
      counts[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
    ++counts[k - 1];
  }
  return result;
}

}  // namespace setcard
