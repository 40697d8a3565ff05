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

#include "setcard/itree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace setcard {

namespace {

using Bound = std::optional<Integer>;  // nullopt is +infinity

Bound min_bound(const Bound& a, const Bound& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

Bound add_bound(const Bound& a, const Bound& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

/// Preorder view of a forest; parents precede children.
template <typename NodeT>
struct Flat {
  std::vector<NodeT*> nodes;
  std::vector<int> parent;
  std::vector<std::vector<int>> kids;
  std::vector<int> root_of;

  template <typename Roots>
  explicit Flat(Roots& roots) {
    build(roots);
  }

  std::size_t size() const { return nodes.size(); }

 private:
  template <typename Roots>
  void build(Roots& roots) {
    std::vector<std::pair<NodeT*, int>> stack;
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.emplace_back(&*it, -1);
    while (!stack.empty()) {
      auto [node, par] = stack.back();
      stack.pop_back();
      const int id = static_cast<int>(nodes.size());
      nodes.push_back(node);
      parent.push_back(par);
      kids.emplace_back();
      root_of.push_back(par < 0 ? id : root_of[static_cast<std::size_t>(par)]);
      if (par >= 0) kids[static_cast<std::size_t>(par)].push_back(id);
      for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) stack.emplace_back(&*it, id);
    }
  }
};

using ConstFlat = Flat<const ITreeNode>;

struct Derived {
  std::vector<Integer> lo;
  std::vector<Bound> hi;
  bool sat = true;
};

Derived bottom_up(const ConstFlat& f) {
  Derived d;
  d.lo.resize(f.size());
  d.hi.resize(f.size());
  for (std::size_t i = f.size(); i-- > 0;) {
    const ITreeNode& n = *f.nodes[i];
    Integer child_lo = 0;
    Bound child_hi = Integer(0);
    for (int k : f.kids[i]) {
      const auto ku = static_cast<std::size_t>(k);
      if (n.disjoint) child_lo += d.lo[ku];
      else if (d.lo[ku] > child_lo) child_lo = d.lo[ku];
      child_hi = add_bound(child_hi, d.hi[ku]);
    }
    d.lo[i] = std::max(n.lo, child_lo);
    d.hi[i] = n.exhaustive ? min_bound(n.hi, child_hi) : n.hi;
    if (d.hi[i] && d.lo[i] > *d.hi[i]) d.sat = false;
  }
  return d;
}

/// Greedy child values for a parent pinned to `value`.
void pin_children(const ConstFlat& f, const Derived& d, std::size_t i, const Integer& value,
                  std::vector<Integer>& out) {
  const ITreeNode& n = *f.nodes[i];
  Integer sum = 0;
  for (int k : f.kids[i]) {
    out[static_cast<std::size_t>(k)] = d.lo[static_cast<std::size_t>(k)];
    sum += d.lo[static_cast<std::size_t>(k)];
  }
  if (!n.exhaustive || sum >= value) return;
  Integer deficit = value - sum;
  for (int k : f.kids[i]) {
    if (deficit == 0) break;
    const auto ku = static_cast<std::size_t>(k);
    Bound cap = n.disjoint ? d.hi[ku] : min_bound(d.hi[ku], value);
    Integer room = cap ? *cap - out[ku] : deficit;
    Integer step = std::min(room, deficit);
    out[ku] += step;
    deficit -= step;
  }
}

std::vector<Integer> witness_values(const ConstFlat& f, const Derived& d) {
  std::vector<Integer> value(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.parent[i] < 0) value[i] = d.lo[i];
    if (!f.kids[i].empty()) pin_children(f, d, i, value[i], value);
  }
  return value;
}

SetTerm union_of(const std::vector<ITreeNode>& children) {
  SetTerm acc = SetTerm::var(children.front().var);
  for (std::size_t i = 1; i < children.size(); ++i) acc = SetTerm::unite(acc, SetTerm::var(children[i].var));
  return acc;
}

struct Constraint {
  enum class Kind { Lo, Hi, Edge, Disjoint, Exhaustive };
  Kind kind;
  std::string a;  // the node, or the child for edges
  std::string b;  // parent for edges, second child for pairs
  Formula formula;
};

std::vector<Constraint> constraints_of(const ITree& t) {
  std::vector<Constraint> out;
  ConstFlat f(t.roots);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ITreeNode& n = *f.nodes[i];
    const SetTerm self = SetTerm::var(n.var);
    if (n.lo > 0) {
      out.push_back({Constraint::Kind::Lo, n.var, {},
                     Formula::atom(Atom::int_le(IntTerm::constant(n.lo), IntTerm::card(self)))});
    }
    if (n.hi) {
      out.push_back({Constraint::Kind::Hi, n.var, {},
                     Formula::atom(Atom::int_le(IntTerm::card(self), IntTerm::constant(*n.hi)))});
    }
    for (const auto& c : n.children) {
      out.push_back({Constraint::Kind::Edge, c.var, n.var, Formula::atom(Atom::subset(SetTerm::var(c.var), self))});
    }
    if (n.disjoint) {
      for (std::size_t x = 0; x < n.children.size(); ++x) {
        for (std::size_t y = x + 1; y < n.children.size(); ++y) {
          const auto& cx = n.children[x].var;
          const auto& cy = n.children[y].var;
          out.push_back({Constraint::Kind::Disjoint, cx, cy,
                         Formula::atom(Atom::set_eq(SetTerm::inter(SetTerm::var(cx), SetTerm::var(cy)),
                                                    SetTerm::empty()))});
        }
      }
    }
    if (n.exhaustive) {
      out.push_back({Constraint::Kind::Exhaustive, n.var, {}, Formula::atom(Atom::set_eq(self, union_of(n.children)))});
    }
  }
  return out;
}

}  // namespace

void validate(const ITree& t) {
  std::set<std::string> seen;
  ConstFlat f(t.roots);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ITreeNode& n = *f.nodes[i];
    if (!is_identifier(n.var)) throw MalformedTree("bad variable name '" + n.var + "'");
    if (!seen.insert(n.var).second) throw MalformedTree("variable '" + n.var + "' occurs twice");
    if (n.lo < 0) throw MalformedTree("negative lower bound at '" + n.var + "'");
    if (n.hi && n.lo > *n.hi) {
      throw MalformedTree("empty interval [" + to_decimal(n.lo) + ", " + to_decimal(*n.hi) + "] at '" + n.var + "'");
    }
    if (n.children.empty() && (n.disjoint || n.exhaustive)) {
      throw MalformedTree("decomposition flag on leaf '" + n.var + "'");
    }
  }
}

std::size_t tree_size(const ITree& t) {
  std::size_t n = 0;
  std::vector<const ITreeNode*> stack;
  for (const auto& r : t.roots) stack.push_back(&r);
  while (!stack.empty()) {
    const ITreeNode* node = stack.back();
    stack.pop_back();
    ++n;
    for (const auto& c : node->children) stack.push_back(&c);
  }
  return n;
}

Formula itree_semantics(const ITree& t) {
  validate(t);
  std::vector<Formula> parts;
  for (auto& c : constraints_of(t)) parts.push_back(std::move(c.formula));
  return conjoin(std::move(parts));
}

Problem itree_problem(const ITree& t) {
  Problem p;
  ConstFlat f(t.roots);
  for (const auto* n : f.nodes) p.set_vars.push_back(n->var);
  p.formula = itree_semantics(t);
  return p;
}

ITreeSat itree_sat(const ITree& t) {
  validate(t);
  ConstFlat f(t.roots);
  Derived d = bottom_up(f);
  ITreeSat out;
  if (!d.sat) return out;
  out.sat = true;
  std::vector<Integer> value = witness_values(f, d);
  for (std::size_t i = 0; i < f.size(); ++i) out.witness[f.nodes[i]->var] = std::move(value[i]);
  return out;
}

Model realize_witness(const ITree& t, const std::map<std::string, Integer>& witness) {
  ConstFlat f(t.roots);
  std::vector<ElementSet> sets(f.size());
  auto size_of = [&](std::size_t i) -> const Integer& {
    auto it = witness.find(f.nodes[i]->var);
    if (it == witness.end()) throw std::invalid_argument("realize_witness: no value for '" + f.nodes[i]->var + "'");
    return it->second;
  };
  Model m;
  m.universe = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Integer& w = size_of(i);
    if (f.parent[i] < 0) {
      sets[i] = ElementSet::range(m.universe, m.universe + w);
      m.universe += w;
    }
    const ITreeNode& n = *f.nodes[i];
    Integer offset = 0;
    for (int k : f.kids[i]) {
      const auto ku = static_cast<std::size_t>(k);
      const Integer& c = size_of(ku);
      if (c > w) throw std::invalid_argument("realize_witness: child larger than parent at '" + n.var + "'");
      if (n.disjoint) {
        sets[ku] = sets[i].slice(offset, c);
        offset += c;
      } else if (n.exhaustive && w > 0) {
        // Cyclic layout: consecutive children wrap around the parent.
        Integer first = std::min(c, Integer(w - offset));
        sets[ku] = sets[i].slice(offset, first).unite(sets[i].slice(0, c - first));
        offset = (offset + c) % w;
      } else {
        sets[ku] = sets[i].slice(0, c);
      }
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) m.sets[f.nodes[i]->var] = std::move(sets[i]);
  return m;
}

std::map<std::string, Interval> tighten(const ITree& t) {
  validate(t);
  ConstFlat f(t.roots);
  Derived d = bottom_up(f);
  if (!d.sat) throw std::domain_error("tighten: the tree is unsatisfiable");
  std::vector<Integer> lo = d.lo;
  std::vector<Bound> hi = d.hi;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ITreeNode& n = *f.nodes[i];
    if (f.kids[i].empty()) continue;
    Integer sum_lo = 0;
    Integer finite_hi = 0;
    std::size_t infinite_hi = 0;
    for (int k : f.kids[i]) {
      const auto ku = static_cast<std::size_t>(k);
      sum_lo += d.lo[ku];
      if (d.hi[ku]) finite_hi += *d.hi[ku];
      else ++infinite_hi;
    }
    for (int k : f.kids[i]) {
      const auto ku = static_cast<std::size_t>(k);
      Bound cap = hi[i];
      if (n.disjoint && cap) cap = *cap - (sum_lo - d.lo[ku]);
      hi[ku] = min_bound(hi[ku], cap);
      // Siblings can absorb at most their combined HI of the parent's elements.
      const bool rest_finite = infinite_hi == (d.hi[ku] ? 0U : 1U);
      if (n.exhaustive && rest_finite) {
        Integer rest = finite_hi - (d.hi[ku] ? *d.hi[ku] : Integer(0));
        if (lo[i] - rest > lo[ku]) lo[ku] = lo[i] - rest;
      }
    }
  }
  std::map<std::string, Interval> out;
  for (std::size_t i = 0; i < f.size(); ++i) out[f.nodes[i]->var] = {lo[i], hi[i]};
  return out;
}

// ---------------------------------------------------------------- entailment

namespace {

struct Entailer {
  ITree t1;
  ConstFlat flat;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::string, Interval> star;
  Formula semantics1;
  std::size_t budget;

  Entailer(ITree tree, std::size_t pattern_budget)
      : t1(std::move(tree)), flat(t1.roots), semantics1(itree_semantics(t1)), budget(pattern_budget) {
    for (std::size_t i = 0; i < flat.size(); ++i) index[flat.nodes[i]->var] = i;
    star = tighten(t1);
  }

  std::size_t id(const std::string& v) const { return index.at(v); }

  bool ancestor_or_self(std::size_t anc, std::size_t node) const {
    for (int cur = static_cast<int>(node); cur >= 0; cur = flat.parent[static_cast<std::size_t>(cur)]) {
      if (static_cast<std::size_t>(cur) == anc) return true;
    }
    return false;
  }

  bool always_empty(std::size_t i) const {
    const auto& iv = star.at(flat.nodes[i]->var);
    return iv.hi && *iv.hi == 0;
  }

  bool separated(std::size_t a, std::size_t b) const {
    if (flat.root_of[a] != flat.root_of[b]) return false;
    std::vector<int> path;
    for (int cur = static_cast<int>(a); cur >= 0; cur = flat.parent[static_cast<std::size_t>(cur)]) path.push_back(cur);
    for (int cur = static_cast<int>(b); cur >= 0; cur = flat.parent[static_cast<std::size_t>(cur)]) {
      if (std::find(path.begin(), path.end(), cur) != path.end()) {
        const auto lca = static_cast<std::size_t>(cur);
        return lca != a && lca != b && flat.nodes[lca]->disjoint;
      }
    }
    return false;
  }

  /// Every element of `node` lies in some member of `parts`.
  bool covered(std::size_t node, const std::vector<std::size_t>& parts) const {
    for (auto p : parts) {
      if (ancestor_or_self(p, node)) return true;
    }
    if (always_empty(node)) return true;
    if (!flat.nodes[node]->exhaustive) return false;
    for (int k : flat.kids[node]) {
      if (!covered(static_cast<std::size_t>(k), parts)) return false;
    }
    return true;
  }

  Model pinned_model(std::size_t node, const Integer& value) const {
    ITree copy = t1;
    Flat<ITreeNode> f(copy.roots);
    f.nodes[node]->lo = value;
    f.nodes[node]->hi = value;
    ITreeSat s = itree_sat(copy);
    if (!s.sat) throw std::logic_error("pinned value outside the tightened interval");
    return realize_witness(copy, s.witness);
  }

  enum class Search { Found, None, Exhausted };

  /// Looks for a model of t1 with an element inside every `required` node and
  /// outside every `forbidden` node.
  Search find_pattern(const std::vector<std::size_t>& required, const std::vector<std::size_t>& forbidden,
                      Model& model, std::size_t& tried) const {
    const std::size_t n = flat.size();
    std::vector<char> relevant_root(n, 0), forced(n, 0), banned(n, 0);
    for (auto r : required) {
      relevant_root[static_cast<std::size_t>(flat.root_of[r])] = 1;
      for (int cur = static_cast<int>(r); cur >= 0; cur = flat.parent[static_cast<std::size_t>(cur)]) {
        forced[static_cast<std::size_t>(cur)] = 1;
      }
    }
    for (auto b : forbidden) {
      if (forced[b]) return Search::None;
      banned[b] = 1;
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
      if (relevant_root[static_cast<std::size_t>(flat.root_of[i])]) order.push_back(i);
    }
    std::vector<char> in(n, 0);
    std::vector<int> in_kids(n, 0);
    Search result = Search::None;

    std::function<bool(std::size_t)> step = [&](std::size_t pos) -> bool {
      if (pos == order.size()) {
        if (++tried > budget) {
          result = Search::Exhausted;
          return true;
        }
        if (attempt(in, model)) {
          result = Search::Found;
          return true;
        }
        return false;
      }
      const std::size_t i = order[pos];
      const int par = flat.parent[i];
      const bool parent_in = par < 0 || in[static_cast<std::size_t>(par)];
      std::vector<char> options;
      if (forced[i]) {
        options = {1};
      } else if (banned[i] || !parent_in) {
        options = {0};
      } else {
        options = {0, 1};
      }
      for (char choice : options) {
        if (choice && par >= 0) {
          const auto pu = static_cast<std::size_t>(par);
          if (flat.nodes[pu]->disjoint && in_kids[pu] >= 1) continue;
        }
        if (!choice && par >= 0) {
          const auto pu = static_cast<std::size_t>(par);
          const bool last = flat.kids[pu].back() == static_cast<int>(i);
          if (last && in[pu] && flat.nodes[pu]->exhaustive && in_kids[pu] == 0) continue;
        }
        in[i] = choice;
        if (choice && par >= 0) ++in_kids[static_cast<std::size_t>(par)];
        bool stop = step(pos + 1);
        if (choice && par >= 0) --in_kids[static_cast<std::size_t>(par)];
        in[i] = 0;
        if (stop) return true;
      }
      return false;
    };
    step(0);
    return result;
  }

  /// Shifts the intervals of the nodes in the pattern down by one, solves,
  /// and adds back one element with that membership.
  bool attempt(const std::vector<char>& in, Model& model) const {
    ITree copy = t1;
    Flat<ITreeNode> f(copy.roots);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!in[i]) continue;
      ITreeNode& node = *f.nodes[i];
      if (node.hi) {
        if (*node.hi == 0) return false;
        *node.hi -= 1;
      }
      if (node.lo > 0) node.lo -= 1;
    }
    ITreeSat s = itree_sat(copy);
    if (!s.sat) return false;
    model = realize_witness(copy, s.witness);
    const Integer extra = model.universe;
    model.universe += 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (in[i]) model.sets[f.nodes[i]->var].add_range(extra, extra + 1);
    }
    return true;
  }
};

ITree with_extra_roots(const ITree& t1, const ITree& t2) {
  ITree out = t1;
  std::set<std::string> have;
  ConstFlat f1(t1.roots);
  for (const auto* n : f1.nodes) have.insert(n->var);
  ConstFlat f2(t2.roots);
  for (const auto* n : f2.nodes) {
    if (!have.count(n->var)) out.roots.push_back(ITreeNode{n->var, 0, std::nullopt, {}, false, false});
  }
  return out;
}

}  // namespace

EntailResult itree_entails(const ITree& t1, const ITree& t2, const ITreeEntailOptions& options) {
  validate(t1);
  validate(t2);
  if (!itree_sat(t1).sat) return EntailYes{};
  Entailer e(with_extra_roots(t1, t2), options.pattern_budget);

  std::size_t tried = 0;
  for (const auto& c : constraints_of(t2)) {
    std::optional<Model> counter;
    bool exhausted = false;
    auto search = [&](const std::vector<std::size_t>& req, const std::vector<std::size_t>& forb) {
      if (counter || exhausted) return;
      Model m;
      switch (e.find_pattern(req, forb, m, tried)) {
        case Entailer::Search::Found: counter = std::move(m); break;
        case Entailer::Search::Exhausted: exhausted = true; break;
        case Entailer::Search::None: break;
      }
    };

    switch (c.kind) {
      case Constraint::Kind::Lo: {
        const auto& iv = e.star.at(c.a);
        const Integer want = c.formula.atom().int_lhs.value();
        if (iv.lo < want) counter = e.pinned_model(e.id(c.a), iv.lo);
        break;
      }
      case Constraint::Kind::Hi: {
        const auto& iv = e.star.at(c.a);
        const Integer cap = c.formula.atom().int_rhs.value();
        if (!iv.hi || *iv.hi > cap) counter = e.pinned_model(e.id(c.a), std::max(iv.lo, Integer(cap + 1)));
        break;
      }
      case Constraint::Kind::Edge: {
        const auto child = e.id(c.a);
        const auto parent = e.id(c.b);
        if (!e.ancestor_or_self(parent, child) && !e.always_empty(child)) search({child}, {parent});
        break;
      }
      case Constraint::Kind::Disjoint: {
        const auto x = e.id(c.a);
        const auto y = e.id(c.b);
        if (!e.separated(x, y) && !e.always_empty(x) && !e.always_empty(y)) search({x, y}, {});
        break;
      }
      case Constraint::Kind::Exhaustive: {
        const auto node = e.id(c.a);
        ConstFlat f2(t2.roots);
        std::vector<std::size_t> parts;
        for (std::size_t i = 0; i < f2.size(); ++i) {
          if (f2.nodes[i]->var != c.a) continue;
          for (int k : f2.kids[i]) parts.push_back(e.id(f2.nodes[static_cast<std::size_t>(k)]->var));
        }
        if (!e.covered(node, parts)) search({node}, parts);
        for (auto part : parts) {
          if (!e.ancestor_or_self(node, part) && !e.always_empty(part)) search({part}, {node});
        }
        break;
      }
    }

    if (exhausted) return EntailUnknown{"pattern-budget"};
    if (counter) {
      if (!eval_formula(e.semantics1, *counter) || eval_formula(c.formula, *counter)) {
        return EntailUnknown{"counter-model-check-failed"};
      }
      return EntailNo{std::move(*counter), to_sexpr(c.formula)};
    }
  }
  return EntailYes{};
}

}  // namespace setcard
