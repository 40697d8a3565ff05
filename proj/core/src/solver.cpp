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

#include "setcard/solver.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "setcard/normalize.hpp"

namespace setcard {

// ---------------------------------------------------------------- RegionSet

RegionSet::RegionSet(std::size_t num_vars, bool full)
    : num_vars_(num_vars), words_(((std::size_t{1} << num_vars) + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  clear_padding();
}

RegionSet RegionSet::of_var(std::size_t num_vars, std::size_t index) {
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
  RegionSet out(num_vars);
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    if (index < 6) {
      out.words_[w] = kPatterns[index];
    } else {
      // Bit `index` of the signature equals bit `index - 6` of the word number.
      out.words_[w] = ((w >> (index - 6)) & 1U) ? ~std::uint64_t{0} : 0;
    }
  }
  out.clear_padding();
  return out;
}

void RegionSet::clear_padding() {
  const std::size_t bits = universe_size();
  if (bits < 64) words_[0] &= (std::uint64_t{1} << bits) - 1;
}

bool RegionSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t RegionSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> RegionSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

RegionSet RegionSet::operator|(const RegionSet& o) const {
  RegionSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= o.words_[w];
  return out;
}

RegionSet RegionSet::operator&(const RegionSet& o) const {
  RegionSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= o.words_[w];
  return out;
}

RegionSet RegionSet::operator~() const {
  RegionSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_padding();
  return out;
}

namespace {

RegionSet region_set_impl(const SetTerm& s, const std::unordered_map<std::string, std::size_t>& index,
                          std::size_t n) {
  switch (s.kind()) {
    case SetTerm::Kind::Var: {
      auto it = index.find(s.name());
      if (it == index.end()) throw std::invalid_argument("region_set: unknown set variable '" + s.name() + "'");
      return RegionSet::of_var(n, it->second);
    }
    case SetTerm::Kind::Empty: return RegionSet(n);
    case SetTerm::Kind::Univ: return RegionSet(n, true);
    case SetTerm::Kind::Union: return region_set_impl(s.left(), index, n) | region_set_impl(s.right(), index, n);
    case SetTerm::Kind::Inter: return region_set_impl(s.left(), index, n) & region_set_impl(s.right(), index, n);
    case SetTerm::Kind::Compl: return ~region_set_impl(s.left(), index, n);
    case SetTerm::Kind::Minus:
      return region_set_impl(s.left(), index, n) & ~region_set_impl(s.right(), index, n);
  }
  return RegionSet(n);
}

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& order) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  return index;
}

}  // namespace

RegionSet region_set(const SetTerm& s, const std::vector<std::string>& var_order) {
  return region_set_impl(s, index_of(var_order), var_order.size());
}

std::string region_name(std::size_t sig, std::size_t num_vars) {
  std::string bits;
  for (std::size_t i = 0; i < num_vars; ++i) bits += ((sig >> i) & 1U) ? '1' : '0';
  return bits;
}

std::string to_string(const VennConstraint& c, std::size_t num_vars) {
  std::string out;
  for (const auto& [var, coeff] : c.coeffs) {
    if (!out.empty()) out += coeff < 0 ? " - " : " + ";
    else if (coeff < 0) out += "-";
    Integer mag = abs(coeff);
    if (mag != 1) out += to_decimal(mag) + "*";
    out += var.kind == VennVar::Kind::Region ? "l_" + region_name(var.region, num_vars) : var.name;
  }
  if (out.empty()) out = "0";
  out += c.rel == Relation::Eq ? " = " : " <= ";
  out += to_decimal(c.rhs);
  return out;
}

// ---------------------------------------------------------------- reduction

namespace {

struct Linear {
  std::map<VennVar, Integer> coeffs;
  Integer constant = 0;

  void add(const Linear& o, const Integer& scale) {
    for (const auto& [v, c] : o.coeffs) coeffs[v] += scale * c;
    constant += scale * o.constant;
  }
};

class Linearizer {
 public:
  Linearizer(const std::vector<std::string>& order)
      : index_(index_of(order)), n_(order.size()) {}

  Linear term(const IntTerm& t) const {
    Linear out;
    switch (t.kind()) {
      case IntTerm::Kind::Const:
        out.constant = t.value();
        break;
      case IntTerm::Kind::Var:
        out.coeffs[{VennVar::Kind::Int, 0, t.name()}] = 1;
        break;
      case IntTerm::Kind::Add:
        out = term(t.left());
        out.add(term(t.right()), 1);
        break;
      case IntTerm::Kind::MulConst:
        out.add(term(t.left()), t.value());
        break;
      case IntTerm::Kind::Card:
        for (auto sig : region_set_impl(t.set(), index_, n_).members()) {
          out.coeffs[{VennVar::Kind::Region, sig, {}}] += 1;
        }
        break;
      case IntTerm::Kind::MaxC:
        for (std::size_t sig = 0; sig < (std::size_t{1} << n_); ++sig) {
          out.coeffs[{VennVar::Kind::Region, sig, {}}] += 1;
        }
        break;
    }
    return out;
  }

  RegionSet set(const SetTerm& s) const { return region_set_impl(s, index_, n_); }
  std::size_t n() const { return n_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_;
};

/// lin rel 0, moved into `coeffs rel -constant` form.
VennConstraint constraint(const Linear& lin, Relation rel, const Integer& rhs_shift = 0) {
  VennConstraint c;
  for (const auto& [v, coeff] : lin.coeffs) {
    if (coeff != 0) c.coeffs.emplace_back(v, coeff);
  }
  c.rel = rel;
  c.rhs = -lin.constant + rhs_shift;
  return c;
}

}  // namespace

ReducedAtom reduce_atom(const Atom& a, bool negated, const std::vector<std::string>& var_order,
                        FreshCounter& fresh) {
  if (negated && a.kind != Atom::Kind::Dvd) {
    throw std::invalid_argument("reduce_atom: only dvd atoms may be negated");
  }
  Linearizer lin(var_order);
  ReducedAtom out{RegionSet(var_order.size()), {}, {}, {}};
  switch (a.kind) {
    case Atom::Kind::SetEq: {
      RegionSet l = lin.set(a.set_lhs);
      RegionSet r = lin.set(a.set_rhs);
      out.zero = (l & ~r) | (r & ~l);
      return out;
    }
    case Atom::Kind::Subset:
      out.zero = lin.set(a.set_lhs) & ~lin.set(a.set_rhs);
      return out;
    case Atom::Kind::IntEq:
    case Atom::Kind::IntLe:
    case Atom::Kind::IntLt: {
      Linear diff = lin.term(a.int_lhs);
      diff.add(lin.term(a.int_rhs), -1);
      if (a.kind == Atom::Kind::IntEq) {
        out.rows.push_back(constraint(diff, Relation::Eq));
      } else {
        out.rows.push_back(constraint(diff, Relation::Le, a.kind == Atom::Kind::IntLt ? -1 : 0));
      }
      return out;
    }
    case Atom::Kind::Dvd: {
      const int id = fresh.next++;
      VennVar q{VennVar::Kind::Fresh, 0, "__q" + std::to_string(id)};
      Linear body = lin.term(a.int_lhs);
      body.coeffs[q] -= a.divisor;
      out.fresh_ints.push_back(q.name);
      if (negated) {
        VennVar r{VennVar::Kind::Fresh, 0, "__r" + std::to_string(id)};
        body.coeffs[r] -= 1;
        out.fresh_nats.push_back(r.name);
        out.rows.push_back(constraint(body, Relation::Eq));
        // 1 <= r <= divisor - 1
        out.rows.push_back({{{r, Integer(-1)}}, Relation::Le, Integer(-1)});
        out.rows.push_back({{{r, Integer(1)}}, Relation::Le, a.divisor - 1});
      } else {
        out.rows.push_back(constraint(body, Relation::Eq));
      }
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------- search

std::string Strategy::to_string() const {
  if (kind == Kind::Explicit) return "explicit";
  return max_nonzero ? "sparse(" + std::to_string(*max_nonzero) + ")" : "sparse";
}

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Sat: return "sat";
    case Verdict::Kind::Unsat: return "unsat";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(EntailVerdict::Kind kind) {
  switch (kind) {
    case EntailVerdict::Kind::Yes: return "yes";
    case EntailVerdict::Kind::No: return "no";
    case EntailVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

struct Literal {
  Atom atom;
  bool negated = false;
};

/// NNF formula flattened into an index-addressed tree over interned literals.
struct BoolNode {
  enum class Kind { True, False, Lit, And, Or };
  Kind kind = Kind::True;
  int lit = -1;
  std::vector<int> kids;
};

class Compiler {
 public:
  int compile(const Formula& f) {
    BoolNode node;
    node.kind = BoolNode::Kind::True;
    switch (f.kind()) {
      case Formula::Kind::True: break;
      case Formula::Kind::False: node.kind = BoolNode::Kind::False; break;
      case Formula::Kind::Atom:
        node.kind = BoolNode::Kind::Lit;
        node.lit = intern(f.atom(), false);
        break;
      case Formula::Kind::Not:
        // Only negated dvd atoms survive normalization.
        node.kind = BoolNode::Kind::Lit;
        node.lit = intern(f.inner().atom(), true);
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        node.kind = f.kind() == Formula::Kind::And ? BoolNode::Kind::And : BoolNode::Kind::Or;
        for (const auto& c : f.children()) node.kids.push_back(compile(c));
        break;
    }
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size() - 1);
  }

  std::vector<BoolNode> nodes;
  std::vector<Literal> literals;

 private:
  int intern(const Atom& a, bool negated) {
    std::string key = (negated ? "!" : "") + to_sexpr(a);
    auto [it, fresh] = ids_.emplace(std::move(key), static_cast<int>(literals.size()));
    if (fresh) literals.push_back({a, negated});
    return it->second;
  }

  std::unordered_map<std::string, int> ids_;
};

void count_cards(const IntTerm& t, std::unordered_map<std::string, int>& seen) {
  switch (t.kind()) {
    case IntTerm::Kind::Card: seen.emplace(to_sexpr(t), 0); return;
    case IntTerm::Kind::Add:
      count_cards(t.left(), seen);
      count_cards(t.right(), seen);
      return;
    case IntTerm::Kind::MulConst: count_cards(t.left(), seen); return;
    default: return;
  }
}

enum class Outcome { Sat, Unsat, Incomplete, Abort };

class Search {
 public:
  Search(const Problem& p, const Strategy& strategy, const SolveLimits& limits, Verdict& verdict)
      : p_(p), strategy_(strategy), limits_(limits), verdict_(verdict), n_(p.set_vars.size()) {
    if (limits.time_limit) deadline_ = std::chrono::steady_clock::now() + *limits.time_limit;
    root_ = compiler_.compile(to_nnf(p.formula));
    FreshCounter fresh;
    for (const auto& lit : compiler_.literals) {
      reduced_.push_back(reduce_atom(lit.atom, lit.negated, p.set_vars, fresh));
    }
    if (strategy.kind == Strategy::Kind::Sparse) {
      k_ = strategy.max_nonzero ? *strategy.max_nonzero : default_sparse_budget(p);
      verdict_.sparse_k = k_;
    }
  }

  Outcome run() { return explore({root_}, {}); }

  const std::string& abort_reason() const { return abort_reason_; }
  const std::string& incomplete_reason() const { return incomplete_reason_; }

 private:
  bool out_of_time() const { return deadline_ && std::chrono::steady_clock::now() > *deadline_; }

  Outcome explore(std::vector<int> agenda, std::vector<int> chosen) {
    bool dirty = true;
    while (!agenda.empty()) {
      const BoolNode& node = compiler_.nodes[static_cast<std::size_t>(agenda.back())];
      agenda.pop_back();
      switch (node.kind) {
        case BoolNode::Kind::True:
          break;
        case BoolNode::Kind::False:
          return Outcome::Unsat;
        case BoolNode::Kind::Lit: {
          auto pos = std::lower_bound(chosen.begin(), chosen.end(), node.lit);
          if (pos == chosen.end() || *pos != node.lit) {
            chosen.insert(pos, node.lit);
            dirty = true;
          }
          break;
        }
        case BoolNode::Kind::And:
          for (auto it = node.kids.rbegin(); it != node.kids.rend(); ++it) agenda.push_back(*it);
          break;
        case BoolNode::Kind::Or: {
          if (dirty && !chosen.empty() && strategy_.kind == Strategy::Kind::Explicit) {
            Outcome partial = check(chosen);
            if (partial == Outcome::Unsat || partial == Outcome::Abort) return partial;
            dirty = false;
          }
          bool incomplete = false;
          for (int kid : node.kids) {
            std::vector<int> next = agenda;
            next.push_back(kid);
            Outcome o = explore(std::move(next), chosen);
            if (o == Outcome::Sat || o == Outcome::Abort) return o;
            if (o == Outcome::Incomplete) incomplete = true;
          }
          return incomplete ? Outcome::Incomplete : Outcome::Unsat;
        }
      }
    }
    ++verdict_.stats.branches;
    if (verdict_.stats.branches > limits_.branch_limit) {
      abort_reason_ = "branch-limit";
      return Outcome::Abort;
    }
    return leaf(chosen);
  }

  RegionSet admitted_for(const std::vector<int>& chosen) const {
    RegionSet zero(n_);
    for (int id : chosen) zero = zero | reduced_[static_cast<std::size_t>(id)].zero;
    return ~zero;
  }

  /// Feasibility of the conjunction with every admitted region available.
  Outcome check(const std::vector<int>& chosen) {
    auto memo = memo_.find(chosen);
    if (memo != memo_.end()) return memo->second;
    Outcome o = decide(chosen, admitted_for(chosen).members(), nullptr);
    if (o == Outcome::Sat || o == Outcome::Unsat) memo_.emplace(chosen, o);
    return o;
  }

  Outcome leaf(const std::vector<int>& chosen) {
    std::vector<std::size_t> admitted = admitted_for(chosen).members();
    if (strategy_.kind == Strategy::Kind::Explicit || k_ >= admitted.size()) {
      auto memo = memo_.find(chosen);
      if (memo != memo_.end() && memo->second == Outcome::Unsat) return Outcome::Unsat;
      Outcome o = decide(chosen, admitted, &verdict_.model);
      if (o == Outcome::Unsat) memo_.emplace(chosen, o);
      return o;
    }
    // Sparse: try every k-subset of the admitted regions in lexicographic order.
    std::vector<std::size_t> pick(k_);
    for (std::size_t i = 0; i < k_; ++i) pick[i] = i;
    std::vector<std::size_t> subset(k_);
    while (true) {
      for (std::size_t i = 0; i < k_; ++i) subset[i] = admitted[pick[i]];
      Outcome o = decide(chosen, subset, &verdict_.model);
      if (o == Outcome::Sat || o == Outcome::Abort) return o;
      std::size_t i = k_;
      while (i > 0 && pick[i - 1] == admitted.size() - k_ + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k_; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (incomplete_reason_.empty()) incomplete_reason_ = "sparse-incomplete";
    return Outcome::Incomplete;
  }

  /// Builds and solves the system for `chosen` with only `regions` nonzero.
  /// Writes the model on Sat when `model` is given.
  Outcome decide(const std::vector<int>& chosen, const std::vector<std::size_t>& regions, Model* model) {
    if (out_of_time()) {
      abort_reason_ = "time-limit";
      return Outcome::Abort;
    }
    LinearSystem sys;
    std::map<VennVar, std::size_t> column;
    for (auto sig : regions) {
      column[{VennVar::Kind::Region, sig, {}}] = sys.add_unknown("l_" + region_name(sig, n_), Domain::Natural);
    }
    for (const auto& name : p_.int_vars) {
      column[{VennVar::Kind::Int, 0, name}] = sys.add_unknown(name, Domain::Integer);
    }
    for (int id : chosen) {
      const ReducedAtom& r = reduced_[static_cast<std::size_t>(id)];
      for (const auto& name : r.fresh_ints) {
        column[{VennVar::Kind::Fresh, 0, name}] = sys.add_unknown(name, Domain::Integer);
      }
      for (const auto& name : r.fresh_nats) {
        column[{VennVar::Kind::Fresh, 0, name}] = sys.add_unknown(name, Domain::Natural);
      }
    }
    for (int id : chosen) {
      for (const auto& row : reduced_[static_cast<std::size_t>(id)].rows) {
        std::vector<LinearTerm> terms;
        for (const auto& [var, coeff] : row.coeffs) {
          auto it = column.find(var);
          if (it != column.end()) terms.push_back({it->second, coeff});
          // Regions outside `regions` are fixed to zero.
        }
        sys.add_row(std::move(terms), row.rel, row.rhs);
      }
    }

    IlpOptions options;
    options.node_limit = limits_.ilp_node_limit;
    options.deadline = deadline_;
    IlpResult res = integer_feasible(sys, options);
    ++verdict_.stats.ilp_calls;
    verdict_.stats.ilp_nodes += res.nodes;
    if (res.status == IlpStatus::Infeasible) return Outcome::Unsat;
    if (res.status == IlpStatus::Unknown) {
      if (res.reason == "time-limit") {
        abort_reason_ = res.reason;
        return Outcome::Abort;
      }
      if (incomplete_reason_.empty() || incomplete_reason_ == "sparse-incomplete") {
        incomplete_reason_ = res.reason;
      }
      return Outcome::Incomplete;
    }
    if (model) {
      RegionVector rv{p_.set_vars, std::vector<Integer>(std::size_t{1} << n_, Integer(0))};
      for (std::size_t i = 0; i < regions.size(); ++i) rv.counts[regions[i]] = res.assignment[i];
      std::map<std::string, Integer> ints;
      for (std::size_t i = 0; i < p_.int_vars.size(); ++i) {
        ints[p_.int_vars[i]] = res.assignment[regions.size() + i];
      }
      *model = model_from_regions(rv, ints);
    }
    return Outcome::Sat;
  }

  const Problem& p_;
  Strategy strategy_;
  SolveLimits limits_;
  Verdict& verdict_;
  std::size_t n_;
  std::size_t k_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  Compiler compiler_;
  int root_ = -1;
  std::vector<ReducedAtom> reduced_;
  std::map<std::vector<int>, Outcome> memo_;
  std::string abort_reason_;
  std::string incomplete_reason_;
};

}  // namespace

std::size_t default_sparse_budget(const Problem& p) {
  Compiler c;
  c.compile(to_nnf(p.formula));
  std::unordered_map<std::string, int> cards;
  for (const auto& lit : c.literals) {
    if (lit.atom.is_set_atom()) continue;
    count_cards(lit.atom.int_lhs, cards);
    if (lit.atom.kind != Atom::Kind::Dvd) count_cards(lit.atom.int_rhs, cards);
  }
  return c.literals.size() + cards.size() + 1;
}

Verdict solve(const Problem& p, const Strategy& strategy, const SolveLimits& limits) {
  if (auto errors = type_check(p); !errors.empty()) {
    throw std::invalid_argument("solve: " + errors.front().message());
  }
  Verdict verdict;
  verdict.strategy = strategy.kind == Strategy::Kind::Explicit ? "explicit" : "sparse";
  if (p.set_vars.size() > limits.max_set_vars) {
    verdict.kind = Verdict::Kind::Unknown;
    verdict.reason = "too-many-set-variables";
    return verdict;
  }
  Search search(p, strategy, limits, verdict);
  switch (search.run()) {
    case Outcome::Sat:
      if (!eval_formula(p.formula, verdict.model)) {
        throw std::logic_error("solve: reconstructed model violates the formula");
      }
      verdict.kind = Verdict::Kind::Sat;
      break;
    case Outcome::Unsat:
      verdict.kind = Verdict::Kind::Unsat;
      break;
    case Outcome::Incomplete:
      verdict.kind = Verdict::Kind::Unknown;
      verdict.reason = search.incomplete_reason();
      break;
    case Outcome::Abort:
      verdict.kind = Verdict::Kind::Unknown;
      verdict.reason = search.abort_reason();
      break;
  }
  if (verdict.kind != Verdict::Kind::Sat) verdict.model = {};
  return verdict;
}

Problem merge_declarations(const Problem& a, const Problem& b) {
  Problem out;
  out.set_vars = a.set_vars;
  out.int_vars = a.int_vars;
  auto has = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (const auto& s : b.set_vars) {
    if (has(out.int_vars, s)) throw SortMismatch("'" + s + "' is a set in one problem and an integer in the other");
    if (!has(out.set_vars, s)) out.set_vars.push_back(s);
  }
  for (const auto& s : b.int_vars) {
    if (has(out.set_vars, s)) throw SortMismatch("'" + s + "' is a set in one problem and an integer in the other");
    if (!has(out.int_vars, s)) out.int_vars.push_back(s);
  }
  return out;
}

EntailVerdict entails(const Problem& p1, const Problem& p2, const SolveLimits& limits) {
  Problem query = merge_declarations(p1, p2);
  query.formula = Formula::conj({p1.formula, Formula::negate(p2.formula)});
  Verdict v = solve(query, Strategy::explicit_regions(), limits);
  EntailVerdict out;
  out.stats = v.stats;
  switch (v.kind) {
    case Verdict::Kind::Unsat:
      out.kind = EntailVerdict::Kind::Yes;
      break;
    case Verdict::Kind::Sat:
      if (!eval_formula(p1.formula, v.model) || eval_formula(p2.formula, v.model)) {
        throw std::logic_error("entails: counter-model check failed");
      }
      out.kind = EntailVerdict::Kind::No;
      out.counter_model = std::move(v.model);
      break;
    case Verdict::Kind::Unknown:
      out.kind = EntailVerdict::Kind::Unknown;
      out.reason = v.reason;
      break;
  }
  return out;
}

}  // namespace setcard
