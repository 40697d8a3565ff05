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

#include "setcard/hardness.hpp"

#include <algorithm>
#include <sstream>

namespace setcard {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::string set_name(std::size_t i) { return "X" + std::to_string(i + 1); }

SetTerm literal_term(const CnfLiteral& l) {
  SetTerm x = SetTerm::var(set_name(l.var));
  return l.positive ? x : SetTerm::complement(x);
}

}  // namespace

Cnf3 read_dimacs(std::string_view text) {
  Cnf3 cnf;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<long long> current;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == '%') break;
    std::istringstream in{std::string(line)};
    if (line.front() == 'p') {
      std::string p, fmt;
      long long vars = -1, clauses = -1;
      if (header || !(in >> p >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
        throw MalformedCnf("line " + std::to_string(line_no) + ": bad problem line");
      }
      header = true;
      cnf.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw MalformedCnf("line " + std::to_string(line_no) + ": clause before the 'p cnf' header");
    std::string tok;
    while (in >> tok) {
      long long lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw MalformedCnf("line " + std::to_string(line_no) + ": bad literal '" + tok + "'");
      if (lit == 0) {
        if (current.size() != 3) {
          throw MalformedCnf("line " + std::to_string(line_no) + ": clause has " + std::to_string(current.size()) +
                             " literals, expected 3");
        }
        std::array<CnfLiteral, 3> clause;
        for (std::size_t k = 0; k < 3; ++k) {
          const long long v = current[k] < 0 ? -current[k] : current[k];
          if (static_cast<std::size_t>(v) > cnf.num_vars) {
            throw MalformedCnf("line " + std::to_string(line_no) + ": variable " + std::to_string(v) +
                               " exceeds the declared count");
          }
          clause[k] = {static_cast<std::size_t>(v - 1), current[k] > 0};
        }
        cnf.clauses.push_back(clause);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!header) throw MalformedCnf("missing 'p cnf' header");
  if (!current.empty()) throw MalformedCnf("last clause is not terminated by 0");
  if (cnf.clauses.size() != declared_clauses) {
    throw MalformedCnf("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                       std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

Problem encode_3sat(const Cnf3& c) {
  Problem p;
  for (std::size_t i = 0; i < c.num_vars; ++i) p.set_vars.push_back(set_name(i));
  std::vector<Formula> parts;
  parts.push_back(Formula::atom(Atom::int_eq(IntTerm::maxc(), IntTerm::constant(1))));
  for (const auto& clause : c.clauses) {
    for (const auto& l : clause) {
      if (l.var >= c.num_vars) throw MalformedCnf("literal variable out of range");
    }
    SetTerm u = SetTerm::unite(SetTerm::unite(literal_term(clause[0]), literal_term(clause[1])),
                               literal_term(clause[2]));
    parts.push_back(Formula::atom(Atom::int_le(IntTerm::constant(1), IntTerm::card(u))));
  }
  p.formula = conjoin(std::move(parts));
  return p;
}

std::vector<bool> decode_3sat(const Cnf3& c, const Model& m) {
  std::vector<bool> out(c.num_vars);
  for (std::size_t i = 0; i < c.num_vars; ++i) out[i] = !m.sets.at(set_name(i)).empty();
  return out;
}

bool cnf_satisfied(const Cnf3& c, const std::vector<bool>& assignment) {
  return std::all_of(c.clauses.begin(), c.clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(),
                       [&](const CnfLiteral& l) { return assignment.at(l.var) == l.positive; });
  });
}

SubsetSumInstance read_subset_sum(std::string_view text) {
  std::vector<Integer> numbers;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    auto value = parse_natural(line);
    if (!value) throw MalformedInstance("line " + std::to_string(line_no) + ": expected a natural number");
    numbers.push_back(std::move(*value));
  }
  if (numbers.size() < 2) throw MalformedInstance("need a target and at least one item");
  SubsetSumInstance s;
  s.target = numbers.front();
  s.items.assign(numbers.begin() + 1, numbers.end());
  return s;
}

Problem encode_subset_sum(const SubsetSumInstance& s) {
  if (s.items.empty()) throw MalformedInstance("no items");
  if (s.target < 0) throw MalformedInstance("negative target");
  Problem p;
  const std::size_t m = s.items.size();
  for (std::size_t i = 0; i < m; ++i) p.set_vars.push_back(set_name(i));
  p.set_vars.push_back("S");
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      parts.push_back(Formula::atom(Atom::set_eq(
          SetTerm::inter(SetTerm::var(set_name(i)), SetTerm::var(set_name(j))), SetTerm::empty())));
    }
  }
  SetTerm all = SetTerm::var(set_name(0));
  for (std::size_t i = 1; i < m; ++i) all = SetTerm::unite(all, SetTerm::var(set_name(i)));
  parts.push_back(Formula::atom(Atom::set_eq(SetTerm::var("S"), all)));
  for (std::size_t i = 0; i < m; ++i) {
    if (s.items[i] < 0) throw MalformedInstance("negative item");
    IntTerm size = IntTerm::card(SetTerm::var(set_name(i)));
    parts.push_back(Formula::disj({Formula::atom(Atom::int_eq(size, IntTerm::constant(0))),
                                   Formula::atom(Atom::int_eq(size, IntTerm::constant(s.items[i])))}));
  }
  parts.push_back(Formula::atom(Atom::int_eq(IntTerm::card(SetTerm::var("S")), IntTerm::constant(s.target))));
  p.formula = conjoin(std::move(parts));
  return p;
}

std::vector<bool> decode_subset_sum(const SubsetSumInstance& s, const Model& m) {
  std::vector<bool> out(s.items.size());
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    out[i] = s.items[i] > 0 && m.sets.at(set_name(i)).size() == s.items[i];
  }
  return out;
}

// ---------------------------------------------------------------- generators

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n + 1) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % n;
}

Integer Rng::bits(unsigned bits) {
  Integer out = 0;
  unsigned left = bits;
  while (left > 0) {
    const unsigned take = std::min(left, 64U);
    std::uint64_t chunk = engine_();
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    out <<= take;
    Integer part;
    mpz_import(part.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
    out += part;
    left -= take;
  }
  return out;
}

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const GenProfile& profile) : rng_(seed), profile_(profile) {
    for (std::size_t i = 0; i < profile.set_vars; ++i) sets_.push_back("S" + std::to_string(i));
    for (std::size_t i = 0; i < profile.int_vars; ++i) ints_.push_back("x" + std::to_string(i));
  }

  Problem problem() {
    Problem p;
    p.set_vars = sets_;
    p.int_vars = ints_;
    p.formula = formula(profile_.depth);
    return p;
  }

 private:
  Formula formula(unsigned depth) {
    const std::uint64_t pick = depth == 0 ? 0 : rng_.below(4);
    switch (pick) {
      case 1:
      case 2: {
        std::vector<Formula> kids;
        const std::uint64_t n = 2 + rng_.below(2);
        for (std::uint64_t i = 0; i < n; ++i) kids.push_back(formula(depth - 1));
        return pick == 1 ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
      case 3: return Formula::negate(formula(depth - 1));
      default: return Formula::atom(atom());
    }
  }

  Atom atom() {
    switch (rng_.below(6)) {
      case 0: return Atom::set_eq(set(2), set(2));
      case 1: return Atom::subset(set(2), set(2));
      case 2: return Atom::int_eq(integer(2), integer(2));
      case 3: return Atom::int_le(integer(2), integer(2));
      case 4: return Atom::int_lt(integer(2), integer(2));
      default: return Atom::dvd(Integer(1) + rng_.bits(profile_.const_bits), integer(2));
    }
  }

  SetTerm set(unsigned depth) {
    if (depth == 0 || rng_.chance(1, 2)) {
      const std::uint64_t leaf = rng_.below(sets_.size() + 2);
      if (leaf == 0) return SetTerm::empty();
      if (leaf == 1) return SetTerm::univ();
      return SetTerm::var(sets_[leaf - 2]);
    }
    switch (rng_.below(4)) {
      case 0: return SetTerm::unite(set(depth - 1), set(depth - 1));
      case 1: return SetTerm::inter(set(depth - 1), set(depth - 1));
      case 2: return SetTerm::complement(set(depth - 1));
      default: return SetTerm::minus(set(depth - 1), set(depth - 1));
    }
  }

  IntTerm integer(unsigned depth) {
    if (depth == 0 || rng_.chance(1, 2)) {
      switch (rng_.below(ints_.empty() ? 3 : 4)) {
        case 0: return IntTerm::constant(rng_.bits(profile_.const_bits));
        case 1: return IntTerm::card(set(1));
        case 2: return IntTerm::maxc();
        default: return IntTerm::var(ints_[rng_.below(ints_.size())]);
      }
    }
    if (rng_.chance(1, 2)) return IntTerm::add(integer(depth - 1), integer(depth - 1));
    return IntTerm::mul(rng_.bits(profile_.const_bits), integer(depth - 1));
  }

  Rng rng_;
  GenProfile profile_;
  std::vector<std::string> sets_;
  std::vector<std::string> ints_;
};

}  // namespace

Formula box_guards(const Problem& p, std::uint64_t bound) {
  const IntTerm b = IntTerm::constant(Integer(static_cast<unsigned long>(bound)));
  std::vector<Formula> parts;
  const std::size_t n = p.set_vars.size();
  for (std::size_t sig = 0; sig < (std::size_t{1} << n); ++sig) {
    IntTerm region = IntTerm::maxc();
    if (n > 0) {
      auto literal = [&](std::size_t i) {
        SetTerm v = SetTerm::var(p.set_vars[i]);
        return ((sig >> i) & 1U) ? v : SetTerm::complement(v);
      };
      SetTerm acc = literal(0);
      for (std::size_t i = 1; i < n; ++i) acc = SetTerm::inter(acc, literal(i));
      region = IntTerm::card(acc);
    }
    parts.push_back(Formula::atom(Atom::int_le(region, b)));
  }
  for (const auto& x : p.int_vars) {
    parts.push_back(Formula::atom(Atom::int_le(IntTerm::var(x), b)));
    parts.push_back(Formula::atom(Atom::int_le(IntTerm::constant(0), IntTerm::add(IntTerm::var(x), b))));
  }
  return conjoin(std::move(parts));
}

Problem gen_random(std::uint64_t seed, const GenProfile& profile) {
  Problem p = Generator(seed, profile).problem();
  if (profile.bounded) p.formula = Formula::conj({p.formula, box_guards(p, profile.bound)});
  return p;
}

ITree gen_random_itree(std::uint64_t seed, const ITreeProfile& profile) {
  Rng rng(seed);
  const std::size_t n = profile.nodes;
  std::vector<ITreeNode> nodes(n);
  std::vector<long> parent(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    ITreeNode& node = nodes[i];
    node.var = "T" + std::to_string(i);
    const std::uint64_t lo = rng.below(profile.max_bound + 1);
    node.lo = static_cast<unsigned long>(lo);
    if (!rng.chance(1, 3)) node.hi = static_cast<unsigned long>(lo + rng.below(profile.max_bound - lo + 1));
    if (i > 0 && !rng.chance(profile.new_root_percent, 100)) parent[i] = static_cast<long>(rng.below(i));
  }
  std::vector<char> has_kids(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] >= 0) has_kids[static_cast<std::size_t>(parent[i])] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_kids[i]) continue;
    nodes[i].disjoint = rng.chance(1, 2);
    nodes[i].exhaustive = rng.chance(1, 2);
  }
  // Children have larger indices than parents, so folding from the back
  // attaches complete subtrees.
  ITree t;
  for (std::size_t i = n; i-- > 0;) {
    std::reverse(nodes[i].children.begin(), nodes[i].children.end());
    if (parent[i] >= 0) {
      nodes[static_cast<std::size_t>(parent[i])].children.push_back(std::move(nodes[i]));
    } else {
      t.roots.push_back(std::move(nodes[i]));
    }
  }
  std::reverse(t.roots.begin(), t.roots.end());
  return t;
}

}  // namespace setcard
