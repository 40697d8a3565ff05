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

#include "setcard/ilp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace setcard {

// ---------------------------------------------------------------- system

std::size_t LinearSystem::add_unknown(std::string name, Domain domain) {
  unknowns_.push_back({std::move(name), domain});
  return unknowns_.size() - 1;
}

namespace {

std::vector<LinearTerm> merged(std::vector<LinearTerm> terms) {
  std::map<std::size_t, Integer> acc;
  for (auto& t : terms) acc[t.var] += t.coeff;
  std::vector<LinearTerm> out;
  for (auto& [var, coeff] : acc) {
    if (coeff != 0) out.push_back({var, std::move(coeff)});
  }
  return out;
}

}  // namespace

void LinearSystem::add_row(std::vector<LinearTerm> terms, Relation rel, Integer rhs) {
  for (const auto& t : terms) {
    if (t.var >= unknowns_.size()) throw std::out_of_range("LinearSystem: unknown index");
  }
  rows_.push_back({merged(std::move(terms)), rel, std::move(rhs)});
}

void LinearSystem::add_lt(std::vector<LinearTerm> terms, Integer rhs) {
  add_row(std::move(terms), Relation::Le, rhs - 1);
}

void LinearSystem::add_ge(std::vector<LinearTerm> terms, Integer rhs) {
  for (auto& t : terms) t.coeff = -t.coeff;
  add_row(std::move(terms), Relation::Le, -rhs);
}

bool LinearSystem::satisfied_by(const std::vector<Integer>& values) const {
  if (values.size() != unknowns_.size()) return false;
  for (std::size_t j = 0; j < unknowns_.size(); ++j) {
    if (unknowns_[j].domain == Domain::Natural && values[j] < 0) return false;
  }
  for (const auto& row : rows_) {
    Integer lhs = 0;
    for (const auto& t : row.terms) lhs += t.coeff * values[t.var];
    if (row.rel == Relation::Eq ? lhs != row.rhs : lhs > row.rhs) return false;
  }
  return true;
}

std::string LinearSystem::to_string() const {
  std::string out;
  for (const auto& row : rows_) {
    bool first = true;
    for (const auto& t : row.terms) {
      if (!first) out += " + ";
      first = false;
      out += to_decimal(t.coeff) + "*" + unknowns_[t.var].name;
    }
    if (first) out += "0";
    out += row.rel == Relation::Eq ? " = " : " <= ";
    out += to_decimal(row.rhs);
    out += '\n';
  }
  return out;
}

Integer small_solution_bound(const LinearSystem& sys) {
  const auto m = static_cast<unsigned long>(std::max<std::size_t>(sys.rows().size(), 1));
  Integer a_max = 1;
  for (const auto& row : sys.rows()) {
    for (const auto& t : row.terms) a_max = std::max<Integer>(a_max, abs(t.coeff));
    a_max = std::max<Integer>(a_max, abs(row.rhs));
  }
  return pow_int(Integer(m) * a_max + 1, 3 * m);
}

// ---------------------------------------------------------------- simplex

namespace {

/// Dense phase-one simplex. Structural columns first (integer unknowns split
/// into positive and negative parts), then one slack per inequality, then
/// artificials for rows that lack an obvious starting basic column.
class PhaseOne {
 public:
  explicit PhaseOne(const LinearSystem& sys) : sys_(sys) {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      pos_col_.push_back(cols_++);
      neg_col_.push_back(sys.unknowns()[j].domain == Domain::Integer ? cols_++ : npos);
    }
    const auto& rows = sys.rows();
    const std::size_t m = rows.size();
    std::vector<std::size_t> slack(m, npos);
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].rel == Relation::Le) slack[i] = cols_++;
    }
    std::vector<bool> negate(m);
    std::vector<std::size_t> art(m, npos);
    for (std::size_t i = 0; i < m; ++i) {
      negate[i] = rows[i].rhs < 0;
      // A slack with coefficient +1 after sign normalization is a ready-made basic column.
      if (slack[i] == npos || negate[i]) art[i] = cols_++;
    }
    first_artificial_ = cols_;
    for (std::size_t i = 0; i < m; ++i) {
      if (art[i] != npos) first_artificial_ = std::min(first_artificial_, art[i]);
    }

    tab_.assign(m, std::vector<Rational>(cols_ + 1));
    basis_.assign(m, npos);
    for (std::size_t i = 0; i < m; ++i) {
      const int sign = negate[i] ? -1 : 1;
      auto& r = tab_[i];
      for (const auto& t : rows[i].terms) {
        r[pos_col_[t.var]] = sign * t.coeff;
        if (neg_col_[t.var] != npos) r[neg_col_[t.var]] = -sign * t.coeff;
      }
      if (slack[i] != npos) r[slack[i]] = sign;
      if (art[i] != npos) {
        r[art[i]] = 1;
        basis_[i] = art[i];
      } else {
        basis_[i] = slack[i];
      }
      r[cols_] = sign * rows[i].rhs;
    }

    // Reduced costs of minimizing the sum of artificials.
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(tab_[i][c]) != 0) cost_[c] -= tab_[i][c];
      }
    }
    for (std::size_t c = first_artificial_; c < cols_; ++c) cost_[c] += 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] >= first_artificial_) cost_[basis_[i]] = 0;
    }
  }

  RationalResult run() {
    while (true) {
      std::size_t enter = npos;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (sgn(cost_[c]) < 0) {
          enter = c;
          break;
        }
      }
      if (enter == npos) break;
      std::size_t leave = npos;
      Rational best;
      for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (sgn(tab_[i][enter]) <= 0) continue;
        Rational ratio = tab_[i][cols_] / tab_[i][enter];
        if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == npos) break;  // unreachable: phase-one objective is bounded
      pivot(leave, enter);
    }

    RationalResult out;
    // The objective value sits negated in the rhs slot of the cost row.
    out.feasible = sgn(cost_[cols_]) == 0;
    if (!out.feasible) return out;
    std::vector<Rational> col_value(cols_, Rational(0));
    for (std::size_t i = 0; i < tab_.size(); ++i) col_value[basis_[i]] = tab_[i][cols_];
    out.point.resize(sys_.size());
    for (std::size_t j = 0; j < sys_.size(); ++j) {
      out.point[j] = col_value[pos_col_[j]];
      if (neg_col_[j] != npos) out.point[j] -= col_value[neg_col_[j]];
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = tab_[row];
    const Rational p = pr[col];
    for (auto& v : pr) {
      if (sgn(v) != 0) v /= p;
    }
    auto eliminate = [&](std::vector<Rational>& r) {
      if (sgn(r[col]) == 0) return;
      const Rational f = r[col];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(pr[c]) != 0) r[c] -= f * pr[c];
      }
    };
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (i != row) eliminate(tab_[i]);
    }
    eliminate(cost_);
    basis_[row] = col;
  }

  const LinearSystem& sys_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> pos_col_;
  std::vector<std::size_t> neg_col_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

Integer gcd_of(const std::vector<LinearTerm>& terms) {
  Integer g = 0;
  for (const auto& t : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
  }
  return g;
}

/// Divides each row by the gcd of its coefficients, rounding inequality
/// right-hand sides down. Returns false if some row has no integer solution
/// on its own.
bool tighten_rows(const LinearSystem& in, LinearSystem& out) {
  for (const auto& u : in.unknowns()) out.add_unknown(u.name, u.domain);
  for (const auto& row : in.rows()) {
    if (row.terms.empty()) {
      const bool ok = row.rel == Relation::Eq ? row.rhs == 0 : row.rhs >= 0;
      if (!ok) return false;
      continue;
    }
    Integer g = gcd_of(row.terms);
    std::vector<LinearTerm> terms = row.terms;
    Integer rhs = row.rhs;
    if (g > 1) {
      if (row.rel == Relation::Eq) {
        if (mpz_divisible_p(rhs.get_mpz_t(), g.get_mpz_t()) == 0) return false;
        mpz_divexact(rhs.get_mpz_t(), rhs.get_mpz_t(), g.get_mpz_t());
      } else {
        rhs = floor_div(rhs, g);
      }
      for (auto& t : terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    }
    out.add_row(std::move(terms), row.rel, std::move(rhs));
  }
  return true;
}

struct Bounds {
  std::vector<std::optional<Integer>> lo;
  std::vector<std::optional<Integer>> hi;
};

LinearSystem with_bounds(const LinearSystem& base, const Bounds& b) {
  LinearSystem sys = base;
  for (std::size_t j = 0; j < base.size(); ++j) {
    if (b.lo[j]) sys.add_ge({{j, 1}}, *b.lo[j]);
    if (b.hi[j]) sys.add_row({{j, 1}}, Relation::Le, *b.hi[j]);
  }
  return sys;
}

}  // namespace

RationalResult rational_feasible(const LinearSystem& sys) {
  for (const auto& row : sys.rows()) {
    if (row.terms.empty()) {
      const bool ok = row.rel == Relation::Eq ? row.rhs == 0 : row.rhs >= 0;
      if (!ok) return {};
    }
  }
  return PhaseOne(sys).run();
}

namespace {

/// Integer solutions of the equality rows, as x = T y + c with y free.
/// Equalities are removed one at a time by unimodular column operations
/// (extended Euclid on the row), leaving one column that the row pins.
struct Lattice {
  std::vector<std::vector<Integer>> t;  // n rows, one column per free parameter
  std::vector<Integer> c;
  std::size_t params = 0;
};

bool eliminate_equalities(const LinearSystem& sys, Lattice& lat) {
  const std::size_t n = sys.size();
  lat.params = n;
  lat.t.assign(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t j = 0; j < n; ++j) lat.t[j][j] = 1;
  lat.c.assign(n, Integer(0));

  for (const auto& row : sys.rows()) {
    if (row.rel != Relation::Eq) continue;
    std::vector<Integer> a(lat.params, Integer(0));
    Integer b = row.rhs;
    for (const auto& term : row.terms) {
      b -= term.coeff * lat.c[term.var];
      for (std::size_t k = 0; k < lat.params; ++k) {
        if (sgn(lat.t[term.var][k]) != 0) a[k] += term.coeff * lat.t[term.var][k];
      }
    }
    std::size_t pivot = lat.params;
    while (true) {
      pivot = lat.params;
      std::size_t nonzero = 0;
      for (std::size_t k = 0; k < lat.params; ++k) {
        if (sgn(a[k]) == 0) continue;
        ++nonzero;
        if (pivot == lat.params || abs(a[k]) < abs(a[pivot])) pivot = k;
      }
      if (nonzero <= 1) break;
      for (std::size_t k = 0; k < lat.params; ++k) {
        if (k == pivot || sgn(a[k]) == 0) continue;
        Integer q = a[k] / a[pivot];  // truncated, so |remainder| < |a[pivot]|
        a[k] -= q * a[pivot];
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(lat.t[j][pivot]) != 0) lat.t[j][k] -= q * lat.t[j][pivot];
        }
      }
    }
    if (pivot == lat.params) {
      if (b != 0) return false;
      continue;
    }
    if (mpz_divisible_p(b.get_mpz_t(), a[pivot].get_mpz_t()) == 0) return false;
    Integer value = b / a[pivot];
    for (std::size_t j = 0; j < n; ++j) {
      lat.c[j] += lat.t[j][pivot] * value;
      lat.t[j].erase(lat.t[j].begin() + static_cast<std::ptrdiff_t>(pivot));
    }
    --lat.params;
  }
  return true;
}

/// The inequalities (and natural-domain signs) restated over the lattice
/// parameters, all of which are free integers.
LinearSystem parametrized(const LinearSystem& sys, const Lattice& lat) {
  LinearSystem out;
  for (std::size_t k = 0; k < lat.params; ++k) out.add_unknown("y" + std::to_string(k), Domain::Integer);
  auto restate = [&](const std::vector<LinearTerm>& terms, Integer rhs) {
    std::vector<Integer> coeff(lat.params, Integer(0));
    for (const auto& term : terms) {
      rhs -= term.coeff * lat.c[term.var];
      for (std::size_t k = 0; k < lat.params; ++k) {
        if (sgn(lat.t[term.var][k]) != 0) coeff[k] += term.coeff * lat.t[term.var][k];
      }
    }
    std::vector<LinearTerm> row;
    for (std::size_t k = 0; k < lat.params; ++k) {
      if (sgn(coeff[k]) != 0) row.push_back({k, std::move(coeff[k])});
    }
    out.add_row(std::move(row), Relation::Le, std::move(rhs));
  };
  for (const auto& row : sys.rows()) {
    if (row.rel == Relation::Le) restate(row.terms, row.rhs);
  }
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (sys.unknowns()[j].domain == Domain::Natural) restate({{j, Integer(-1)}}, Integer(0));
  }
  return out;
}

}  // namespace

namespace {

/// Depth-first branch and bound on a system over free integer unknowns.
/// Returns Feasible with `y`, Infeasible, or Unknown once a limit trips.
IlpStatus branch_and_bound(const LinearSystem& base, const Integer& box, const IlpOptions& options,
                           IlpResult& result, std::vector<Integer>& y) {
  std::vector<Bounds> stack;
  stack.push_back({std::vector<std::optional<Integer>>(base.size()),
                   std::vector<std::optional<Integer>>(base.size())});
  while (!stack.empty()) {
    if (result.nodes >= options.node_limit) {
      result.reason = "ilp-node-limit";
      return IlpStatus::Unknown;
    }
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      result.reason = "time-limit";
      return IlpStatus::Unknown;
    }
    ++result.nodes;
    Bounds node = std::move(stack.back());
    stack.pop_back();

    RationalResult relax = rational_feasible(with_bounds(base, node));
    if (!relax.feasible) continue;

    std::size_t frac = base.size();
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (relax.point[j].get_den() != 1) {
        frac = j;
        break;
      }
    }
    if (frac == base.size()) {
      y.clear();
      for (const auto& v : relax.point) y.push_back(v.get_num());
      return IlpStatus::Feasible;
    }

    const Integer down = floor_of(relax.point[frac]);
    const Integer up = down + 1;
    // Pushed in reverse so the lower branch is explored first.
    if (up <= box) {
      Bounds b = node;
      b.lo[frac] = up;
      stack.push_back(std::move(b));
    } else {
      result.bound_pruned = true;
    }
    if (down >= -box) {
      Bounds b = std::move(node);
      b.hi[frac] = down;
      stack.push_back(std::move(b));
    } else {
      result.bound_pruned = true;
    }
  }
  return IlpStatus::Infeasible;
}

}  // namespace

IlpResult integer_feasible(const LinearSystem& sys, const IlpOptions& options) {
  IlpResult result;
  result.status = IlpStatus::Infeasible;
  LinearSystem tightened;
  if (!tighten_rows(sys, tightened)) return result;
  Lattice lat;
  if (!eliminate_equalities(tightened, lat)) return result;
  LinearSystem base;
  if (!tighten_rows(parametrized(tightened, lat), base)) return result;
  if (!rational_feasible(base).feasible) return result;
  const Integer bound = small_solution_bound(tightened);

  // Rows a.y <= rhs stating x_j <= k (sign +1) or -x_j <= k (sign -1).
  auto box_row = [&](std::size_t j, int sign, const Integer& k) {
    std::vector<LinearTerm> row;
    for (std::size_t p = 0; p < lat.params; ++p) {
      if (sgn(lat.t[j][p]) != 0) row.push_back({p, sign * lat.t[j][p]});
    }
    return std::make_pair(std::move(row), Integer(k - sign * lat.c[j]));
  };

  // Branch and bound can dive forever along an unbounded direction, so the
  // original unknowns are boxed in [-k, k] with k growing up to the
  // small-solution bound.
  Integer k = 16;
  while (true) {
    if (k > bound) k = bound;
    LinearSystem boxed = base;
    for (std::size_t j = 0; j < sys.size(); ++j) {
      for (int sign : {1, -1}) {
        auto [row, rhs] = box_row(j, sign, k);
        boxed.add_row(std::move(row), Relation::Le, std::move(rhs));
      }
    }
    LinearSystem boxed_tight;
    std::vector<Integer> y;
    IlpStatus status = IlpStatus::Infeasible;
    if (tighten_rows(boxed, boxed_tight)) status = branch_and_bound(boxed_tight, bound, options, result, y);
    if (status == IlpStatus::Unknown) {
      result.status = IlpStatus::Unknown;
      return result;
    }
    if (status == IlpStatus::Feasible) {
      std::vector<Integer> x = lat.c;
      for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t p = 0; p < lat.params; ++p) {
          if (sgn(lat.t[j][p]) != 0) x[j] += lat.t[j][p] * y[p];
        }
      }
      if (!sys.satisfied_by(x)) throw std::logic_error("integer_feasible: certificate check failed");
      result.status = IlpStatus::Feasible;
      result.assignment = std::move(x);
      return result;
    }
    if (k >= bound) {
      result.bound_pruned = true;
      return result;
    }
    // Growing the box only helps if the relaxation reaches beyond it.
    bool escapes = false;
    for (std::size_t j = 0; j < sys.size() && !escapes; ++j) {
      for (int sign : {1, -1}) {
        LinearSystem probe = base;
        auto [row, rhs] = box_row(j, -sign, Integer(-k - 1));
        probe.add_row(std::move(row), Relation::Le, std::move(rhs));
        if (rational_feasible(probe).feasible) {
          escapes = true;
          break;
        }
      }
    }
    if (!escapes) return result;
    k *= k;
  }
}

}  // namespace setcard
