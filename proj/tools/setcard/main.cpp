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

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "report.hpp"
#include "setcard/hardness.hpp"
#include "setcard/itree.hpp"
#include "setcard/parser.hpp"
#include "setcard/semantics.hpp"
#include "setcard/solver.hpp"

namespace setcard::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

Problem load_problem(const std::string& path) {
  try {
    return parse_problem(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.span().to_string() + ": " + e.what());
  } catch (const TypeCheckError& e) {
    throw InputError(path + ":" + e.span().to_string() + ": " + e.what());
  }
}

ITree load_itree(const std::string& path) {
  try {
    ITree t = parse_itree(read_file(path));
    validate(t);
    return t;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.span().to_string() + ": " + e.what());
  } catch (const MalformedTree& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Common {
  bool json = false;
  bool model = false;
  bool no_timing = false;
};

class Clock {
 public:
  std::uint64_t ms(const Common& c) const {
    if (c.no_timing) return 0;
    auto d = std::chrono::steady_clock::now() - start_;
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Report& r, const Common& c) {
  std::cout << (c.json ? render_json(r) : render_text(r, c.model));
}

bool resource_reason(const std::string& reason) {
  return reason == "time-limit" || reason == "branch-limit" || reason == "ilp-node-limit" ||
         reason == "too-many-set-variables" || reason == "pattern-budget" || reason == "budget";
}

void add_common(CLI::App* app, Common& c, bool model_flag = false) {
  app->add_flag("--json", c.json, "Print the report as JSON");
  app->add_flag("--no-timing", c.no_timing, "Report 0 ms so output is byte-reproducible");
  if (model_flag) app->add_flag("--model", c.model, "Print the model in text mode");
}

SolveLimits limits_from(double seconds, std::uint64_t ilp_nodes) {
  SolveLimits limits;
  if (seconds > 0) limits.time_limit = std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0));
  limits.ilp_node_limit = ilp_nodes;
  return limits;
}

// ---------------------------------------------------------------- commands

struct SolveArgs {
  std::string file;
  std::string strategy = "explicit";
  std::optional<std::size_t> sparse_k;
  bool no_escalate = false;
  double time_limit = 60;
  std::uint64_t ilp_nodes = 1'000'000;
  Common common;
};

int run_solve(const SolveArgs& a) {
  Clock clock;
  Problem p = load_problem(a.file);
  SolveLimits limits = limits_from(a.time_limit, a.ilp_nodes);
  Strategy strategy = a.strategy == "sparse" ? Strategy::sparse(a.sparse_k) : Strategy::explicit_regions();
  Verdict v = solve(p, strategy, limits);
  std::string used = strategy.kind == Strategy::Kind::Sparse ? "sparse(" + std::to_string(v.sparse_k) + ")" : "explicit";
  SolveStats stats = v.stats;
  if (v.kind == Verdict::Kind::Unknown && v.reason == "sparse-incomplete" && !a.no_escalate) {
    Verdict e = solve(p, Strategy::explicit_regions(), limits);
    e.stats.branches += stats.branches;
    e.stats.ilp_nodes += stats.ilp_nodes;
    stats = e.stats;
    v = std::move(e);
    used += "->explicit";
  }
  Report r;
  r.verdict = to_string(v.kind);
  if (v.kind == Verdict::Kind::Sat) r.model = v.model;
  if (v.kind == Verdict::Kind::Unknown) {
    r.extra["reason"] = v.reason;
    r.details.push_back("reason " + v.reason);
  }
  r.branches = stats.branches;
  r.ilp_nodes = stats.ilp_nodes;
  r.strategy = used;
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return v.kind == Verdict::Kind::Unknown && resource_reason(v.reason) ? kExitResource : kExitOk;
}

struct EntailArgs {
  std::string file1, file2;
  double time_limit = 60;
  std::uint64_t ilp_nodes = 1'000'000;
  Common common;
};

int run_entail(const EntailArgs& a) {
  Clock clock;
  Problem p1 = load_problem(a.file1);
  Problem p2 = load_problem(a.file2);
  EntailVerdict v;
  try {
    v = entails(p1, p2, limits_from(a.time_limit, a.ilp_nodes));
  } catch (const SortMismatch& e) {
    throw InputError(e.what());
  }
  Report r;
  r.verdict = to_string(v.kind);
  if (v.kind == EntailVerdict::Kind::No) r.model = v.counter_model;
  if (v.kind == EntailVerdict::Kind::Unknown) {
    r.extra["reason"] = v.reason;
    r.details.push_back("reason " + v.reason);
  }
  r.branches = v.stats.branches;
  r.ilp_nodes = v.stats.ilp_nodes;
  r.strategy = "explicit";
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return v.kind == EntailVerdict::Kind::Unknown && resource_reason(v.reason) ? kExitResource : kExitOk;
}

struct TreeArgs {
  std::string file1, file2;
  std::size_t pattern_budget = 4096;
  Common common;
};

int run_itree_sat(const TreeArgs& a) {
  Clock clock;
  ITree t = load_itree(a.file1);
  ITreeSat s = itree_sat(t);
  Report r;
  r.verdict = s.sat ? "sat" : "unsat";
  r.strategy = "itree";
  if (s.sat) {
    r.model = realize_witness(t, s.witness);
    Json w = Json::object();
    for (const auto& [name, v] : s.witness) {
      w[name] = to_decimal(v);
      r.details.push_back("|" + name + "| = " + to_decimal(v));
    }
    r.extra["witness"] = std::move(w);
  }
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return kExitOk;
}

int run_itree_tighten(const TreeArgs& a) {
  Clock clock;
  ITree t = load_itree(a.file1);
  ITreeSat s = itree_sat(t);
  Report r;
  r.strategy = "itree";
  if (!s.sat) {
    r.verdict = "unsat";
  } else {
    r.verdict = "sat";
    r.model = realize_witness(t, s.witness);
    Json iv = Json::object();
    for (const auto& [name, interval] : tighten(t)) {
      const std::string hi = interval.hi ? to_decimal(*interval.hi) : "inf";
      iv[name] = Json{{"lo", to_decimal(interval.lo)}, {"hi", hi}};
      r.details.push_back(name + " [" + to_decimal(interval.lo) + ", " + hi + "]");
    }
    r.extra["intervals"] = std::move(iv);
  }
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return kExitOk;
}

int run_itree_entail(const TreeArgs& a) {
  Clock clock;
  ITree t1 = load_itree(a.file1);
  ITree t2 = load_itree(a.file2);
  ITreeEntailOptions options;
  options.pattern_budget = a.pattern_budget;
  EntailResult res = itree_entails(t1, t2, options);
  Report r;
  r.strategy = "itree";
  int code = kExitOk;
  if (std::holds_alternative<EntailYes>(res)) {
    r.verdict = "yes";
  } else if (auto* no = std::get_if<EntailNo>(&res)) {
    r.verdict = "no";
    r.model = no->counter_model;
    r.extra["violated"] = no->violated;
    r.details.push_back("violated " + no->violated);
  } else {
    const auto& u = std::get<EntailUnknown>(res);
    r.verdict = "unknown";
    r.extra["reason"] = u.reason;
    r.details.push_back("reason " + u.reason);
    if (resource_reason(u.reason)) code = kExitResource;
  }
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return code;
}

struct OracleArgs {
  std::string file;
  std::uint64_t region_bound = 6;
  std::uint64_t int_bound = 6;
  std::uint64_t ceiling = 100'000'000;
  Common common;
};

int run_oracle(const OracleArgs& a) {
  Clock clock;
  Problem p = load_problem(a.file);
  OracleOptions options;
  options.region_bound = a.region_bound;
  options.int_bound = a.int_bound;
  options.ceiling = a.ceiling;
  Report r;
  r.strategy = "oracle(" + std::to_string(a.region_bound) + "," + std::to_string(a.int_bound) + ")";
  int code = kExitOk;
  try {
    OracleResult o = oracle_sat(p, options);
    r.verdict = o.sat ? "sat" : "unsat";
    if (o.sat) r.model = o.model;
    r.branches = o.candidates;
  } catch (const BudgetExceeded& e) {
    r.verdict = "unknown";
    r.extra["reason"] = "budget";
    r.details.push_back("reason budget");
    code = kExitResource;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return code;
}

struct EncodeArgs {
  std::string file;
  std::string out;
};

int run_encode_3sat(const EncodeArgs& a) {
  Cnf3 c;
  try {
    c = read_dimacs(read_file(a.file));
  } catch (const MalformedCnf& e) {
    throw InputError(a.file + ": " + e.what());
  }
  write_output(a.out, print_problem(encode_3sat(c)));
  return kExitOk;
}

int run_encode_subset_sum(const EncodeArgs& a) {
  SubsetSumInstance s;
  try {
    s = read_subset_sum(read_file(a.file));
  } catch (const MalformedInstance& e) {
    throw InputError(a.file + ": " + e.what());
  }
  write_output(a.out, print_problem(encode_subset_sum(s)));
  return kExitOk;
}

struct GenArgs {
  std::uint64_t seed = 0;
  GenProfile profile;
  std::string out;
};

int run_gen(const GenArgs& a) {
  write_output(a.out, print_problem(gen_random(a.seed, a.profile)));
  return kExitOk;
}

struct CheckArgs {
  std::uint64_t seed = 0;
  std::uint64_t count = 100;
  std::string profile = "small";
  bool bounded = false;
  double time_limit = 60;
  Common common;
};

int run_check(const CheckArgs& a) {
  Clock clock;
  GenProfile profile;
  if (a.profile == "tiny") {
    profile.set_vars = 1;
    profile.int_vars = 1;
    profile.depth = 2;
  }
  profile.bounded = a.bounded;
  OracleOptions oracle;
  std::uint64_t sat = 0, unsat = 0, branches = 0, nodes = 0;
  Json disagreements = Json::array();
  for (std::uint64_t i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.seed + i;
    Problem p = gen_random(seed, profile);
    Verdict v = solve(p, Strategy::explicit_regions(), limits_from(a.time_limit, 1'000'000));
    branches += v.stats.branches;
    nodes += v.stats.ilp_nodes;
    std::string expected;
    try {
      expected = oracle_sat(p, oracle).sat ? "sat" : "unsat";
    } catch (const BudgetExceeded&) {
      expected = "unknown";
    }
    const std::string got = to_string(v.kind);
    if (got == "sat") ++sat;
    if (got == "unsat") ++unsat;
    if (got != expected) {
      disagreements.push_back(Json{{"seed", seed}, {"solver", got}, {"oracle", expected}});
      std::cerr << "disagreement at seed " << seed << ": solver " << got << ", oracle " << expected << "\n"
                << print_problem(p);
    }
  }
  Report r;
  r.verdict = disagreements.empty() ? "yes" : "no";
  r.strategy = "explicit";
  r.branches = branches;
  r.ilp_nodes = nodes;
  r.extra["checked"] = a.count;
  r.extra["sat"] = sat;
  r.extra["unsat"] = unsat;
  r.extra["disagreements"] = disagreements;
  r.details.push_back("checked " + std::to_string(a.count) + " sat " + std::to_string(sat) + " unsat " +
                      std::to_string(unsat) + " disagreements " + std::to_string(disagreements.size()));
  r.ms = clock.ms(a.common);
  emit(r, a.common);
  return disagreements.empty() ? kExitOk : kExitDisagree;
}

struct EvalArgs {
  std::string file;
  std::string model;
};

int run_eval(const EvalArgs& a) {
  Problem p = load_problem(a.file);
  Model m;
  try {
    m = model_from_json(Json::parse(read_file(a.model)));
  } catch (const Json::exception& e) {
    throw InputError(a.model + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(a.model + ": " + e.what());
  }
  try {
    std::cout << (eval_formula(p.formula, m) ? "true" : "false") << "\n";
  } catch (const UnassignedVariable& e) {
    throw InputError(a.model + ": " + e.what());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"setcard: decision procedures for set and cardinality constraints"};
  app.require_subcommand(1);
  int code = kExitOk;

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Decide satisfiability of a .cbs problem");
  solve_cmd->add_option("FILE", solve_args.file)->required();
  solve_cmd->add_option("--strategy", solve_args.strategy)->check(CLI::IsMember({"explicit", "sparse"}));
  solve_cmd->add_option("--sparse-k", solve_args.sparse_k, "Nonzero-region budget for the sparse strategy");
  solve_cmd->add_flag("--no-escalate", solve_args.no_escalate, "Do not fall back to explicit after sparse-incomplete");
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Seconds; 0 disables")->capture_default_str();
  solve_cmd->add_option("--ilp-node-limit", solve_args.ilp_nodes)->capture_default_str();
  add_common(solve_cmd, solve_args.common, true);
  solve_cmd->callback([&] { code = run_solve(solve_args); });

  EntailArgs entail_args;
  auto* entail_cmd = app.add_subcommand("entail", "Does FILE1 entail FILE2?");
  entail_cmd->add_option("FILE1", entail_args.file1)->required();
  entail_cmd->add_option("FILE2", entail_args.file2)->required();
  entail_cmd->add_option("--time-limit", entail_args.time_limit)->capture_default_str();
  entail_cmd->add_option("--ilp-node-limit", entail_args.ilp_nodes)->capture_default_str();
  add_common(entail_cmd, entail_args.common, true);
  entail_cmd->callback([&] { code = run_entail(entail_args); });

  TreeArgs tree_args;
  auto* isat_cmd = app.add_subcommand("itree-sat", "Satisfiability of an i-tree");
  isat_cmd->add_option("FILE", tree_args.file1)->required();
  add_common(isat_cmd, tree_args.common, true);
  isat_cmd->callback([&] { code = run_itree_sat(tree_args); });

  auto* itight_cmd = app.add_subcommand("itree-tighten", "Exact cardinality intervals of an i-tree");
  itight_cmd->add_option("FILE", tree_args.file1)->required();
  add_common(itight_cmd, tree_args.common, true);
  itight_cmd->callback([&] { code = run_itree_tighten(tree_args); });

  auto* ient_cmd = app.add_subcommand("itree-entail", "Does i-tree FILE1 entail i-tree FILE2?");
  ient_cmd->add_option("FILE1", tree_args.file1)->required();
  ient_cmd->add_option("FILE2", tree_args.file2)->required();
  ient_cmd->add_option("--pattern-budget", tree_args.pattern_budget)->capture_default_str();
  add_common(ient_cmd, tree_args.common, true);
  ient_cmd->callback([&] { code = run_itree_entail(tree_args); });

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Bounded brute-force satisfiability");
  oracle_cmd->add_option("FILE", oracle_args.file)->required();
  oracle_cmd->add_option("--region-bound", oracle_args.region_bound)->required();
  oracle_cmd->add_option("--int-bound", oracle_args.int_bound)->required();
  oracle_cmd->add_option("--ceiling", oracle_args.ceiling)->capture_default_str();
  add_common(oracle_cmd, oracle_args.common, true);
  oracle_cmd->callback([&] { code = run_oracle(oracle_args); });

  EncodeArgs encode_args;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a hardness instance as a problem");
  encode_cmd->require_subcommand(1);
  auto* sat_cmd = encode_cmd->add_subcommand("3sat", "DIMACS 3-CNF");
  sat_cmd->add_option("FILE", encode_args.file)->required();
  sat_cmd->add_option("-o,--output", encode_args.out, "Output .cbs (default stdout)");
  sat_cmd->callback([&] { code = run_encode_3sat(encode_args); });
  auto* ss_cmd = encode_cmd->add_subcommand("subsetsum", "Target line, then one item per line");
  ss_cmd->add_option("FILE", encode_args.file)->required();
  ss_cmd->add_option("-o,--output", encode_args.out, "Output .cbs (default stdout)");
  ss_cmd->callback([&] { code = run_encode_subset_sum(encode_args); });

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random problem");
  gen_cmd->add_option("--seed", gen_args.seed)->required();
  gen_cmd->add_option("--set-vars", gen_args.profile.set_vars)->capture_default_str();
  gen_cmd->add_option("--int-vars", gen_args.profile.int_vars)->capture_default_str();
  gen_cmd->add_option("--depth", gen_args.profile.depth)->capture_default_str();
  gen_cmd->add_option("--const-bits", gen_args.profile.const_bits)->capture_default_str()->check(CLI::Range(1U, 4096U));
  gen_cmd->add_flag("--bounded", gen_args.profile.bounded, "Conjoin guards keeping every solution inside the oracle box");
  gen_cmd->add_option("-o,--output", gen_args.out, "Output .cbs (default stdout)");
  gen_cmd->callback([&] { code = run_gen(gen_args); });

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Differential run of the solver against the oracle");
  check_cmd->add_option("--seed", check_args.seed)->required();
  check_cmd->add_option("--count", check_args.count)->required();
  check_cmd->add_option("--profile", check_args.profile)->check(CLI::IsMember({"small", "tiny"}))->capture_default_str();
  check_cmd->add_flag("--bounded", check_args.bounded, "Generate with oracle-box guards");
  check_cmd->add_option("--time-limit", check_args.time_limit)->capture_default_str();
  add_common(check_cmd, check_args.common);
  check_cmd->callback([&] { code = run_check(check_args); });

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "");
  eval_cmd->group("");
  eval_cmd->add_option("FILE", eval_args.file)->required();
  eval_cmd->add_option("MODEL", eval_args.model)->required();
  eval_cmd->callback([&] { code = run_eval(eval_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return code;
}

}  // namespace setcard::cli

int main(int argc, char** argv) {
  try {
    return setcard::cli::run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
