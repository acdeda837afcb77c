#include "limem/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "limem/dimacs.hpp"
#include "limem/document.hpp"
#include "limem/random.hpp"
#include "limem/reductions.hpp"
#include "limem/transforms.hpp"

namespace limem {
namespace {

struct Options {
  std::string file;
  std::string second;
  std::string kind;
  int k = 0;
  std::size_t n = 1;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t random = 0;
};

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

GameInstance read_instance(const Options& o, std::istream& in) {
  GameInstance inst = parse_instance(slurp(o.file, in));
  if (o.k > 0) inst.memory_bound = o.k;
  return inst;
}

bool enumeration_oracle(const GameInstance& inst, std::uint64_t budget) {
  StrategyEnumerator en(inst.arena, static_cast<std::uint32_t>(inst.memory_bound), budget);
  PStrategy s;
  while (en.next(s))
    if (verify_p_strategy(inst, s).winning) return true;
  return false;
}

int cross_check(const Options& o, std::istream& in, std::ostream& out) {
  std::vector<GameInstance> instances;
  if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    RandomInstanceOptions opts;
    opts.memory_bound = o.k > 0 ? o.k : 1;
    for (std::size_t i = 0; i < o.random; ++i) instances.push_back(random_instance(rng, opts));
  } else {
    instances.push_back(read_instance(o, in));
  }
  const std::uint64_t budget = o.budget > 0 ? o.budget : 1'000'000;
  Json results = Json::array();
  std::size_t agreements = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const GameInstance& inst = instances[i];
    const bool winp = solve_winp(inst, {budget}).win;
    const bool winp_oracle = enumeration_oracle(inst, budget);
    const bool winf = solve_winf(inst, {budget}).f_wins;
    const bool winf_oracle = winf_oracle_subsets(inst, budget);
    const bool agree = winp == winp_oracle && winf == winf_oracle;
    agreements += agree;
    results.push_back({{"index", i},
                       {"win_p", winp},
                       {"win_p_enumeration", winp_oracle},
                       {"f_wins", winf},
                       {"f_wins_subsets", winf_oracle},
                       {"agree", agree}});
  }
  out << canonical({{"format_version", kFormatVersion},
                    {"problem", "CROSS-CHECK"},
                    {"instances", instances.size()},
                    {"agreements", agreements},
                    {"results", std::move(results)}});
  return agreements == instances.size() ? 0 : 1;
}

int run(const std::string& cmd, const Options& o, std::istream& in, std::ostream& out) {
  if (cmd == "solve-p") {
    const GameInstance inst = read_instance(o, in);
    WinPOptions opts;
    if (o.budget > 0) opts.budget = o.budget;
    out << canonical(winp_verdict_json(inst, solve_winp(inst, opts)));
  } else if (cmd == "solve-f") {
    const GameInstance inst = read_instance(o, in);
    WinFOptions opts;
    if (o.budget > 0) opts.node_budget = o.budget;
    out << canonical(winf_verdict_json(solve_winf(inst, opts)));
  } else if (cmd == "verify") {
    if (o.second.empty() && (o.file.empty() || o.file == "-"))
      throw UsageError("verify needs the instance or the strategy as a file");
    const GameInstance inst = read_instance(o, in);
    const PStrategy strategy = strategy_from_json(inst.arena, parse_json(slurp(o.second, in)));
    out << canonical(check_verdict_json(inst.arena, verify_p_strategy(inst, strategy)));
  } else if (cmd == "gen-cnf") {
    const CnfFormula phi = parse_dimacs(slurp(o.file, in));
    out << serialize_instance(o.kind == "safe" ? cnf_to_safe_game(phi) : cnf_to_reach_game(phi));
  } else if (cmd == "gen-qbf") {
    const QbfFormula psi = parse_qdimacs(slurp(o.file, in));
    out << serialize_instance(o.kind == "reach" ? qbf_to_reach_game(psi) : qbf_to_safe_game(psi));
  } else if (cmd == "gen-prime") {
    GameInstance inst = prime_remainder_game(o.n);
    if (o.k > 0) inst.memory_bound = o.k;
    out << serialize_instance(inst);
  } else if (cmd == "unroll") {
    out << serialize_instance(unroll_memory(read_instance(o, in)));
  } else if (cmd == "counter-game") {
    out << serialize_instance(memory_exhaustion_game(read_instance(o, in)));
  } else if (cmd == "cross-check") {
    return cross_check(o, in, out);
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limited-memory partial-information games: solvers, reductions and transforms."};
  app.name("limem");
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool with_k) {
    sub->add_option("--budget", o.budget, "Override the search, node or enumeration budget");
    sub->add_option("--seed", o.seed, "Seed for randomized searches");
    if (with_k) sub->add_option("--k", o.k, "Override the memory bound")->check(CLI::PositiveNumber);
  };
  auto file_command = [&](const char* name, const char* help, bool with_k) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "Input file (standard input when omitted)");
    add_common(sub, with_k);
    return sub;
  };
  file_command("solve-p", "Decide whether P has a winning strategy; prints the certificate", true);
  file_command("solve-f", "Decide whether F has a winning strategy; prints the certificate", true);
  CLI::App* verify = file_command("verify", "Check a P strategy against an instance", true);
  verify->add_option("strategy", o.second, "Strategy or solve-p verdict file (standard input when omitted)");
  file_command("gen-cnf", "Build the reachability or safety game of a DIMACS CNF", false)
      ->add_option("--kind", o.kind, "Objective family, reach (default) or safe")
      ->check(CLI::IsMember({"reach", "safe"}));
  file_command("gen-qbf", "Build the safety or reachability game of a QDIMACS formula", false)
      ->add_option("--kind", o.kind, "Objective family, safe (default) or reach")
      ->check(CLI::IsMember({"safe", "reach"}));
  CLI::App* prime = app.add_subcommand("gen-prime", "Build the prime-remainder game for the first n primes");
  prime->add_option("--n", o.n, "Number of primes")->required()->check(CLI::PositiveNumber);
  add_common(prime, true);
  file_command("unroll", "Fold the memory bound into the state space", true);
  file_command("counter-game", "Build the counter game of a parity instance", true);
  CLI::App* cross = file_command("cross-check", "Compare the solvers with brute-force oracles", true);
  cross->add_option("--random", o.random, "Check this many random instances instead of a file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o, in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 3;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cin, std::cout, std::cerr);
}

}  // namespace limem
