#include <doctest.h>

#include <random>

#include "limem/dimacs.hpp"
#include "limem/formula.hpp"
#include "limem/primes.hpp"
#include "limem/random.hpp"
#include "limem/reductions.hpp"
#include "limem/solver_winf.hpp"
#include "limem/solver_winp.hpp"

using namespace limem;

namespace {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Game semantics: forall picks x_i, exists picks y_i, matrix checked at the leaves.
bool qbf_value(const QbfFormula& psi, Assignment& a, int var) {
  if (var > psi.matrix.num_vars) {
    for (const auto& clause : psi.matrix.clauses) {
      bool sat = false;
      for (int lit : clause) sat = sat || (a[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0));
      if (!sat) return false;
    }
    return true;
  }
  const bool universal = var % 2 == 1;
  for (bool v : {false, true}) {
    a[static_cast<std::size_t>(var - 1)] = v;
    const bool r = qbf_value(psi, a, var + 1);
    if (universal && !r) return false;
    if (!universal && r) return true;
  }
  return universal;
}

bool any_model(const CnfFormula& phi) {
  for (std::uint64_t bits = 0; bits < (1ULL << phi.num_vars); ++bits) {
    Assignment a(static_cast<std::size_t>(phi.num_vars));
    for (int v = 0; v < phi.num_vars; ++v) a[static_cast<std::size_t>(v)] = bits >> v & 1;
    if (eval_cnf(phi, a)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("first primes and primorials") {
  const auto primes = first_n_primes(200);
  std::uint64_t candidate = 1;
  for (std::uint64_t p : primes) {
    do ++candidate;
    while (!is_prime(candidate));
    CHECK(p == candidate);
  }
  CHECK(primorial(0) == 1);
  CHECK(primorial(1) == 2);
  CHECK(primorial(5) == 2310);
  CHECK(primorial(20).get_str() == "557940830126698960967415390");
  // p_n < n^2 for n >= 2.
  for (std::size_t n = 2; n <= primes.size(); ++n) CHECK(primes[n - 1] < n * n);
}

TEST_CASE("formula checks") {
  CHECK_THROWS_AS(check_formula(CnfFormula{2, {{}}}), UsageError);
  CHECK_THROWS_AS(check_formula(CnfFormula{2, {{3}}}), UsageError);
  CHECK_THROWS_AS(check_formula(CnfFormula{2, {{0}}}), UsageError);
  CHECK_NOTHROW(check_formula(CnfFormula{2, {{1, -2}}}));
  CHECK_THROWS_AS(check_formula(QbfFormula{1, CnfFormula{3, {{1}}}}), UsageError);
}

TEST_CASE("SAT brute force finds the least model") {
  const CnfFormula phi{3, {{1, 2}, {-1, 3}, {-2}}};
  const auto model = sat_bruteforce(phi);
  REQUIRE(model.has_value());
  CHECK(*model == Assignment{true, false, true});
  CHECK_FALSE(sat_bruteforce(CnfFormula{1, {{1}, {-1}}}).has_value());

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const CnfFormula r = random_cnf(rng, 4, 5);
    const auto m = sat_bruteforce(r);
    CHECK(m.has_value() == any_model(r));
    if (m) CHECK(eval_cnf(r, *m));
  }
}

TEST_CASE("QBF brute force agrees with game semantics") {
  std::mt19937_64 rng(7);
  int truths = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const QbfFormula psi = random_qbf(rng, 3, 4);
    Assignment a(static_cast<std::size_t>(psi.matrix.num_vars));
    const bool expected = qbf_value(psi, a, 1);
    CHECK(qbf_bruteforce(psi) == expected);
    truths += expected;
  }
  CHECK(truths > 0);
  CHECK(truths < 300);
}

TEST_CASE("DIMACS parsing") {
  const CnfFormula phi = parse_dimacs("c sample\np cnf 3 2\n1 -3 0\n2\n3 0\n%\n0\n");
  CHECK(phi == CnfFormula{3, {{1, -3}, {2, 3}}});
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), UsageError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), UsageError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), UsageError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), UsageError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\na 1 0\n1 0\n"), UsageError);
  try {
    parse_dimacs("p cnf 2 1\n1 x 0\n");
    FAIL("expected an error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("QDIMACS parsing normalises the prefix") {
  // forall 1 exists 2 forall 3 exists 4 maps one to one.
  QbfFormula psi = parse_qdimacs("p cnf 4 2\na 1 0\ne 2 0\na 3 0\ne 4 0\n1 2 0\n-3 4 0\n");
  CHECK(psi.num_blocks == 2);
  CHECK(psi.matrix.clauses == std::vector<std::vector<int>>{{1, 2}, {-3, 4}});

  // exists 1 . forall 2: padding x before 1, padding y after 2.
  psi = parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 -2 0\n");
  CHECK(psi.num_blocks == 2);
  CHECK(psi.matrix.num_vars == 4);
  CHECK(psi.matrix.clauses == std::vector<std::vector<int>>{{2, -3}});

  // Free variable 3 is an outermost existential.
  psi = parse_qdimacs("p cnf 3 1\na 1 0\ne 2 0\n3 0\n");
  CHECK(psi.matrix.clauses == std::vector<std::vector<int>>{{2}});

  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 0\ne 1 0\n1 0\n"), UsageError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\na 1 0\n1 0\ne 2 0\n"), UsageError);
}

TEST_CASE("CNF arena shape") {
  const CnfFormula phi{2, {{1, 2}, {-1}, {2}}};
  const GameInstance r = cnf_to_reach_game(phi);
  const GameInstance s = cnf_to_safe_game(phi);
  CHECK(validate_instance(r).empty());
  CHECK(validate_instance(s).empty());
  CHECK(r.arena == s.arena);
  CHECK(r.arena.num_public() == 5);
  CHECK(r.arena.num_private() == 6);
  CHECK(r.arena.public_labels()[3] == "x2.F");
  CHECK(r.arena.private_labels()[5] == "C3.T");
  CHECK(r.arena.state_label(r.arena.initial()) == "(inf,C1.F)");
  CHECK(r.metadata.at("family") == "cnf-reach");
  // Reach: the five (v, (C_m, T)) states. Safe: all but (x2.*, (C3, F)).
  int reach = 0, unsafe = 0;
  for (StateId v = 0; v < r.arena.num_states(); ++v) {
    reach += r.objective.in_target(v);
    unsafe += !s.objective.in_target(v);
  }
  CHECK(reach == 5);
  CHECK(unsafe == 2);
  CHECK_FALSE(s.objective.in_target(r.arena.id({3, 4})));
}

TEST_CASE("CNF games decide satisfiability") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const CnfFormula phi = random_cnf(rng, 3, 3);
    const bool sat = any_model(phi);
    CHECK(solve_winp(cnf_to_reach_game(phi)).win == sat);
    CHECK(solve_winp(cnf_to_safe_game(phi)).win == sat);
  }
}

TEST_CASE("QBF arena shape") {
  const QbfFormula psi{2, CnfFormula{4, {{1, 2}, {-3, 4}}}};
  const GameInstance s = qbf_to_safe_game(psi);
  const GameInstance r = qbf_to_reach_game(psi);
  CHECK(validate_instance(s).empty());
  CHECK(validate_instance(r).empty());
  CHECK(s.arena.num_public() == 9);
  CHECK(s.arena.public_labels()[5] == "y1.F");
  CHECK(s.arena.p_action_labels() == std::vector<std::string>{"F", "T", "e"});
  int accepting = 0, goal = 0;
  for (StateId v = 0; v < s.arena.num_states(); ++v) {
    accepting += !s.objective.in_target(v);
    goal += r.objective.in_target(v);
  }
  CHECK(accepting == 1);
  CHECK(goal == 2);
}

TEST_CASE("QBF games decide truth") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const QbfFormula psi = random_qbf(rng, 2, 2);
    Assignment a(static_cast<std::size_t>(psi.matrix.num_vars));
    const bool value = qbf_value(psi, a, 1);
    CHECK(solve_winf(qbf_to_safe_game(psi)).f_wins == value);
    CHECK(solve_winf(qbf_to_reach_game(psi)).f_wins == value);
  }
}

TEST_CASE("prime remainder arena") {
  const GameInstance g = prime_remainder_game(2);
  CHECK(validate_instance(g).empty());
  CHECK(g.arena.turn_order() == TurnOrder::FFirst);
  CHECK(g.metadata.at("primes") == "2");
  // choose, two counters and two remainder tracks (2 + 3 each), X, void.
  CHECK(g.arena.num_private() == 13);
  CHECK(g.arena.private_labels()[prime_remainder_rem_state(2, 1, 2)] == "rem2.2");
  CHECK(g.arena.f_public_labels() == std::vector<std::string>{"s", "rev1", "rev2"});
  CHECK_FALSE(g.objective.in_target(g.arena.id({0, prime_remainder_rem_state(2, 1, 1)})));
  CHECK(g.objective.in_target(g.arena.id({0, prime_remainder_rem_state(2, 1, 0)})));
  CHECK_THROWS_AS(prime_remainder_game(0), UsageError);
}

TEST_CASE("revealed remainders follow the Chinese remainder theorem") {
  const std::size_t n = 3;
  const GameInstance g = prime_remainder_game(n);
  const Arena& arena = g.arena;
  const auto primes = first_n_primes(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint64_t count = 0; count <= 40; ++count) {
      StateId s = arena.initial();
      for (std::uint64_t c = 0; c < count; ++c) s = step(arena, s, static_cast<PAction>(c % 2), arena.f_id({0, i}));
      s = step(arena, s, 0, arena.f_id({i + 1, i}));
      const GameState revealed = arena.state(s);
      CHECK(revealed.pub == 1);
      CHECK(revealed.priv == prime_remainder_rem_state(n, i, count % primes[i]));
    }
}
