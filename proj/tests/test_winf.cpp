#include <doctest.h>

#include <random>

#include "limem/random.hpp"
#include "limem/reductions.hpp"
#include "limem/solver_winf.hpp"
#include "limem/solver_winp.hpp"
#include "oracles.hpp"

using namespace limem;

namespace {

RandomInstanceOptions both_orders() {
  RandomInstanceOptions opts;
  opts.orders = {TurnOrder::PFirst, TurnOrder::FFirst};
  return opts;
}

}  // namespace

TEST_CASE("round bound formula") {
  Arena arena({"u", "w", "z"}, {"p", "q"}, {"a"}, {"l"}, {"-"});
  CHECK(round_bound(arena, 0) == 24u);   // (0 + 6) * 4
  CHECK(round_bound(arena, 10) == 64u);  // (10 + 6) * 4
}

TEST_CASE("WIN_F agrees with the subset construction") {
  std::mt19937_64 rng(17);
  int f_wins = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const GameInstance inst = random_instance(rng, both_orders());
    const bool got = solve_winf(inst).f_wins;
    REQUIRE(got == winf_oracle_subsets(inst));
    f_wins += got;
    // Both players cannot win.
    if (got) CHECK_FALSE(oracle::first_winning_table(inst).has_value());
  }
  CHECK(f_wins > 30);
  CHECK(f_wins < 270);
}

TEST_CASE("WIN_F with two memory values agrees with the subset construction") {
  std::mt19937_64 rng(23);
  RandomInstanceOptions opts;
  opts.max_public = 2;
  opts.memory_bound = 2;
  int tried = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GameInstance inst = random_instance(rng, opts);
    if (*strategy_count(inst.arena, 2) > 4096) continue;
    ++tried;
    const WinFResult r = solve_winf(inst);
    CHECK(r.game.source_memory == 2);
    REQUIRE(r.f_wins == winf_oracle_subsets(inst));
  }
  CHECK(tried > 20);
}

TEST_CASE("knowledge game commitments only grow") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const KnowledgeGame g = build_knowledge_game(random_instance(rng, both_orders()));
    CHECK(g.nodes[0].commit.bound_count() == 0);
    for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
      REQUIRE(g.graph.succ[v].size() == g.edge_action[v].size());
      const KnowledgeNode& node = g.nodes[v];
      const Arena& arena = g.instance.arena;
      if (node.mover == Mover::FChoice) {
        CHECK(g.graph.succ[v].size() == arena.num_f_actions());
      } else {
        const auto f = arena.turn_order() == TurnOrder::PFirst ? 0 : static_cast<FActionId>(node.pending);
        const bool bound = node.commit.action[ObservationSpace(arena).observe(node.state, f)] != PartialTable::kUnbound;
        CHECK(g.graph.succ[v].size() == (bound ? 1 : arena.num_p_actions()));
      }
      for (std::uint32_t w : g.graph.succ[v]) {
        const auto& from = g.nodes[v].commit.action;
        const auto& to = g.nodes[w].commit.action;
        for (std::size_t o = 0; o < from.size(); ++o)
          if (from[o] != PartialTable::kUnbound) CHECK(to[o] == from[o]);
      }
    }
  }
}

TEST_CASE("certificates beat every table within the round bound") {
  std::mt19937_64 rng(41);
  RandomInstanceOptions opts = both_orders();
  opts.kinds = {ObjectiveKind::Reach, ObjectiveKind::Safe};
  int replayed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GameInstance inst = random_instance(rng, opts);
    const WinFResult r = solve_winf(inst);
    if (!r.f_wins) continue;
    REQUIRE(r.certificate.has_value());
    const std::uint64_t bound = round_bound(inst.arena, 0);
    for (const PStrategy& t : oracle::all_tables(inst.arena, 1)) {
      const ReplayResult rep = replay_certificate(inst, r, t);
      REQUIRE(rep.failure.empty());
      CHECK(rep.f_won);
      CHECK(rep.rounds <= bound);
      CHECK_FALSE(oracle::lasso_satisfies(inst.objective, rep.lasso));
      ++replayed;
    }
  }
  CHECK(replayed > 100);
}

TEST_CASE("parity certificates also defeat every table") {
  std::mt19937_64 rng(43);
  RandomInstanceOptions opts = both_orders();
  opts.kinds = {ObjectiveKind::Parity};
  for (int trial = 0; trial < 100; ++trial) {
    const GameInstance inst = random_instance(rng, opts);
    const WinFResult r = solve_winf(inst);
    if (!r.f_wins) continue;
    for (const PStrategy& t : oracle::all_tables(inst.arena, 1)) {
      const ReplayResult rep = replay_certificate(inst, r, t);
      REQUIRE(rep.failure.empty());
      CHECK(rep.f_won);
    }
  }
}

TEST_CASE("QBF instances") {
  // forall x1 exists y1. (x1 | y1) & (!x1 | !y1): y1 = !x1 works.
  const QbfFormula xor_true{1, CnfFormula{2, {{1, 2}, {-1, -2}}}};
  CHECK(solve_winf(qbf_to_safe_game(xor_true)).f_wins);
  CHECK(solve_winf(qbf_to_reach_game(xor_true)).f_wins);
  // forall x1 exists y1. (x1): fails for x1 = false.
  const QbfFormula unit_x{1, CnfFormula{2, {{1}}}};
  CHECK_FALSE(solve_winf(qbf_to_safe_game(unit_x)).f_wins);
  CHECK_FALSE(solve_winf(qbf_to_reach_game(unit_x)).f_wins);
}

TEST_CASE("node budget") {
  std::mt19937_64 rng(6);
  const GameInstance inst = random_instance(rng);
  CHECK_THROWS_AS(build_knowledge_game(inst, WinFOptions{1}), ResourceError);
}
