#include <doctest.h>

#include <random>

#include "limem/random.hpp"
#include "limem/strategy.hpp"
#include "oracles.hpp"

using namespace limem;

namespace {

PStrategy random_table(std::mt19937_64& rng, const Arena& arena, std::uint32_t k) {
  PStrategy t(ObservationSpace(arena).size(), k, static_cast<std::uint32_t>(rng() % k));
  for (std::size_t s = 0; s < t.num_slots(); ++s)
    t.set_slot(s, PMove{static_cast<PAction>(rng() % arena.num_p_actions()), static_cast<std::uint32_t>(rng() % k)});
  return t;
}

RandomInstanceOptions mixed_orders(int k) {
  RandomInstanceOptions opts;
  opts.orders = {TurnOrder::PFirst, TurnOrder::FFirst};
  opts.memory_bound = k;
  return opts;
}

}  // namespace

TEST_CASE("observation indices round-trip") {
  Arena arena({"u", "w"}, {"p"}, {"a"}, {"l", "m", "r"}, {"x", "y"}, TurnOrder::FFirst);
  const ObservationSpace obs(arena);
  CHECK(obs.size() == 6);
  CHECK(obs.sees_f_action());
  for (std::size_t i = 0; i < obs.size(); ++i) CHECK(obs.index(obs.observation(i)) == i);
  CHECK(obs.label(arena, 4) == "w|m");
  // F action (r, y) seen from public state w.
  CHECK(obs.observe(arena.id({1, 0}), arena.f_id({2, 1})) == 5);
  CHECK_THROWS_AS(obs.index(Observation{0, std::nullopt}), UsageError);

  arena.set_turn_order(TurnOrder::PFirst);
  const ObservationSpace plain(arena);
  CHECK(plain.size() == 2);
  CHECK(plain.observe(arena.id({1, 0}), 5) == 1);
}

TEST_CASE("strategy shape checks") {
  CHECK_THROWS_AS(PStrategy(2, 0), UsageError);
  CHECK_THROWS_AS(PStrategy(2, 2, 2), UsageError);
  PStrategy t(2, 2);
  CHECK(t.num_slots() == 4);
  CHECK(t.slot(1, 1) == 3);
  CHECK_THROWS_AS(t.embed(1), UsageError);

  Arena arena({"u", "w"}, {"p"}, {"a", "b"}, {"l"}, {"-"});
  t.set(1, 0, PMove{2, 0});
  CHECK_THROWS_AS(check_compatible(arena, t), UsageError);
  CHECK_THROWS_AS(check_compatible(arena, PStrategy(3, 1)), UsageError);
}

TEST_CASE("verification agrees with the nested-DFS oracle") {
  std::mt19937_64 rng(21);
  int winning = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 1 + static_cast<int>(trial % 2);
    const GameInstance inst = random_instance(rng, mixed_orders(k));
    const PStrategy t = random_table(rng, inst.arena, static_cast<std::uint32_t>(k));
    const Verdict v = verify_p_strategy(inst, t);
    REQUIRE(v.winning == oracle::strategy_wins(inst, t));
    winning += v.winning;
    if (v.winning) {
      CHECK_FALSE(v.witness.has_value());
      continue;
    }
    // The witness is a real play of the strategy that P loses.
    REQUIRE(v.witness.has_value());
    const Witness& w = *v.witness;
    CHECK(w.f_script.size() == w.lasso.stem.size() + w.lasso.cycle.size());
    const Play play = simulate(inst.arena, t, w.f_script);
    std::vector<StateId> expected = w.lasso.stem;
    expected.insert(expected.end(), w.lasso.cycle.begin(), w.lasso.cycle.end());
    expected.push_back(w.lasso.cycle.front());
    CHECK(play.states == expected);
    CHECK(play.memories[w.lasso.stem.size()] == play.memories.back());
    CHECK(is_well_formed(inst.arena, w.lasso));
    CHECK_FALSE(oracle::lasso_satisfies(inst.objective, w.lasso));
  }
  // Both outcomes occur often enough for the comparison to mean something.
  CHECK(winning > 40);
  CHECK(winning < 360);
}

TEST_CASE("embedding into more memory keeps the verdict") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    GameInstance inst = random_instance(rng, mixed_orders(1));
    const PStrategy t = random_table(rng, inst.arena, 1);
    const bool before = verify_p_strategy(inst, t).winning;
    inst.memory_bound = 3;
    CHECK(verify_p_strategy(inst, t.embed(3)).winning == before);
  }
}

TEST_CASE("strategies above the memory bound are rejected") {
  std::mt19937_64 rng(1);
  const GameInstance inst = random_instance(rng);
  CHECK_THROWS_AS(verify_p_strategy(inst, random_table(rng, inst.arena, 2)), UsageError);
}

TEST_CASE("induced graph starts at the initial node") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const GameInstance inst = random_instance(rng, mixed_orders(2));
    const PStrategy t = random_table(rng, inst.arena, 2);
    const InducedGraph g = induced_graph(inst.arena, t);
    CHECK(g.nodes[0].state == inst.arena.initial());
    CHECK(g.nodes[0].memory == t.initial_memory());
    for (const auto& edges : g.succ) {
      CHECK_FALSE(edges.empty());
      for (const InducedEdge& e : edges) CHECK(e.target < g.nodes.size());
    }
  }
}

TEST_CASE("simulation follows the table") {
  Arena arena({"u", "w"}, {"p"}, {"a", "b"}, {"l", "r"}, {"-"});
  // a moves to w, b back to u; F is irrelevant.
  for (StateId s = 0; s < 2; ++s)
    for (FActionId f = 0; f < 2; ++f) {
      arena.set_transition(s, 0, f, 1);
      arena.set_transition(s, 1, f, 0);
    }
  PStrategy t(2, 2);
  t.set(0, 0, PMove{0, 1});
  t.set(1, 1, PMove{1, 0});
  const Play play = simulate(arena, t, {0, 1, 0});
  CHECK(play.states == std::vector<StateId>{0, 1, 0, 1});
  CHECK(play.p_actions == std::vector<PAction>{0, 1, 0});
  CHECK(play.memories == std::vector<std::uint32_t>{0, 1, 0, 1});
  CHECK_THROWS_AS(simulate(arena, t, {}), UsageError);
  CHECK_THROWS_AS(simulate(arena, t, {2}), UsageError);
}
