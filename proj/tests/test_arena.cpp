#include <doctest.h>

#include <random>

#include "limem/arena.hpp"
#include "limem/random.hpp"
#include "oracles.hpp"

using namespace limem;

namespace {

// Two public x two private, P {a,b}, F {l,r} x {-}; every move goes to (1,1).
Arena sink_arena() {
  Arena arena({"u", "w"}, {"p", "q"}, {"a", "b"}, {"l", "r"}, {"-"});
  for (StateId s = 0; s < arena.num_states(); ++s)
    for (PAction a = 0; a < 2; ++a)
      for (FActionId f = 0; f < 2; ++f) arena.set_transition(s, a, f, 3);
  return arena;
}

}  // namespace

TEST_CASE("flat ids round-trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Arena arena = random_instance(rng).arena;
    for (StateId s = 0; s < arena.num_states(); ++s) {
      CHECK(arena.id(arena.state(s)) == s);
      CHECK(arena.pub_of(s) == arena.state(s).pub);
    }
    for (FActionId f = 0; f < arena.num_f_actions(); ++f) {
      CHECK(arena.f_id(arena.f_action(f)) == f);
      CHECK(arena.f_public_of(f) == arena.f_action(f).public_part);
    }
  }
}

TEST_CASE("validation reports holes and ranges") {
  Arena arena({"u"}, {"p", "q"}, {"a"}, {"l"}, {"-"});
  arena.set_transition(0, 0, 0, 1);
  ValidationReport report = validate_arena(arena);
  REQUIRE(report.size() == 1);
  CHECK(report[0].invariant == "delta not total");
  CHECK(report[0].detail.find("state (u,q)") != std::string::npos);

  arena.set_transition(1, 0, 0, 0);
  CHECK(validate_arena(arena).empty());
  arena.set_initial(7);
  CHECK(validate_arena(arena).at(0).invariant == "initial-range");

  Arena dup({"u", "u"}, {"p"}, {"a"}, {"l"}, {"-"});
  dup.set_transition(0, 0, 0, 0);
  dup.set_transition(1, 0, 0, 0);
  CHECK(validate_arena(dup).at(0).invariant == "labels-unique");
}

TEST_CASE("instance validation checks the objective shape") {
  GameInstance inst{sink_arena(), Objective::reach({1, 0, 0, 0}), 1, {}};
  CHECK(validate_instance(inst).empty());
  inst.objective = Objective::reach({1, 0});
  CHECK(validate_instance(inst).at(0).invariant == "objective-shape");
  inst.objective = Objective::parity({0, 1, 2, -1});
  CHECK(validate_instance(inst).at(0).invariant == "objective-shape");
  inst.objective = Objective::parity({0, 1, 2, 3});
  inst.memory_bound = 0;
  CHECK(validate_instance(inst).at(0).invariant == "memory-bound");
}

TEST_CASE("step checks ranges") {
  const Arena arena = sink_arena();
  CHECK(step(arena, 0, 1, 1) == 3);
  CHECK(step(arena, GameState{0, 1}, 0, FAction{1, 0}) == GameState{1, 1});
  CHECK_THROWS_AS(step(arena, 4, 0, 0), UsageError);
  CHECK_THROWS_AS(step(arena, 0, 2, 0), UsageError);
  CHECK_THROWS_AS(step(arena, 0, 0, 2), UsageError);
}

TEST_CASE("well-formed lassos follow delta") {
  const Arena arena = sink_arena();
  CHECK(is_well_formed(arena, Lasso{{0}, {3}}));
  CHECK(is_well_formed(arena, Lasso{{}, {3}}));
  CHECK_FALSE(is_well_formed(arena, Lasso{{3}, {0}}));
  CHECK_FALSE(is_well_formed(arena, Lasso{{0}, {}}));
}

TEST_CASE("lasso evaluation agrees with the definition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const GameInstance inst = random_instance(rng);
    const std::size_t n = inst.arena.num_states();
    Lasso lasso;
    for (std::uint64_t i = rng() % 3; i-- > 0;) lasso.stem.push_back(static_cast<StateId>(rng() % n));
    for (std::uint64_t i = 1 + rng() % 3; i-- > 0;) lasso.cycle.push_back(static_cast<StateId>(rng() % n));
    const bool expected = oracle::lasso_satisfies(inst.objective, lasso);
    CHECK(eval_lasso(inst.objective, lasso) == expected);
    // P's objective and its complement split every play.
    CHECK(eval_lasso(complement(inst.objective), lasso) == !expected);
  }
}

TEST_CASE("complement is an involution on reach and safe") {
  const Objective r = Objective::reach({1, 0, 1});
  CHECK(complement(r).kind == ObjectiveKind::Safe);
  CHECK(complement(r).target == std::vector<char>{0, 1, 0});
  CHECK(complement(complement(r)) == r);
  CHECK(complement(Objective::parity({0, 3})).priority == std::vector<int>{1, 4});
}
