#include <doctest.h>

#include <random>

#include "limem/game_solver.hpp"
#include "oracles.hpp"

using namespace limem;

namespace {

GameGraph random_game(std::mt19937_64& rng, ObjectiveKind kind) {
  GameGraph g;
  const std::size_t n = 2 + rng() % 6;
  for (std::size_t v = 0; v < n; ++v) {
    g.owner.push_back(rng() % 2 ? Owner::F : Owner::P);
    std::vector<std::uint32_t> out;
    for (std::size_t d = 1 + rng() % 3; d-- > 0;) {
      const auto w = static_cast<std::uint32_t>(rng() % n);
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
    g.succ.push_back(out);
  }
  g.f_objective.kind = kind;
  for (std::size_t v = 0; v < n; ++v) {
    if (kind == ObjectiveKind::Parity)
      g.f_objective.priority.push_back(static_cast<int>(rng() % 4));
    else
      g.f_objective.target.push_back(rng() % 3 == 0);
  }
  return g;
}

}  // namespace

TEST_CASE("solver agrees with positional enumeration") {
  std::mt19937_64 rng(99);
  for (ObjectiveKind kind : {ObjectiveKind::Reach, ObjectiveKind::Safe, ObjectiveKind::Parity}) {
    int f_won = 0;
    for (int trial = 0; trial < 300; ++trial) {
      GameGraph g = random_game(rng, kind);
      const GameSolution sol = solve_game(g);
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        g.initial = v;
        const bool expected = oracle::f_wins_positional(g);
        REQUIRE(static_cast<bool>(sol.f_wins[v]) == expected);
        f_won += expected;
      }
      // Fixing F's reported choices must win from every node of F's region.
      auto fixed = g.succ;
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (g.owner[v] != Owner::F || !sol.f_wins[v]) continue;
        REQUIRE(sol.f_choice[v] >= 0);
        fixed[v] = {g.succ[v][static_cast<std::size_t>(sol.f_choice[v])]};
      }
      for (std::uint32_t v = 0; v < g.size(); ++v)
        if (sol.f_wins[v]) CHECK_FALSE(oracle::violating_path_exists(fixed, v, g.f_objective));
    }
    CHECK(f_won > 0);
  }
}

TEST_CASE("small hand-made games") {
  // 0 (F) -> {1, 2}; 1 (P) -> {1}; 2 (P) -> {0, 2}.
  GameGraph g;
  g.owner = {Owner::F, Owner::P, Owner::P};
  g.succ = {{1, 2}, {1}, {0, 2}};
  g.f_objective = Objective::reach({0, 1, 0});
  GameSolution sol = solve_game(g);
  CHECK(sol.f_wins == std::vector<char>{1, 1, 0});
  CHECK(sol.f_choice[0] == 0);

  g.f_objective = Objective::safe({1, 0, 1});
  sol = solve_game(g);
  CHECK(sol.f_wins == std::vector<char>{1, 0, 1});
  CHECK(sol.f_choice[0] == 1);

  // P can stay on the odd self-loop at 2, which has the least priority.
  g.f_objective = Objective::parity({2, 0, 1});
  sol = solve_game(g);
  CHECK(sol.f_wins == std::vector<char>{1, 1, 0});
}
