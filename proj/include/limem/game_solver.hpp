#pragma once

#include <cstdint>
#include <vector>

#include "limem/arena.hpp"

namespace limem {

enum class Owner : std::uint8_t { P, F };

/// Explicit turn-based full-information game. `f_objective` is F's
/// condition over node ids, using the same Reach/Safe/min-even-Parity
/// conventions as Objective. Every node must have a successor.
struct GameGraph {
  std::vector<Owner> owner;
  std::vector<std::vector<std::uint32_t>> succ;
  std::uint32_t initial = 0;
  Objective f_objective;

  std::size_t size() const { return owner.size(); }
};

struct GameSolution {
  std::vector<char> f_wins;
  /// For F-owned nodes in F's region: index into succ of the positional choice; -1 elsewhere.
  std::vector<std::int32_t> f_choice;

  bool f_wins_initial(const GameGraph& g) const { return f_wins[g.initial] != 0; }
};

/// Attractor computation for Reach/Safe, Zielonka's recursive algorithm for parity.
GameSolution solve_game(const GameGraph& game);

}  // namespace limem
