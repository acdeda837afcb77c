#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "limem/arena.hpp"
#include "limem/formula.hpp"

namespace limem {

/// Draws use rng() % n so sequences are identical on every platform.
struct RandomInstanceOptions {
  std::uint32_t max_public = 3;
  std::uint32_t max_private = 2;
  std::uint32_t max_p_actions = 2;
  std::uint32_t max_f_actions = 2;
  std::vector<TurnOrder> orders{TurnOrder::PFirst};
  std::vector<ObjectiveKind> kinds{ObjectiveKind::Reach, ObjectiveKind::Safe, ObjectiveKind::Parity};
  int max_priority = 3;
  int memory_bound = 1;
};

GameInstance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& options = {});

/// Clauses of 1..max_len distinct variables with random signs.
CnfFormula random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses, int max_len = 3);
QbfFormula random_qbf(std::mt19937_64& rng, int max_blocks, int max_clauses, int max_len = 3);

}  // namespace limem
