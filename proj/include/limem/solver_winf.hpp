#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "limem/arena.hpp"
#include "limem/game_solver.hpp"
#include "limem/strategy.hpp"

namespace limem {

inline constexpr std::uint64_t kDefaultNodeBudget = 2'000'000;

/// Rounds within which F can force a win: (v3 + |V^pub| |V^priv|)(|V^pub| + 1).
std::uint64_t round_bound(const Arena& arena, std::uint64_t v3_size);

enum class Mover : std::uint8_t { PChoice, FChoice };

/// Partial memoryless table of P over the observations of the (unrolled)
/// arena; kUnbound marks slots P has not committed yet.
struct PartialTable {
  static constexpr std::int32_t kUnbound = -1;
  std::vector<std::int32_t> action;

  std::size_t bound_count() const;
  bool operator==(const PartialTable&) const = default;
};

/// `pending` is P's action already played this round (PFirst, FChoice
/// nodes) or F's action already played (FFirst, PChoice nodes); -1 otherwise.
struct KnowledgeNode {
  StateId state = 0;
  std::uint32_t memory = 0;
  PartialTable commit;
  Mover mover = Mover::PChoice;
  std::int64_t pending = -1;
};

/// Full-information game of F against a P that commits its table lazily.
/// `instance` is the memoryless instance the commitments range over (the
/// unrolled one when the source had memory_bound > 1). `graph.owner` is P
/// for PChoice nodes; `edge_action[v][i]` labels succ[v][i] with P's action
/// or F's action id.
struct KnowledgeGame {
  GameInstance instance;
  std::uint32_t source_memory = 1;
  std::vector<KnowledgeNode> nodes;
  GameGraph graph;
  std::vector<std::vector<std::uint32_t>> edge_action;
};

/// F's positional choice per node (F action id), -1 outside F's winning region.
struct FCertificate {
  std::vector<std::int64_t> choice;
};

struct WinFResult {
  bool f_wins = false;
  KnowledgeGame game;
  std::optional<FCertificate> certificate;
};

struct WinFOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
};

KnowledgeGame build_knowledge_game(const GameInstance& instance, const WinFOptions& options = {});
/// Solves the knowledge game; the certificate is filled when F wins the initial node.
WinFResult solve_full_info(KnowledgeGame game);
WinFResult solve_winf(const GameInstance& instance, const WinFOptions& options = {});

struct SubsetNode {
  StateId state = 0;
  Mover mover = Mover::PChoice;
  std::int64_t pending = -1;
  /// Strategies still consistent with the history, with their current memory.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> alive;
};

struct SubsetGame {
  std::vector<SubsetNode> nodes;
  GameGraph graph;
};

/// Independent construction over explicit sets of P strategy tables.
SubsetGame build_subset_game(const GameInstance& instance, std::uint64_t strategy_budget);
bool winf_oracle_subsets(const GameInstance& instance, std::uint64_t strategy_budget = 1'000'000);

struct ReplayResult {
  bool f_won = false;
  /// Rounds until the outcome was settled: a P-losing state for F-Reach,
  /// a repeated knowledge node otherwise.
  std::uint64_t rounds = 0;
  Lasso lasso;
  std::string failure;  // non-empty when the certificate got stuck
};

/// Plays F's certificate against a fixed P strategy of the source instance.
ReplayResult replay_certificate(const GameInstance& source, const WinFResult& result, const PStrategy& strategy);

}  // namespace limem
