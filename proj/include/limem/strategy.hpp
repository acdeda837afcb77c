#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limem/arena.hpp"

namespace limem {

/// What P sees when it moves: the public state, plus the public part of F's
/// current action when F moves first in each round.
struct Observation {
  std::uint32_t pub = 0;
  std::optional<std::uint32_t> last_f_public;
  auto operator<=>(const Observation&) const = default;
};

/// Dense indexing of P's observations for one arena.
class ObservationSpace {
public:
  explicit ObservationSpace(const Arena& arena);

  std::size_t size() const { return size_; }
  bool sees_f_action() const { return f_public_ > 0; }

  /// Observation index for a move made in state s (f is ignored under PFirst).
  std::size_t observe(StateId s, FActionId f) const {
    const std::size_t pub = s / num_private_;
    if (f_public_ == 0) return pub;
    return pub * f_public_ + f / num_f_private_;
  }
  std::size_t index(const Observation& o) const;
  Observation observation(std::size_t index) const;
  std::string label(const Arena& arena, std::size_t index) const;

private:
  std::size_t size_ = 0;
  std::size_t num_private_ = 1;
  std::size_t f_public_ = 0;  // 0 under PFirst
  std::size_t num_f_private_ = 1;
};

/// One table entry: the action to play and the next memory value (0-based).
struct PMove {
  PAction action = 0;
  std::uint32_t memory = 0;
  auto operator<=>(const PMove&) const = default;
};

/// Limited-memory strategy for P: (observation, memory) -> (action, memory).
/// Memory values are 0-based internally; documents print them as 1..k.
class PStrategy {
public:
  PStrategy() = default;
  PStrategy(std::size_t num_observations, std::uint32_t memory_size, std::uint32_t initial_memory = 0);

  std::uint32_t memory_size() const { return memory_size_; }
  std::uint32_t initial_memory() const { return initial_memory_; }
  std::size_t num_observations() const { return num_observations_; }
  std::size_t num_slots() const { return table_.size(); }

  std::size_t slot(std::size_t obs, std::uint32_t memory) const { return obs * memory_size_ + memory; }
  const PMove& at(std::size_t obs, std::uint32_t memory) const { return table_[slot(obs, memory)]; }
  const PMove& at_slot(std::size_t s) const { return table_[s]; }
  void set(std::size_t obs, std::uint32_t memory, PMove m) { table_[slot(obs, memory)] = m; }
  void set_slot(std::size_t s, PMove m) { table_[s] = m; }
  const std::vector<PMove>& table() const { return table_; }

  /// Same behaviour with memory_size raised to k; the extra values are never entered.
  PStrategy embed(std::uint32_t k) const;

  bool operator==(const PStrategy&) const = default;

private:
  std::size_t num_observations_ = 0;
  std::uint32_t memory_size_ = 1;
  std::uint32_t initial_memory_ = 0;
  std::vector<PMove> table_;
};

/// Throws UsageError unless the strategy's table fits the arena.
void check_compatible(const Arena& arena, const PStrategy& strategy);

struct InducedNode {
  StateId state;
  std::uint32_t memory;
};

struct InducedEdge {
  FActionId f;   // least F action realising this edge
  PAction p;     // P's action on that edge
  std::uint32_t target;
};

/// Reachable product of the arena with a fixed P strategy. Node 0 is the
/// initial node; ids follow breadth-first discovery with F actions in
/// increasing order. Parallel edges to the same node are collapsed.
struct InducedGraph {
  std::vector<InducedNode> nodes;
  std::vector<std::vector<InducedEdge>> succ;
};

InducedGraph induced_graph(const Arena& arena, const PStrategy& strategy);

struct Witness {
  Lasso lasso;
  /// F actions along stem and cycle edges, closing edge last.
  std::vector<FActionId> f_script;
};

struct Verdict {
  bool winning = false;
  std::optional<Witness> witness;
};

/// Decides whether a fixed P strategy wins against every F behaviour. A
/// losing verdict carries a violating lasso of the induced graph.
Verdict verify_p_strategy(const GameInstance& instance, const PStrategy& strategy);

struct Play {
  std::vector<StateId> states;  // length = rounds + 1
  std::vector<PAction> p_actions;
  std::vector<std::uint32_t> memories;  // memory before each round, plus the final one
};

/// Runs the strategy against a scripted sequence of F actions.
Play simulate(const Arena& arena, const PStrategy& strategy, const std::vector<FActionId>& f_script);

}  // namespace limem
