#pragma once

#include <cstdint>
#include <optional>

#include "limem/arena.hpp"
#include "limem/strategy.hpp"

namespace limem {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Number of total tables (|Sigma_P| k)^(|Obs| k), or nullopt past 2^64.
std::optional<std::uint64_t> strategy_count(const Arena& arena, std::uint32_t k);

/// Streams every k-memory table for P exactly once, in lexicographic order
/// over (observation, memory) slots, each slot ordered by (action, memory).
/// Construction throws ResourceError when the count exceeds the budget.
class StrategyEnumerator {
public:
  StrategyEnumerator(const Arena& arena, std::uint32_t k, std::uint64_t budget = kDefaultBudget);

  std::uint64_t count() const { return count_; }
  /// Writes the next table into `out`; false once the stream is exhausted.
  bool next(PStrategy& out);

private:
  std::size_t num_actions_;
  std::uint32_t k_;
  std::uint64_t count_;
  bool started_ = false;
  bool done_ = false;
  PStrategy current_;
};

struct WinPOptions {
  /// Maximum number of relaxation games the search may solve.
  std::uint64_t budget = kDefaultBudget;
};

struct WinPResult {
  bool win = false;
  std::optional<PStrategy> strategy;
  std::uint64_t search_nodes = 0;
};

/// Decides whether P has a winning strategy with memory instance.memory_bound
/// (initial memory value 1). On a win, the certificate is the
/// lexicographically first winning table of StrategyEnumerator's order.
WinPResult solve_winp(const GameInstance& instance, const WinPOptions& options = {});

}  // namespace limem
