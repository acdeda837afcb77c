#pragma once

#include "limem/arena.hpp"
#include "limem/strategy.hpp"

namespace limem {

/// Encodes P's memory in the public state: public' = V^pub x M, P actions
/// Sigma_P x M, returned with memory_bound 1. Flat indices: public (u, i) is
/// u*k + i and action (x, j) is x*k + j.
GameInstance unroll_memory(const GameInstance& instance);

/// Re-indexes a k-memory strategy for `arena` as a memoryless strategy of
/// the unrolled arena. The strategy must start in memory value 0.
PStrategy transport_strategy(const Arena& arena, const PStrategy& strategy);

/// Inverse of transport_strategy: a memoryless strategy of the unrolled
/// arena read back as a k-memory strategy of `arena`.
PStrategy restore_strategy(const Arena& arena, std::uint32_t k, const PStrategy& unrolled);

/// The counter game G_k for a parity instance. Private states become
/// (v, counter, recorded action) plus an absorbing sink W with priority 1;
/// P actions are (x, j) with j in 0..k-1. Throws UsageError for
/// non-parity objectives. The result keeps memory_bound k.
GameInstance memory_exhaustion_game(const GameInstance& instance);

}  // namespace limem
