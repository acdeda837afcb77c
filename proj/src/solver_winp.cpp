#include "limem/solver_winp.hpp"

#include <deque>
#include <stdexcept>

#include "limem/game_solver.hpp"

namespace limem {

std::optional<std::uint64_t> strategy_count(const Arena& arena, std::uint32_t k) {
  const ObservationSpace obs(arena);
  const std::uint64_t base = static_cast<std::uint64_t>(arena.num_p_actions()) * k;
  const std::uint64_t exponent = static_cast<std::uint64_t>(obs.size()) * k;
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && count > UINT64_MAX / base) return std::nullopt;
    count *= base;
  }
  return count;
}

StrategyEnumerator::StrategyEnumerator(const Arena& arena, std::uint32_t k, std::uint64_t budget)
    : num_actions_(arena.num_p_actions()), k_(k) {
  if (k < 1) throw UsageError("memory bound must be >= 1");
  const auto count = strategy_count(arena, k);
  if (!count || *count > budget)
    throw ResourceError("strategy count " + (count ? std::to_string(*count) : std::string("> 2^64")) +
                        " exceeds the enumeration budget " + std::to_string(budget));
  count_ = *count;
  current_ = PStrategy(ObservationSpace(arena).size(), k, 0);
}

bool StrategyEnumerator::next(PStrategy& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    out = current_;
    return true;
  }
  // Odometer: the last slot varies fastest.
  for (std::size_t s = current_.num_slots(); s-- > 0;) {
    PMove mv = current_.at_slot(s);
    if (++mv.memory < k_) {
      current_.set_slot(s, mv);
      out = current_;
      return true;
    }
    mv.memory = 0;
    if (++mv.action < num_actions_) {
      current_.set_slot(s, mv);
      out = current_;
      return true;
    }
    current_.set_slot(s, PMove{});
  }
  done_ = true;
  return false;
}

namespace {

constexpr std::int32_t kUnassigned = -1;

/// Backjumping search for a table extending a partial assignment of slots.
/// Consistency is judged on a relaxation where P moves freely, with full
/// information, at unassigned slots: if F still wins there, no extension
/// wins, and F's strategy names the assigned slots responsible.
class ExtensionSearch {
public:
  ExtensionSearch(const GameInstance& instance, std::uint64_t budget)
      : arena_(instance.arena),
        obs_(instance.arena),
        k_(static_cast<std::uint32_t>(instance.memory_bound)),
        na_(instance.arena.num_p_actions()),
        nf_(instance.arena.num_f_actions()),
        num_slots_(obs_.size() * k_),
        f_objective_(complement(instance.objective)),
        budget_(budget),
        num_values_(na_ * k_),
        watch_(num_slots_ * num_values_) {
    action_irrelevant_.assign(obs_.size(), 1);
    for (StateId s = 0; s < arena_.num_states(); ++s)
      for (FActionId f = 0; f < nf_; ++f) {
        const std::size_t o = obs_.observe(s, f);
        for (PAction a = 1; a < na_; ++a)
          if (arena_.raw_target(s, a, f) != arena_.raw_target(s, 0, f)) action_irrelevant_[o] = 0;
      }
  }

  std::size_t num_slots() const { return num_slots_; }
  std::uint64_t nodes() const { return nodes_; }

  std::optional<std::vector<std::int32_t>> extend(std::vector<std::int32_t> assign) {
    if (refuted_ || contains_nogood(assign)) return std::nullopt;
    if (Check c = check(assign); c.f_wins) {
      learn(c.culprits, assign);
      return std::nullopt;
    }
    struct Level {
      std::size_t slot;
      std::vector<std::int32_t> domain;
      std::size_t next = 0;
      std::vector<char> conflict;
    };
    std::vector<Level> levels;
    std::vector<int> level_of(num_slots_, -1);
    while (true) {
      const auto x = needed_slot(assign);
      if (!x) return assign;
      level_of[*x] = static_cast<int>(levels.size());
      levels.push_back({*x, domain(*x, assign), 0, std::vector<char>(num_slots_, 0)});
      while (true) {
        Level& level = levels.back();
        if (level.next < level.domain.size()) {
          const std::int32_t value = level.domain[level.next++];
          assign[level.slot] = value;
          if (const Nogood* g = violated(level.slot, value, assign)) {
            for (auto [s, v] : g->lits)
              if (s != level.slot) level.conflict[s] = 1;
            assign[level.slot] = kUnassigned;
            continue;
          }
          Check c = check(assign);
          if (!c.f_wins) break;
          c.culprits = shrink(std::move(c.culprits), assign, level.slot);
          learn(c.culprits, assign);
          for (std::size_t s : c.culprits)
            if (s != level.slot) level.conflict[s] = 1;
          assign[level.slot] = kUnassigned;
          continue;
        }
        std::vector<char> conflict = std::move(level.conflict);
        level_of[level.slot] = -1;
        levels.pop_back();
        std::vector<std::size_t> derived;
        for (std::size_t s = 0; s < num_slots_; ++s)
          if (conflict[s]) derived.push_back(s);
        learn(derived, assign);
        int jump = -1;
        for (std::size_t s = 0; s < num_slots_; ++s)
          if (conflict[s] && level_of[s] > jump) jump = level_of[s];
        if (jump < 0) return std::nullopt;
        while (static_cast<int>(levels.size()) > jump + 1) {
          assign[levels.back().slot] = kUnassigned;
          level_of[levels.back().slot] = -1;
          levels.pop_back();
        }
        Level& back = levels.back();
        assign[back.slot] = kUnassigned;
        conflict[back.slot] = 0;
        for (std::size_t s = 0; s < num_slots_; ++s)
          if (conflict[s]) back.conflict[s] = 1;
      }
    }
  }

private:
  /// A set of slot values no winning table contains. Sound across calls:
  /// culprits come from F's winning strategy in the relaxation, and the
  /// pruned symmetric values never occur in a nogood.
  struct Nogood {
    std::vector<std::pair<std::size_t, std::int32_t>> lits;
  };

  void learn(const std::vector<std::size_t>& slots, const std::vector<std::int32_t>& assign) {
    if (slots.empty()) {
      refuted_ = true;
      return;
    }
    Nogood g;
    for (std::size_t s : slots) g.lits.emplace_back(s, assign[s]);
    const auto id = static_cast<std::uint32_t>(nogoods_.size());
    for (auto [s, v] : g.lits) watch_[s * num_values_ + static_cast<std::size_t>(v)].push_back(id);
    nogoods_.push_back(std::move(g));
  }

  bool holds(const Nogood& g, const std::vector<std::int32_t>& assign) const {
    for (auto [s, v] : g.lits)
      if (assign[s] != v) return false;
    return true;
  }

  const Nogood* violated(std::size_t slot, std::int32_t value, const std::vector<std::int32_t>& assign) const {
    for (std::uint32_t id : watch_[slot * num_values_ + static_cast<std::size_t>(value)])
      if (holds(nogoods_[id], assign)) return &nogoods_[id];
    return nullptr;
  }

  bool contains_nogood(const std::vector<std::int32_t>& assign) const {
    for (const Nogood& g : nogoods_)
      if (holds(g, assign)) return true;
    return false;
  }

  struct Check {
    bool f_wins = false;
    std::vector<std::size_t> culprits;
  };

  /// Drops culprits whose removal keeps F winning the relaxation; `keep`
  /// is the slot just assigned.
  std::vector<std::size_t> shrink(std::vector<std::size_t> culprits, std::vector<std::int32_t>& assign,
                                  std::size_t keep) {
    std::vector<std::int32_t> trial(num_slots_, kUnassigned);
    for (std::size_t s : culprits) trial[s] = assign[s];
    std::vector<std::size_t> out;
    for (std::size_t s : culprits) {
      if (s == keep) continue;
      const std::int32_t v = trial[s];
      trial[s] = kUnassigned;
      if (!check(trial).f_wins) trial[s] = v;
    }
    for (std::size_t s : culprits)
      if (trial[s] != kUnassigned) out.push_back(s);
    return out;
  }

  std::string count_text() const {
    const auto c = strategy_count(arena_, k_);
    return c ? std::to_string(*c) : std::string("> 2^64");
  }

  /// Builds the reachable part of the relaxation game and solves it.
  Check check(const std::vector<std::int32_t>& assign) {
    if (++nodes_ > budget_)
      throw ResourceError("WIN_P search exceeded the budget of " + std::to_string(budget_) +
                          " relaxation solves (full table count " + count_text() + ")");
    const bool p_first = arena_.turn_order() == TurnOrder::PFirst;
    const std::size_t nv = arena_.num_states();
    // Round nodes (s, m) and the intermediate nodes inside a round:
    // PFirst: F picks after P's (a, m'): key (s, a, m'); FFirst: P picks after f: key (s, m, f).
    const std::size_t mid_size = p_first ? nv * na_ * k_ : nv * k_ * nf_;
    round_id_.assign(nv * k_, UINT32_MAX);
    mid_id_.assign(mid_size, UINT32_MAX);
    GameGraph g;
    std::vector<StateId> node_state;
    std::vector<std::int64_t> node_slot;  // P decision nodes: slot; else -1
    std::vector<std::uint64_t> payload;
    auto add = [&](Owner o, StateId s, std::int64_t slot, std::uint64_t key) {
      g.owner.push_back(o);
      g.succ.emplace_back();
      node_state.push_back(s);
      node_slot.push_back(slot);
      payload.push_back(key);
      return static_cast<std::uint32_t>(g.owner.size() - 1);
    };
    auto round_node = [&](StateId s, std::uint32_t m) {
      std::uint32_t& id = round_id_[s * k_ + m];
      if (id == UINT32_MAX) {
        const std::int64_t slot = p_first ? static_cast<std::int64_t>(obs_.observe(s, 0) * k_ + m) : -1;
        id = add(p_first ? Owner::P : Owner::F, s, slot, s * k_ + m);
      }
      return id;
    };
    auto mid_node = [&](StateId s, std::uint64_t key, std::int64_t slot) {
      std::uint32_t& id = mid_id_[key];
      if (id == UINT32_MAX) id = add(p_first ? Owner::F : Owner::P, s, slot, key);
      return id;
    };
    std::deque<std::uint32_t> queue{round_node(arena_.initial(), 0)};
    auto push_if_new = [&](std::uint32_t id, std::size_t before) {
      if (id >= before) queue.push_back(id);
    };
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      const StateId s = node_state[v];
      const std::uint64_t key = payload[v];
      const bool round = (p_first ? g.owner[v] == Owner::P : g.owner[v] == Owner::F);
      std::vector<std::uint32_t> succ;
      if (p_first && round) {
        const std::int32_t val = assign[static_cast<std::size_t>(node_slot[v])];
        auto emit = [&](PAction a, std::uint32_t m2) {
          const std::size_t before = g.owner.size();
          const std::uint32_t t = mid_node(s, (static_cast<std::uint64_t>(s) * na_ + a) * k_ + m2, -1);
          succ.push_back(t);
          push_if_new(t, before);
        };
        if (val != kUnassigned) {
          emit(static_cast<PAction>(val / k_), static_cast<std::uint32_t>(val % k_));
        } else {
          for (PAction a = 0; a < na_; ++a)
            for (std::uint32_t m2 = 0; m2 < k_; ++m2) emit(a, m2);
        }
      } else if (p_first) {
        const std::uint32_t m2 = static_cast<std::uint32_t>(key % k_);
        const PAction a = static_cast<PAction>((key / k_) % na_);
        for (FActionId f = 0; f < nf_; ++f) {
          const std::size_t before = g.owner.size();
          const std::uint32_t t = round_node(arena_.raw_target(s, a, f), m2);
          succ.push_back(t);
          push_if_new(t, before);
        }
      } else if (round) {
        const std::uint32_t m = static_cast<std::uint32_t>(key % k_);
        for (FActionId f = 0; f < nf_; ++f) {
          const std::size_t before = g.owner.size();
          const std::int64_t slot = static_cast<std::int64_t>(obs_.observe(s, f) * k_ + m);
          const std::uint32_t t = mid_node(s, (static_cast<std::uint64_t>(s) * k_ + m) * nf_ + f, slot);
          succ.push_back(t);
          push_if_new(t, before);
        }
      } else {
        const FActionId f = static_cast<FActionId>(key % nf_);
        const std::int32_t val = assign[static_cast<std::size_t>(node_slot[v])];
        auto emit = [&](PAction a, std::uint32_t m2) {
          const std::size_t before = g.owner.size();
          const std::uint32_t t = round_node(arena_.raw_target(s, a, f), m2);
          succ.push_back(t);
          push_if_new(t, before);
        };
        if (val != kUnassigned) {
          emit(static_cast<PAction>(val / k_), static_cast<std::uint32_t>(val % k_));
        } else {
          for (PAction a = 0; a < na_; ++a)
            for (std::uint32_t m2 = 0; m2 < k_; ++m2) emit(a, m2);
        }
      }
      g.succ[v] = std::move(succ);
    }

    const std::size_t n = g.owner.size();
    g.initial = 0;
    g.f_objective.kind = f_objective_.kind;
    if (f_objective_.kind == ObjectiveKind::Parity) {
      g.f_objective.priority.resize(n);
      for (std::size_t v = 0; v < n; ++v) g.f_objective.priority[v] = f_objective_.priority[node_state[v]];
    } else {
      g.f_objective.target.resize(n);
      for (std::size_t v = 0; v < n; ++v) g.f_objective.target[v] = f_objective_.target[node_state[v]];
    }
    const GameSolution sol = solve_game(g);
    Check c;
    c.f_wins = sol.f_wins_initial(g);
    if (!c.f_wins) return c;
    // Assigned slots met by F's winning strategy from the initial node.
    std::vector<char> seen(n, 0), slot_seen(num_slots_, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      if (node_slot[v] >= 0) {
        const auto s = static_cast<std::size_t>(node_slot[v]);
        if (assign[s] != kUnassigned && !slot_seen[s]) {
          slot_seen[s] = 1;
          c.culprits.push_back(s);
        }
      }
      auto visit = [&](std::uint32_t w) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      };
      if (g.owner[v] == Owner::F) {
        visit(g.succ[v][static_cast<std::size_t>(sol.f_choice[v])]);
      } else {
        for (std::uint32_t w : g.succ[v]) visit(w);
      }
    }
    return c;
  }

  /// First unassigned slot met by a depth-first walk of the partially
  /// induced graph, F actions in increasing order.
  std::optional<std::size_t> needed_slot(const std::vector<std::int32_t>& assign) {
    const std::size_t nv = arena_.num_states();
    visited_.assign(nv * k_, 0);
    std::vector<std::pair<StateId, std::uint32_t>> stack{{arena_.initial(), 0}};
    visited_[arena_.initial() * k_] = 1;
    std::vector<std::pair<StateId, std::uint32_t>> children;
    while (!stack.empty()) {
      const auto [s, m] = stack.back();
      stack.pop_back();
      children.clear();
      for (FActionId f = 0; f < nf_; ++f) {
        const std::size_t slot = obs_.observe(s, f) * k_ + m;
        const std::int32_t val = assign[slot];
        if (val == kUnassigned) return slot;
        children.emplace_back(arena_.raw_target(s, static_cast<PAction>(val / k_), f),
                              static_cast<std::uint32_t>(val % k_));
      }
      for (auto it = children.rbegin(); it != children.rend(); ++it) {
        auto& mark = visited_[it->first * k_ + it->second];
        if (!mark) {
          mark = 1;
          stack.push_back(*it);
        }
      }
    }
    return std::nullopt;
  }

  /// Candidate values for a slot. Actions are collapsed to action 0 where
  /// P's action never changes the successor; memory values are limited to
  /// those already in use plus the least fresh one (relabelling symmetry
  /// of memory values other than the initial one).
  std::vector<std::int32_t> domain(std::size_t slot, const std::vector<std::int32_t>& assign) const {
    std::vector<char> used(k_, 0);
    used[0] = 1;
    for (std::size_t s = 0; s < num_slots_; ++s) {
      if (assign[s] == kUnassigned) continue;
      used[s % k_] = 1;
      used[static_cast<std::size_t>(assign[s]) % k_] = 1;
    }
    bool fresh_added = false;
    std::vector<std::uint32_t> memories;
    for (std::uint32_t m = 0; m < k_; ++m) {
      if (used[m]) {
        memories.push_back(m);
      } else if (!fresh_added) {
        memories.push_back(m);
        fresh_added = true;
      }
    }
    const std::size_t actions = action_irrelevant_[slot / k_] ? 1 : na_;
    std::vector<std::int32_t> out;
    for (PAction a = 0; a < actions; ++a)
      for (std::uint32_t m : memories) out.push_back(static_cast<std::int32_t>(a * k_ + m));
    return out;
  }

  const Arena& arena_;
  ObservationSpace obs_;
  std::uint32_t k_;
  std::size_t na_;
  std::size_t nf_;
  std::size_t num_slots_;
  Objective f_objective_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t num_values_;
  std::vector<Nogood> nogoods_;
  std::vector<std::vector<std::uint32_t>> watch_;
  bool refuted_ = false;
  std::vector<char> action_irrelevant_;
  std::vector<std::uint32_t> round_id_;
  std::vector<std::uint32_t> mid_id_;
  std::vector<char> visited_;
};

}  // namespace

WinPResult solve_winp(const GameInstance& instance, const WinPOptions& options) {
  const ValidationReport report = validate_instance(instance);
  if (!report.empty()) throw UsageError("invalid instance: " + describe(report));
  const auto k = static_cast<std::uint32_t>(instance.memory_bound);
  ExtensionSearch search(instance, options.budget);
  const std::size_t slots = search.num_slots();

  WinPResult result;
  auto witness = search.extend(std::vector<std::int32_t>(slots, kUnassigned));
  if (!witness) {
    result.search_nodes = search.nodes();
    return result;
  }
  // Fix slots in index order to the least value that still extends to a win.
  std::vector<std::int32_t> prefix(slots, kUnassigned);
  for (std::size_t i = 0; i < slots; ++i) {
    const std::int32_t known = (*witness)[i];
    if (known == kUnassigned) {
      prefix[i] = 0;
      (*witness)[i] = 0;
      continue;
    }
    prefix[i] = known;
    for (std::int32_t v = 0; v < known; ++v) {
      std::vector<std::int32_t> trial = prefix;
      trial[i] = v;
      if (auto w = search.extend(std::move(trial))) {
        prefix[i] = v;
        witness = std::move(w);
        break;
      }
    }
  }
  PStrategy strategy(ObservationSpace(instance.arena).size(), k, 0);
  for (std::size_t i = 0; i < slots; ++i)
    strategy.set_slot(i, PMove{static_cast<PAction>(prefix[i] / static_cast<std::int32_t>(k)),
                               static_cast<std::uint32_t>(prefix[i] % static_cast<std::int32_t>(k))});
  if (!verify_p_strategy(instance, strategy).winning)
    throw std::logic_error("WIN_P search produced a table the verifier rejects");
  result.win = true;
  result.strategy = std::move(strategy);
  result.search_nodes = search.nodes();
  return result;
}

}  // namespace limem
