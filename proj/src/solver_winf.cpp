#include "limem/solver_winf.hpp"

#include <deque>
#include <map>
#include <unordered_map>

#include "limem/solver_winp.hpp"
#include "limem/transforms.hpp"

namespace limem {

std::uint64_t round_bound(const Arena& arena, std::uint64_t v3_size) {
  const std::uint64_t pub = arena.num_public();
  return (v3_size + pub * arena.num_private()) * (pub + 1);
}

std::size_t PartialTable::bound_count() const {
  std::size_t n = 0;
  for (std::int32_t a : action) n += a != kUnbound;
  return n;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& key) const {
    std::size_t h = key.size();
    for (std::int32_t x : key) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using NodeIndex = std::unordered_map<std::vector<std::int32_t>, std::uint32_t, KeyHash>;

/// Lifts a Reach/Safe/Parity objective over states to graph nodes.
Objective node_objective(const Objective& over_states, const std::vector<StateId>& node_state) {
  Objective o;
  o.kind = over_states.kind;
  if (o.kind == ObjectiveKind::Parity) {
    for (StateId s : node_state) o.priority.push_back(over_states.priority[s]);
  } else {
    for (StateId s : node_state) o.target.push_back(over_states.target[s]);
  }
  return o;
}

void require_valid(const GameInstance& instance) {
  const ValidationReport report = validate_instance(instance);
  if (!report.empty()) throw UsageError("invalid instance: " + describe(report));
}

}  // namespace

KnowledgeGame build_knowledge_game(const GameInstance& instance, const WinFOptions& options) {
  require_valid(instance);
  KnowledgeGame game;
  game.source_memory = static_cast<std::uint32_t>(instance.memory_bound);
  game.instance = instance.memory_bound > 1 ? unroll_memory(instance) : instance;
  const Arena& arena = game.instance.arena;
  const ObservationSpace obs(arena);
  const bool p_first = arena.turn_order() == TurnOrder::PFirst;
  const std::size_t na = arena.num_p_actions();
  const std::size_t nf = arena.num_f_actions();

  NodeIndex index;
  std::vector<StateId> node_state;
  auto key_of = [](const KnowledgeNode& n) {
    std::vector<std::int32_t> key{static_cast<std::int32_t>(n.mover), static_cast<std::int32_t>(n.state),
                                  static_cast<std::int32_t>(n.pending)};
    key.insert(key.end(), n.commit.action.begin(), n.commit.action.end());
    return key;
  };
  std::deque<std::uint32_t> queue;
  auto intern = [&](KnowledgeNode n) {
    auto [it, fresh] = index.try_emplace(key_of(n), static_cast<std::uint32_t>(game.nodes.size()));
    if (fresh) {
      if (game.nodes.size() >= options.node_budget)
        throw ResourceError("knowledge game exceeded the node budget of " + std::to_string(options.node_budget));
      game.graph.owner.push_back(n.mover == Mover::PChoice ? Owner::P : Owner::F);
      game.graph.succ.emplace_back();
      game.edge_action.emplace_back();
      node_state.push_back(n.state);
      game.nodes.push_back(std::move(n));
      queue.push_back(it->second);
    }
    return it->second;
  };

  KnowledgeNode root;
  root.state = arena.initial();
  root.commit.action.assign(obs.size(), PartialTable::kUnbound);
  root.mover = p_first ? Mover::PChoice : Mover::FChoice;
  intern(std::move(root));

  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    const KnowledgeNode here = game.nodes[v];
    std::vector<std::uint32_t> succ, labels;
    if (here.mover == Mover::PChoice) {
      const FActionId f = p_first ? 0 : static_cast<FActionId>(here.pending);
      const std::size_t o = obs.observe(here.state, f);
      const std::int32_t bound = here.commit.action[o];
      for (PAction a = 0; a < na; ++a) {
        if (bound != PartialTable::kUnbound && static_cast<PAction>(bound) != a) continue;
        KnowledgeNode next;
        next.commit = here.commit;
        next.commit.action[o] = static_cast<std::int32_t>(a);
        next.mover = Mover::FChoice;
        if (p_first) {
          next.state = here.state;
          next.pending = a;
        } else {
          next.state = arena.raw_target(here.state, a, f);
        }
        succ.push_back(intern(std::move(next)));
        labels.push_back(a);
      }
    } else {
      for (FActionId f = 0; f < nf; ++f) {
        KnowledgeNode next;
        next.commit = here.commit;
        next.mover = Mover::PChoice;
        if (p_first) {
          next.state = arena.raw_target(here.state, static_cast<PAction>(here.pending), f);
        } else {
          next.state = here.state;
          next.pending = f;
        }
        succ.push_back(intern(std::move(next)));
        labels.push_back(f);
      }
    }
    game.graph.succ[v] = std::move(succ);
    game.edge_action[v] = std::move(labels);
  }
  game.graph.initial = 0;
  game.graph.f_objective = node_objective(complement(game.instance.objective), node_state);
  return game;
}

WinFResult solve_full_info(KnowledgeGame game) {
  const GameSolution sol = solve_game(game.graph);
  WinFResult result;
  result.f_wins = sol.f_wins_initial(game.graph);
  if (result.f_wins) {
    FCertificate cert;
    cert.choice.assign(game.nodes.size(), -1);
    for (std::size_t v = 0; v < game.nodes.size(); ++v)
      if (sol.f_choice[v] >= 0) cert.choice[v] = game.edge_action[v][static_cast<std::size_t>(sol.f_choice[v])];
    result.certificate = std::move(cert);
  }
  result.game = std::move(game);
  return result;
}

WinFResult solve_winf(const GameInstance& instance, const WinFOptions& options) {
  return solve_full_info(build_knowledge_game(instance, options));
}

SubsetGame build_subset_game(const GameInstance& instance, std::uint64_t strategy_budget) {
  require_valid(instance);
  const Arena& arena = instance.arena;
  const auto k = static_cast<std::uint32_t>(instance.memory_bound);
  const ObservationSpace obs(arena);
  const bool p_first = arena.turn_order() == TurnOrder::PFirst;

  std::vector<PStrategy> tables;
  StrategyEnumerator en(arena, k, strategy_budget);
  PStrategy t;
  while (en.next(t)) tables.push_back(t);

  SubsetGame game;
  std::map<std::vector<std::int32_t>, std::uint32_t> index;
  std::vector<StateId> node_state;
  std::deque<std::uint32_t> queue;
  auto intern = [&](SubsetNode n) {
    std::vector<std::int32_t> key{static_cast<std::int32_t>(n.mover), static_cast<std::int32_t>(n.state),
                                  static_cast<std::int32_t>(n.pending)};
    for (auto [id, m] : n.alive) {
      key.push_back(static_cast<std::int32_t>(id));
      key.push_back(static_cast<std::int32_t>(m));
    }
    auto [it, fresh] = index.try_emplace(std::move(key), static_cast<std::uint32_t>(game.nodes.size()));
    if (fresh) {
      game.graph.owner.push_back(n.mover == Mover::PChoice ? Owner::P : Owner::F);
      game.graph.succ.emplace_back();
      node_state.push_back(n.state);
      game.nodes.push_back(std::move(n));
      queue.push_back(it->second);
    }
    return it->second;
  };

  SubsetNode root;
  root.state = arena.initial();
  root.mover = p_first ? Mover::PChoice : Mover::FChoice;
  for (std::uint32_t i = 0; i < tables.size(); ++i) root.alive.emplace_back(i, tables[i].initial_memory());
  intern(std::move(root));

  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    const SubsetNode here = game.nodes[v];
    std::vector<std::uint32_t> succ;
    if (here.mover == Mover::PChoice) {
      const FActionId f = p_first ? 0 : static_cast<FActionId>(here.pending);
      const std::size_t o = obs.observe(here.state, f);
      std::map<PAction, std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_action;
      for (auto [id, m] : here.alive) {
        const PMove mv = tables[id].at(o, m);
        by_action[mv.action].emplace_back(id, mv.memory);
      }
      for (auto& [a, alive] : by_action) {
        SubsetNode next;
        next.mover = Mover::FChoice;
        next.alive = std::move(alive);
        if (p_first) {
          next.state = here.state;
          next.pending = a;
        } else {
          next.state = arena.raw_target(here.state, a, f);
        }
        succ.push_back(intern(std::move(next)));
      }
    } else {
      for (FActionId f = 0; f < arena.num_f_actions(); ++f) {
        SubsetNode next;
        next.mover = Mover::PChoice;
        next.alive = here.alive;
        if (p_first) {
          next.state = arena.raw_target(here.state, static_cast<PAction>(here.pending), f);
        } else {
          next.state = here.state;
          next.pending = f;
        }
        succ.push_back(intern(std::move(next)));
      }
    }
    game.graph.succ[v] = std::move(succ);
  }
  game.graph.initial = 0;
  game.graph.f_objective = node_objective(complement(instance.objective), node_state);
  return game;
}

bool winf_oracle_subsets(const GameInstance& instance, std::uint64_t strategy_budget) {
  const SubsetGame game = build_subset_game(instance, strategy_budget);
  return solve_game(game.graph).f_wins_initial(game.graph);
}

ReplayResult replay_certificate(const GameInstance& source, const WinFResult& result, const PStrategy& strategy) {
  ReplayResult out;
  if (!result.certificate) {
    out.failure = "no certificate";
    return out;
  }
  const KnowledgeGame& game = result.game;
  const PStrategy p = game.source_memory > 1 ? transport_strategy(source.arena, strategy) : strategy;
  const Arena& arena = game.instance.arena;
  check_compatible(arena, p);
  const ObservationSpace obs(arena);
  const bool p_first = arena.turn_order() == TurnOrder::PFirst;
  const Objective& p_objective = game.instance.objective;
  const Mover round_start = p_first ? Mover::PChoice : Mover::FChoice;

  std::map<std::uint32_t, std::size_t> seen;  // round-start node -> round index
  std::vector<StateId> states;
  std::uint32_t v = game.graph.initial;
  while (true) {
    const KnowledgeNode& node = game.nodes[v];
    if (node.mover == round_start) {
      const std::size_t round = states.size();
      if (p_objective.kind == ObjectiveKind::Safe && !p_objective.in_target(node.state)) {
        out.f_won = true;
        out.rounds = round;
        states.push_back(node.state);
        out.lasso.stem.assign(states.begin(), states.end() - 1);
        out.lasso.cycle = {node.state};
        return out;
      }
      if (auto it = seen.find(v); it != seen.end()) {
        out.rounds = round;
        out.lasso.stem.assign(states.begin(), states.begin() + static_cast<long>(it->second));
        out.lasso.cycle.assign(states.begin() + static_cast<long>(it->second), states.end());
        out.f_won = !eval_lasso(p_objective, out.lasso);
        return out;
      }
      seen.emplace(v, round);
      states.push_back(node.state);
    }
    std::int64_t label;
    if (node.mover == Mover::PChoice) {
      const FActionId f = p_first ? 0 : static_cast<FActionId>(node.pending);
      label = p.at(obs.observe(node.state, f), 0).action;
    } else {
      label = result.certificate->choice[v];
      if (label < 0) {
        out.failure = "certificate undefined at node " + std::to_string(v);
        return out;
      }
    }
    const auto& labels = game.edge_action[v];
    std::size_t i = 0;
    while (i < labels.size() && static_cast<std::int64_t>(labels[i]) != label) ++i;
    if (i == labels.size()) {
      out.failure = "no edge for action " + std::to_string(label) + " at node " + std::to_string(v);
      return out;
    }
    v = game.graph.succ[v][i];
  }
}

}  // namespace limem
