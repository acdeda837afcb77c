#include "limem/transforms.hpp"

namespace limem {

GameInstance unroll_memory(const GameInstance& instance) {
  const Arena& a = instance.arena;
  if (instance.memory_bound < 1) throw UsageError("memory bound must be >= 1");
  const auto k = static_cast<std::uint32_t>(instance.memory_bound);
  const std::size_t np = a.num_private();

  std::vector<std::string> pubs;
  for (const std::string& u : a.public_labels())
    for (std::uint32_t i = 1; i <= k; ++i) pubs.push_back(u + "@" + std::to_string(i));
  std::vector<std::string> acts;
  for (const std::string& x : a.p_action_labels())
    for (std::uint32_t j = 1; j <= k; ++j) acts.push_back(x + "@" + std::to_string(j));
  Arena out(std::move(pubs), a.private_labels(), std::move(acts), a.f_public_labels(), a.f_private_labels(),
            a.turn_order());

  auto lift = [&](StateId s, std::uint32_t i) {
    const GameState g = a.state(s);
    return static_cast<StateId>((g.pub * k + i) * np + g.priv);
  };
  for (StateId s = 0; s < a.num_states(); ++s)
    for (std::uint32_t i = 0; i < k; ++i)
      for (PAction x = 0; x < a.num_p_actions(); ++x)
        for (std::uint32_t j = 0; j < k; ++j)
          for (FActionId f = 0; f < a.num_f_actions(); ++f) {
            const StateId to = a.raw_target(s, x, f);
            if (to == Arena::kNoTarget) continue;
            out.set_transition(lift(s, i), x * k + j, f, lift(to, j));
          }
  out.set_initial(lift(a.initial(), 0));

  GameInstance result;
  result.objective.kind = instance.objective.kind;
  if (instance.objective.kind == ObjectiveKind::Parity) {
    result.objective.priority.resize(out.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
      for (std::uint32_t i = 0; i < k; ++i) result.objective.priority[lift(s, i)] = instance.objective.priority[s];
  } else {
    result.objective.target.resize(out.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
      for (std::uint32_t i = 0; i < k; ++i) result.objective.target[lift(s, i)] = instance.objective.target[s];
  }
  result.arena = std::move(out);
  result.memory_bound = 1;
  result.metadata = instance.metadata;
  result.metadata["unrolled_from_memory"] = std::to_string(k);
  return result;
}

namespace {

/// Observation of the unrolled arena for original observation `obs` at memory m.
std::size_t lifted_observation(const Arena& a, std::size_t obs, std::uint32_t m, std::uint32_t k) {
  if (a.turn_order() == TurnOrder::PFirst) return obs * k + m;
  const std::size_t nfp = a.num_f_public();
  return ((obs / nfp) * k + m) * nfp + obs % nfp;
}

}  // namespace

PStrategy transport_strategy(const Arena& arena, const PStrategy& strategy) {
  check_compatible(arena, strategy);
  if (strategy.initial_memory() != 0) throw UsageError("transport needs a strategy starting in memory value 1");
  const std::uint32_t k = strategy.memory_size();
  PStrategy out(strategy.num_observations() * k, 1, 0);
  for (std::size_t o = 0; o < strategy.num_observations(); ++o)
    for (std::uint32_t m = 0; m < k; ++m) {
      const PMove mv = strategy.at(o, m);
      out.set(lifted_observation(arena, o, m, k), 0, PMove{mv.action * k + mv.memory, 0});
    }
  return out;
}

PStrategy restore_strategy(const Arena& arena, std::uint32_t k, const PStrategy& unrolled) {
  const std::size_t num_obs = ObservationSpace(arena).size();
  if (unrolled.memory_size() != 1 || unrolled.num_observations() != num_obs * k)
    throw UsageError("strategy does not match the unrolled arena");
  PStrategy out(num_obs, k, 0);
  for (std::size_t o = 0; o < num_obs; ++o)
    for (std::uint32_t m = 0; m < k; ++m) {
      const PMove mv = unrolled.at(lifted_observation(arena, o, m, k), 0);
      out.set(o, m, PMove{mv.action / k, mv.action % k});
    }
  check_compatible(arena, out);
  return out;
}

GameInstance memory_exhaustion_game(const GameInstance& instance) {
  if (instance.objective.kind != ObjectiveKind::Parity)
    throw UsageError("the counter game is defined for parity objectives only");
  if (instance.memory_bound < 1) throw UsageError("memory bound must be >= 1");
  const Arena& a = instance.arena;
  const auto k = static_cast<std::uint32_t>(instance.memory_bound);
  const std::size_t np = a.num_private();
  const std::size_t na = a.num_p_actions();

  std::vector<std::string> privs;
  for (const std::string& v : a.private_labels())
    for (std::uint32_t c = 0; c < k; ++c)
      for (const std::string& x : a.p_action_labels()) privs.push_back(v + "/" + std::to_string(c) + "/" + x);
  privs.push_back("W");
  const auto sink = static_cast<std::uint32_t>(privs.size() - 1);
  std::vector<std::string> acts;
  for (const std::string& x : a.p_action_labels())
    for (std::uint32_t j = 0; j < k; ++j) acts.push_back(x + "#" + std::to_string(j));
  Arena out(a.public_labels(), std::move(privs), std::move(acts), a.f_public_labels(), a.f_private_labels(),
            a.turn_order());

  auto priv_of = [&](std::uint32_t v, std::uint32_t c, std::uint32_t r) {
    return static_cast<std::uint32_t>((v * k + c) * na + r);
  };
  const std::size_t nf = a.num_f_actions();
  for (std::uint32_t u = 0; u < a.num_public(); ++u) {
    const StateId w = out.id({u, sink});
    for (PAction e = 0; e < out.num_p_actions(); ++e)
      for (FActionId f = 0; f < nf; ++f) out.set_transition(w, e, f, w);
    for (std::uint32_t v = 0; v < np; ++v)
      for (std::uint32_t c = 0; c < k; ++c)
        for (std::uint32_t r = 0; r < na; ++r) {
          const StateId from = out.id({u, priv_of(v, c, r)});
          for (PAction x = 0; x < na; ++x)
            for (std::uint32_t j = 0; j < k; ++j)
              for (FActionId f = 0; f < nf; ++f) {
                StateId to = w;
                if (c == k - 1 && j == 0 && (k == 1 || x == r)) {
                  const StateId real = a.raw_target(a.id({u, v}), x, f);
                  if (real == Arena::kNoTarget) continue;
                  const GameState g = a.state(real);
                  to = out.id({g.pub, priv_of(g.priv, 0, 0)});
                } else if (c == 0 && k > 1 && j == 1) {
                  to = out.id({u, priv_of(v, 1, x)});
                } else if (c > 0 && c < k - 1 && x == r && j == c + 1) {
                  to = out.id({u, priv_of(v, c + 1, r)});
                }
                out.set_transition(from, x * k + j, f, to);
              }
        }
  }
  const GameState init = a.state(a.initial());
  out.set_initial(out.id({init.pub, priv_of(init.priv, 0, 0)}));

  std::vector<int> prio(out.num_states(), 1);
  for (std::uint32_t u = 0; u < a.num_public(); ++u)
    for (std::uint32_t v = 0; v < np; ++v)
      for (std::uint32_t c = 0; c < k; ++c)
        for (std::uint32_t r = 0; r < na; ++r)
          prio[out.id({u, priv_of(v, c, r)})] = instance.objective.priority[a.id({u, v})];

  GameInstance result;
  result.arena = std::move(out);
  result.objective = Objective::parity(std::move(prio));
  result.memory_bound = instance.memory_bound;
  result.metadata = instance.metadata;
  result.metadata["counter_game_memory"] = std::to_string(k);
  return result;
}

}  // namespace limem
