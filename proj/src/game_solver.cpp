#include "limem/game_solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace limem {
namespace {

using Mask = std::vector<char>;

struct Pred {
  std::uint32_t node;
  std::uint32_t edge;  // index of the edge in succ[node]
};

class Solver {
public:
  explicit Solver(const GameGraph& g) : g_(g), preds_(g.size()), choice_(g.size(), -1) {
    for (std::uint32_t u = 0; u < g.size(); ++u)
      for (std::uint32_t i = 0; i < g.succ[u].size(); ++i) preds_[g.succ[u][i]].push_back({u, i});
  }

  /// Attractor of `player` to `target` inside `mask`; records the
  /// player's choices for attracted nodes outside the target.
  Mask attractor(const Mask& mask, const Mask& target, Owner player) {
    const std::size_t n = g_.size();
    Mask in(n, 0);
    std::vector<std::uint32_t> count(n, 0);
    std::deque<std::uint32_t> q;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!mask[v]) continue;
      if (target[v]) {
        in[v] = 1;
        q.push_back(v);
      }
      for (std::uint32_t w : g_.succ[v]) count[v] += mask[w] ? 1 : 0;
    }
    while (!q.empty()) {
      const std::uint32_t w = q.front();
      q.pop_front();
      for (const Pred& p : preds_[w]) {
        const std::uint32_t u = p.node;
        if (!mask[u] || in[u]) continue;
        if (g_.owner[u] == player) {
          in[u] = 1;
          choice_[u] = static_cast<std::int32_t>(p.edge);
          q.push_back(u);
        } else if (--count[u] == 0) {
          in[u] = 1;
          q.push_back(u);
        }
      }
    }
    return in;
  }

  std::int32_t any_edge_within(std::uint32_t v, const Mask& mask) const {
    for (std::uint32_t i = 0; i < g_.succ[v].size(); ++i)
      if (mask[g_.succ[v][i]]) return static_cast<std::int32_t>(i);
    return -1;
  }

  /// Zielonka on the subgame `mask`; F plays the even side of f_objective.
  /// Returns F's winning region inside the mask.
  Mask zielonka(const Mask& mask) {
    const std::size_t n = g_.size();
    const auto& prio = g_.f_objective.priority;
    int d = std::numeric_limits<int>::max();
    for (std::uint32_t v = 0; v < n; ++v)
      if (mask[v]) d = std::min(d, prio[v]);
    if (d == std::numeric_limits<int>::max()) return Mask(n, 0);

    const Owner i = d % 2 == 0 ? Owner::F : Owner::P;
    const Owner other = i == Owner::F ? Owner::P : Owner::F;
    Mask top(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) top[v] = mask[v] && prio[v] == d;
    const Mask a = attractor(mask, top, i);
    Mask sub(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) sub[v] = mask[v] && !a[v];
    const Mask sub_f = zielonka(sub);
    Mask sub_other(n, 0);  // the opponent of i inside sub
    bool other_empty = true;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!sub[v]) continue;
      const bool won_by_f = sub_f[v] != 0;
      sub_other[v] = (other == Owner::F) == won_by_f;
      other_empty = other_empty && !sub_other[v];
    }
    if (other_empty) {
      for (std::uint32_t v = 0; v < n; ++v)
        if (top[v] && g_.owner[v] == i) choice_[v] = any_edge_within(v, mask);
      return i == Owner::F ? mask : Mask(n, 0);
    }
    const Mask b = attractor(mask, sub_other, other);
    Mask rest(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) rest[v] = mask[v] && !b[v];
    Mask rest_f = zielonka(rest);
    if (other == Owner::F)
      for (std::uint32_t v = 0; v < n; ++v) rest_f[v] = rest_f[v] || b[v];
    return rest_f;
  }

  std::vector<std::int32_t>& choices() { return choice_; }

private:
  const GameGraph& g_;
  std::vector<std::vector<Pred>> preds_;
  std::vector<std::int32_t> choice_;
};

}  // namespace

GameSolution solve_game(const GameGraph& game) {
  const std::size_t n = game.size();
  Solver solver(game);
  const Mask all(n, 1);
  GameSolution sol;
  const Objective& obj = game.f_objective;
  switch (obj.kind) {
    case ObjectiveKind::Reach: {
      Mask target(n, 0);
      for (std::uint32_t v = 0; v < n; ++v) target[v] = obj.in_target(v);
      sol.f_wins = solver.attractor(all, target, Owner::F);
      for (std::uint32_t v = 0; v < n; ++v)
        if (target[v] && game.owner[v] == Owner::F) solver.choices()[v] = 0;
      break;
    }
    case ObjectiveKind::Safe: {
      Mask bad(n, 0);
      for (std::uint32_t v = 0; v < n; ++v) bad[v] = !obj.in_target(v);
      const Mask lost = solver.attractor(all, bad, Owner::P);
      sol.f_wins.assign(n, 0);
      for (std::uint32_t v = 0; v < n; ++v) sol.f_wins[v] = !lost[v];
      for (std::uint32_t v = 0; v < n; ++v)
        if (sol.f_wins[v] && game.owner[v] == Owner::F) solver.choices()[v] = solver.any_edge_within(v, sol.f_wins);
      break;
    }
    case ObjectiveKind::Parity:
      sol.f_wins = solver.zielonka(all);
      break;
  }
  sol.f_choice.assign(n, -1);
  for (std::uint32_t v = 0; v < n; ++v)
    if (sol.f_wins[v] && game.owner[v] == Owner::F) sol.f_choice[v] = solver.choices()[v];
  return sol;
}

}  // namespace limem
