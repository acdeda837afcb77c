#include "limem/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "graph_util.hpp"

namespace limem {

ObservationSpace::ObservationSpace(const Arena& arena)
    : num_private_(std::max<std::size_t>(arena.num_private(), 1)),
      f_public_(arena.turn_order() == TurnOrder::FFirst ? arena.num_f_public() : 0),
      num_f_private_(std::max<std::size_t>(arena.num_f_private(), 1)) {
  size_ = f_public_ == 0 ? arena.num_public() : arena.num_public() * f_public_;
}

std::size_t ObservationSpace::index(const Observation& o) const {
  if (o.last_f_public.has_value() != (f_public_ > 0))
    throw UsageError("observation shape does not match the turn order");
  if (f_public_ == 0) return o.pub;
  return o.pub * f_public_ + *o.last_f_public;
}

Observation ObservationSpace::observation(std::size_t index) const {
  if (f_public_ == 0) return {static_cast<std::uint32_t>(index), std::nullopt};
  return {static_cast<std::uint32_t>(index / f_public_), static_cast<std::uint32_t>(index % f_public_)};
}

std::string ObservationSpace::label(const Arena& arena, std::size_t index) const {
  const Observation o = observation(index);
  std::string s = arena.public_labels().at(o.pub);
  if (o.last_f_public) s += "|" + arena.f_public_labels().at(*o.last_f_public);
  return s;
}

PStrategy::PStrategy(std::size_t num_observations, std::uint32_t memory_size, std::uint32_t initial_memory)
    : num_observations_(num_observations), memory_size_(memory_size), initial_memory_(initial_memory) {
  if (memory_size < 1) throw UsageError("memory size must be >= 1");
  if (initial_memory >= memory_size) throw UsageError("initial memory out of range");
  table_.assign(num_observations * memory_size, PMove{});
}

PStrategy PStrategy::embed(std::uint32_t k) const {
  if (k < memory_size_) throw UsageError("cannot embed into a smaller memory");
  PStrategy out(num_observations_, k, initial_memory_);
  for (std::size_t o = 0; o < num_observations_; ++o)
    for (std::uint32_t m = 0; m < memory_size_; ++m) out.set(o, m, at(o, m));
  return out;
}

void check_compatible(const Arena& arena, const PStrategy& strategy) {
  const ObservationSpace obs(arena);
  if (strategy.num_observations() != obs.size())
    throw UsageError("strategy observation space (" + std::to_string(strategy.num_observations()) +
                     ") does not match the arena (" + std::to_string(obs.size()) + ")");
  for (const PMove& m : strategy.table()) {
    if (m.action >= arena.num_p_actions()) throw UsageError("strategy action out of range");
    if (m.memory >= strategy.memory_size()) throw UsageError("strategy memory value out of range");
  }
}

InducedGraph induced_graph(const Arena& arena, const PStrategy& strategy) {
  check_compatible(arena, strategy);
  const ObservationSpace obs(arena);
  const std::uint32_t k = strategy.memory_size();
  const std::size_t nf = arena.num_f_actions();

  InducedGraph g;
  std::vector<std::uint32_t> id_of(arena.num_states() * k, UINT32_MAX);
  auto node_id = [&](StateId s, std::uint32_t m) {
    std::uint32_t& slot = id_of[static_cast<std::size_t>(s) * k + m];
    if (slot == UINT32_MAX) {
      slot = static_cast<std::uint32_t>(g.nodes.size());
      g.nodes.push_back({s, m});
      g.succ.emplace_back();
    }
    return slot;
  };
  node_id(arena.initial(), strategy.initial_memory());
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
    const InducedNode here = g.nodes[v];
    std::vector<InducedEdge> edges;
    for (FActionId f = 0; f < nf; ++f) {
      const PMove& mv = strategy.at(obs.observe(here.state, f), here.memory);
      const StateId to = step(arena, here.state, mv.action, f);
      const std::uint32_t t = node_id(to, mv.memory);
      if (std::none_of(edges.begin(), edges.end(), [&](const InducedEdge& e) { return e.target == t; }))
        edges.push_back({f, mv.action, t});
    }
    g.succ[v] = std::move(edges);
  }
  return g;
}

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

struct Bfs {
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> parent;
  std::vector<FActionId> parent_f;
};

/// BFS from `root` over nodes in `allowed`; `expand(v)` says whether v's
/// successors are explored.
template <typename Expand>
Bfs bfs(const InducedGraph& g, std::uint32_t root, const std::vector<char>& allowed, Expand expand) {
  Bfs b;
  b.parent.assign(g.nodes.size(), kNone);
  b.parent_f.assign(g.nodes.size(), 0);
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<std::uint32_t> q{root};
  seen[root] = 1;
  while (!q.empty()) {
    const std::uint32_t v = q.front();
    q.pop_front();
    b.order.push_back(v);
    if (!expand(v)) continue;
    for (const auto& e : g.succ[v]) {
      if (!allowed[e.target] || seen[e.target]) continue;
      seen[e.target] = 1;
      b.parent[e.target] = v;
      b.parent_f[e.target] = e.f;
      q.push_back(e.target);
    }
  }
  return b;
}

/// Node path root..target following BFS parents, with the F action of each edge.
void path_to(const Bfs& b, std::uint32_t target, std::vector<std::uint32_t>& nodes, std::vector<FActionId>& fs) {
  std::vector<std::uint32_t> rev{target};
  std::vector<FActionId> rev_f;
  while (b.parent[rev.back()] != kNone) {
    rev_f.push_back(b.parent_f[rev.back()]);
    rev.push_back(b.parent[rev.back()]);
  }
  nodes.assign(rev.rbegin(), rev.rend());
  fs.assign(rev_f.rbegin(), rev_f.rend());
}

/// Shortest cycle through `start` inside `allowed` (must exist).
void cycle_through(const InducedGraph& g, std::uint32_t start, const std::vector<char>& allowed,
                   std::vector<std::uint32_t>& nodes, std::vector<FActionId>& fs) {
  for (const auto& e : g.succ[start])
    if (e.target == start) {
      nodes = {start};
      fs = {e.f};
      return;
    }
  // BFS from the successors of start back to start.
  std::vector<std::uint32_t> parent(g.nodes.size(), kNone);
  std::vector<FActionId> parent_f(g.nodes.size(), 0);
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<std::uint32_t> q{start};
  seen[start] = 1;
  std::uint32_t closing = kNone;
  FActionId closing_f = 0;
  while (!q.empty() && closing == kNone) {
    const std::uint32_t v = q.front();
    q.pop_front();
    for (const auto& e : g.succ[v]) {
      if (!allowed[e.target]) continue;
      if (e.target == start) {
        closing = v;
        closing_f = e.f;
        break;
      }
      if (seen[e.target]) continue;
      seen[e.target] = 1;
      parent[e.target] = v;
      parent_f[e.target] = e.f;
      q.push_back(e.target);
    }
  }
  std::vector<std::uint32_t> rev{closing};
  std::vector<FActionId> rev_f{closing_f};
  while (rev.back() != start) {
    rev_f.push_back(parent_f[rev.back()]);
    rev.push_back(parent[rev.back()]);
  }
  nodes.assign(rev.rbegin(), rev.rend());
  fs.assign(rev_f.rbegin(), rev_f.rend());
}

Witness make_witness(const InducedGraph& g, const std::vector<std::uint32_t>& stem_nodes,
                     const std::vector<FActionId>& stem_f, const std::vector<std::uint32_t>& cycle_nodes,
                     const std::vector<FActionId>& cycle_f) {
  // stem_nodes ends at the first cycle node; drop it from the stem.
  Witness w;
  for (std::size_t i = 0; i + 1 < stem_nodes.size(); ++i) w.lasso.stem.push_back(g.nodes[stem_nodes[i]].state);
  for (std::uint32_t v : cycle_nodes) w.lasso.cycle.push_back(g.nodes[v].state);
  w.f_script = stem_f;
  w.f_script.insert(w.f_script.end(), cycle_f.begin(), cycle_f.end());
  return w;
}

std::optional<Witness> safety_violation(const InducedGraph& g, const Objective& obj) {
  const std::vector<char> all(g.nodes.size(), 1);
  const Bfs b = bfs(g, 0, all, [](std::uint32_t) { return true; });
  for (std::uint32_t v : b.order) {
    if (obj.in_target(g.nodes[v].state)) continue;
    std::vector<std::uint32_t> path;
    std::vector<FActionId> fs;
    path_to(b, v, path, fs);
    // Continue with the least F action until a node repeats.
    std::vector<std::size_t> pos(g.nodes.size(), SIZE_MAX);
    for (std::size_t i = 0; i < path.size(); ++i) pos[path[i]] = i;
    while (true) {
      const InducedEdge& e = g.succ[path.back()].front();
      fs.push_back(e.f);
      if (pos[e.target] != SIZE_MAX) {
        const std::size_t start = pos[e.target];
        std::vector<std::uint32_t> stem(path.begin(), path.begin() + static_cast<long>(start) + 1);
        std::vector<FActionId> stem_f(fs.begin(), fs.begin() + static_cast<long>(start));
        std::vector<std::uint32_t> cyc(path.begin() + static_cast<long>(start), path.end());
        std::vector<FActionId> cyc_f(fs.begin() + static_cast<long>(start), fs.end());
        return make_witness(g, stem, stem_f, cyc, cyc_f);
      }
      pos[e.target] = path.size();
      path.push_back(e.target);
    }
  }
  return std::nullopt;
}

/// A reachable cycle inside `region` through a node accepted by `pick`,
/// reached by a stem that stays within `stem_allowed`.
template <typename Pick>
std::optional<Witness> cycle_violation(const InducedGraph& g, const std::vector<char>& stem_allowed,
                                       const std::vector<char>& region, Pick pick) {
  const Bfs b = bfs(g, 0, stem_allowed, [&](std::uint32_t v) { return stem_allowed[v] != 0; });
  std::vector<char> mask(g.nodes.size(), 0);
  for (std::uint32_t v : b.order) mask[v] = region[v];
  const auto scc = detail::strongly_connected(g.succ, mask, [](const InducedEdge& e) { return e.target; });
  for (std::uint32_t v : b.order) {
    if (!mask[v] || !scc.nontrivial[scc.component[v]] || !pick(v)) continue;
    std::vector<char> comp(g.nodes.size(), 0);
    for (std::uint32_t u = 0; u < g.nodes.size(); ++u) comp[u] = scc.component[u] == scc.component[v];
    std::vector<std::uint32_t> stem, cyc;
    std::vector<FActionId> stem_f, cyc_f;
    path_to(b, v, stem, stem_f);
    cycle_through(g, v, comp, cyc, cyc_f);
    return make_witness(g, stem, stem_f, cyc, cyc_f);
  }
  return std::nullopt;
}

}  // namespace

Verdict verify_p_strategy(const GameInstance& instance, const PStrategy& strategy) {
  if (strategy.memory_size() > static_cast<std::uint32_t>(instance.memory_bound))
    throw UsageError("strategy memory exceeds the instance memory bound");
  const InducedGraph g = induced_graph(instance.arena, strategy);
  const Objective& obj = instance.objective;
  const std::size_t n = g.nodes.size();
  std::optional<Witness> w;
  switch (obj.kind) {
    case ObjectiveKind::Safe:
      w = safety_violation(g, obj);
      break;
    case ObjectiveKind::Reach: {
      std::vector<char> outside(n, 0);
      for (std::uint32_t v = 0; v < n; ++v) outside[v] = !obj.in_target(g.nodes[v].state);
      if (outside[0]) w = cycle_violation(g, outside, outside, [](std::uint32_t) { return true; });
      break;
    }
    case ObjectiveKind::Parity: {
      std::set<int> odd;
      for (const auto& nd : g.nodes)
        if (obj.priority[nd.state] % 2 == 1) odd.insert(obj.priority[nd.state]);
      const std::vector<char> all(n, 1);
      for (int c : odd) {
        std::vector<char> high(n, 0);
        for (std::uint32_t v = 0; v < n; ++v) high[v] = obj.priority[g.nodes[v].state] >= c;
        w = cycle_violation(g, all, high,
                            [&](std::uint32_t v) { return obj.priority[g.nodes[v].state] == c; });
        if (w) break;
      }
      break;
    }
  }
  Verdict verdict;
  verdict.winning = !w.has_value();
  verdict.witness = std::move(w);
  return verdict;
}

Play simulate(const Arena& arena, const PStrategy& strategy, const std::vector<FActionId>& f_script) {
  if (f_script.empty()) throw UsageError("simulate needs a non-empty F script");
  check_compatible(arena, strategy);
  const ObservationSpace obs(arena);
  Play play;
  StateId s = arena.initial();
  std::uint32_t m = strategy.initial_memory();
  play.states.push_back(s);
  play.memories.push_back(m);
  for (FActionId f : f_script) {
    if (f >= arena.num_f_actions()) throw UsageError("scripted F action out of range");
    const PMove& mv = strategy.at(obs.observe(s, f), m);
    s = step(arena, s, mv.action, f);
    m = mv.memory;
    play.p_actions.push_back(mv.action);
    play.states.push_back(s);
    play.memories.push_back(m);
  }
  return play;
}

}  // namespace limem
