#include "limem/random.hpp"

#include <algorithm>

namespace limem {
namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::uint32_t between(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return lo + static_cast<std::uint32_t>(below(rng, hi - lo + 1));
}

std::vector<std::string> names(const std::string& prefix, std::uint32_t n) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<int> random_clause(std::mt19937_64& rng, int vars, int max_len) {
  const int len = static_cast<int>(between(rng, 1, static_cast<std::uint32_t>(std::min(vars, max_len))));
  std::vector<int> pool(static_cast<std::size_t>(vars));
  for (int v = 0; v < vars; ++v) pool[static_cast<std::size_t>(v)] = v + 1;
  std::vector<int> clause;
  for (int i = 0; i < len; ++i) {
    const auto pick = static_cast<std::size_t>(below(rng, pool.size()));
    const int v = pool[pick];
    pool.erase(pool.begin() + static_cast<long>(pick));
    clause.push_back(below(rng, 2) ? v : -v);
  }
  return clause;
}

}  // namespace

GameInstance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& options) {
  const std::uint32_t pubs = between(rng, 1, options.max_public);
  const std::uint32_t privs = between(rng, 1, options.max_private);
  const std::uint32_t pacts = between(rng, 1, options.max_p_actions);
  const std::uint32_t facts = between(rng, 1, options.max_f_actions);
  const TurnOrder order = options.orders[below(rng, options.orders.size())];
  Arena arena(names("u", pubs), names("v", privs), names("a", pacts), names("b", facts), {"-"}, order);
  const auto n = static_cast<std::uint32_t>(arena.num_states());
  for (StateId s = 0; s < n; ++s)
    for (PAction a = 0; a < pacts; ++a)
      for (FActionId f = 0; f < facts; ++f) arena.set_transition(s, a, f, static_cast<StateId>(below(rng, n)));
  arena.set_initial(static_cast<StateId>(below(rng, n)));

  GameInstance inst;
  inst.arena = std::move(arena);
  const ObjectiveKind kind = options.kinds[below(rng, options.kinds.size())];
  if (kind == ObjectiveKind::Parity) {
    std::vector<int> prio(n);
    for (int& p : prio) p = static_cast<int>(below(rng, static_cast<std::uint64_t>(options.max_priority) + 1));
    inst.objective = Objective::parity(std::move(prio));
  } else {
    std::vector<char> target(n);
    for (char& t : target) t = static_cast<char>(below(rng, 2));
    inst.objective = kind == ObjectiveKind::Reach ? Objective::reach(std::move(target))
                                                  : Objective::safe(std::move(target));
  }
  inst.memory_bound = options.memory_bound;
  return inst;
}

CnfFormula random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses, int max_len) {
  CnfFormula phi;
  phi.num_vars = static_cast<int>(between(rng, 1, static_cast<std::uint32_t>(max_vars)));
  const auto m = between(rng, 1, static_cast<std::uint32_t>(max_clauses));
  for (std::uint32_t i = 0; i < m; ++i) phi.clauses.push_back(random_clause(rng, phi.num_vars, max_len));
  return phi;
}

QbfFormula random_qbf(std::mt19937_64& rng, int max_blocks, int max_clauses, int max_len) {
  QbfFormula psi;
  psi.num_blocks = static_cast<int>(between(rng, 1, static_cast<std::uint32_t>(max_blocks)));
  psi.matrix.num_vars = 2 * psi.num_blocks;
  const auto m = between(rng, 1, static_cast<std::uint32_t>(max_clauses));
  for (std::uint32_t i = 0; i < m; ++i) psi.matrix.clauses.push_back(random_clause(rng, psi.matrix.num_vars, max_len));
  return psi;
}

}  // namespace limem
