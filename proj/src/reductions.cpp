#include "limem/reductions.hpp"

#include <cstdlib>

#include "limem/primes.hpp"

namespace limem {
namespace {

constexpr std::uint32_t kBot = 0;
constexpr std::uint32_t kTop = 1;

std::string truth(std::uint32_t b) { return b == kTop ? "T" : "F"; }

/// Whether setting variable `var` to `value` satisfies the clause.
bool satisfies(const std::vector<int>& clause, int var, std::uint32_t value) {
  for (int lit : clause)
    if (std::abs(lit) == var && (lit > 0) == (value == kTop)) return true;
  return false;
}

std::vector<std::string> clause_labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= m; ++k)
    for (std::uint32_t b : {kBot, kTop}) out.push_back("C" + std::to_string(k) + "." + truth(b));
  return out;
}

/// Arena A_phi; public x_j^b is 1 + 2(j-1) + b, private (C_k, alpha) is 2(k-1) + alpha.
Arena cnf_arena(const CnfFormula& phi) {
  check_formula(phi);
  const auto n = static_cast<std::uint32_t>(phi.num_vars);
  const auto m = static_cast<std::uint32_t>(phi.clauses.size());
  if (n < 1) throw UsageError("formula needs at least one variable");
  std::vector<std::string> pubs{"inf"};
  for (std::uint32_t j = 1; j <= n; ++j)
    for (std::uint32_t b : {kBot, kTop}) pubs.push_back("x" + std::to_string(j) + "." + truth(b));
  Arena arena(std::move(pubs), clause_labels(m), {"F", "T"}, {"d", "n"}, {"-"}, TurnOrder::PFirst);

  auto x = [](std::uint32_t j, std::uint32_t b) { return 1 + 2 * (j - 1) + b; };
  auto c = [](std::uint32_t k, std::uint32_t alpha) { return 2 * (k - 1) + alpha; };
  constexpr FActionId d = 0;
  for (std::uint32_t pub = 0; pub < arena.num_public(); ++pub)
    for (std::uint32_t k = 1; k <= m; ++k)
      for (std::uint32_t alpha : {kBot, kTop}) {
        const GameState from{pub, c(k, alpha)};
        const auto& clause = phi.clauses[k - 1];
        const std::uint32_t j = pub == 0 ? 0 : (pub - 1) / 2 + 1;
        for (std::uint32_t a : {kBot, kTop})
          for (FActionId f : {0u, 1u}) {
            GameState to = from;
            const GameState claim_refuted{pub, c(m, kTop)};
            if (pub == 0) {
              // rule 1; (inf, (C_k, T)) is unreachable and left absorbing
              if (alpha == kBot) to = f == d ? GameState{x(1, a), c(k, satisfies(clause, 1, a))} : claim_refuted;
            } else if (j < n) {
              // rule 2
              const std::uint32_t sat = alpha | static_cast<std::uint32_t>(satisfies(clause, static_cast<int>(j + 1), a));
              to = f == d ? GameState{x(j + 1, a), c(k, sat)} : claim_refuted;
            } else if (k < m) {
              if (f == d) {
                to = {0, c(k + 1, kBot)};  // rule 3
              } else {
                to = alpha == kBot ? GameState{x(n, a), c(m, kBot)} : claim_refuted;  // rule 4
              }
            }
            // otherwise (x_n^*, (C_m, *)): absorbing, rules 5 and 6
            arena.set_transition(from, a, FAction{f, 0}, to);
          }
      }
  arena.set_initial(arena.id({0, c(1, kBot)}));
  return arena;
}

GameInstance make_instance(Arena arena, Objective objective, const std::string& family) {
  GameInstance inst;
  inst.arena = std::move(arena);
  inst.objective = std::move(objective);
  inst.memory_bound = 1;
  inst.metadata["family"] = family;
  return inst;
}

/// Arena A_psi; public x_j^b is 1 + 2(j-1) + b and y_j^b is 1 + 2n + 2(j-1) + b.
Arena qbf_arena(const QbfFormula& psi) {
  check_formula(psi);
  const auto n = static_cast<std::uint32_t>(psi.num_blocks);
  const auto m = static_cast<std::uint32_t>(psi.matrix.clauses.size());
  std::vector<std::string> pubs{"inf"};
  for (const char* var : {"x", "y"})
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t b : {kBot, kTop}) pubs.push_back(var + std::to_string(j) + "." + truth(b));
  Arena arena(std::move(pubs), clause_labels(m), {"F", "T", "e"}, {"F", "T"}, {"-"}, TurnOrder::PFirst);

  auto xs = [](std::uint32_t j, std::uint32_t b) { return 1 + 2 * (j - 1) + b; };
  auto ys = [n](std::uint32_t j, std::uint32_t b) { return 1 + 2 * n + 2 * (j - 1) + b; };
  auto c = [](std::uint32_t k, std::uint32_t alpha) { return 2 * (k - 1) + alpha; };
  constexpr PAction e = 2;
  const GameState accept{0, c(m, kTop)};
  const GameState p_wins{ys(n, kBot), c(m, kBot)};

  for (std::uint32_t pub = 0; pub < arena.num_public(); ++pub)
    for (std::uint32_t k = 1; k <= m; ++k)
      for (std::uint32_t alpha : {kBot, kTop}) {
        const GameState from{pub, c(k, alpha)};
        const auto& clause = psi.matrix.clauses[k - 1];
        const bool is_x = pub >= 1 && pub <= 2 * n;
        const bool is_y = pub > 2 * n;
        const std::uint32_t j = pub == 0 ? 0 : ((pub - 1) % (2 * n)) / 2 + 1;
        const bool last_y = is_y && j == n;
        for (PAction a = 0; a < 3; ++a)
          for (FActionId f : {0u, 1u}) {
            GameState to = from;
            auto flag = [&](int var, std::uint32_t value) {
              return alpha | static_cast<std::uint32_t>(satisfies(clause, var, value));
            };
            if (from == accept || (last_y && k == m && alpha == kBot)) {
              // absorbing sinks
            } else if (a == e && k == 1) {
              to = accept;  // rule 1
            } else if (last_y && k == m) {
              to = a == e ? p_wins : accept;  // last clause satisfied: P may still call a changed y_n
            } else if (a == e && (pub == 0 || is_y)) {
              to = p_wins;  // rule 2
            } else if (pub == 0) {
              to = {xs(1, a), c(k, flag(QbfFormula::x_var(1), a))};  // rule 3
            } else if (is_x) {
              to = {ys(j, f), c(k, flag(QbfFormula::y_var(static_cast<int>(j)), f))};  // rules 4, 5
            } else if (j < n) {
              to = {xs(j + 1, a), c(k, flag(QbfFormula::x_var(static_cast<int>(j + 1)), a))};  // rules 8, 9
            } else {
              to = alpha == kTop ? GameState{0, c(k + 1, kBot)} : p_wins;  // rules 6, 7
            }
            arena.set_transition(from, a, FAction{f, 0}, to);
          }
      }
  arena.set_initial(arena.id({0, c(1, kBot)}));
  return arena;
}

}  // namespace

GameInstance cnf_to_reach_game(const CnfFormula& phi) {
  Arena arena = cnf_arena(phi);
  const std::uint32_t last_top = 2 * (static_cast<std::uint32_t>(phi.clauses.size()) - 1) + kTop;
  std::vector<char> target(arena.num_states(), 0);
  for (std::uint32_t pub = 0; pub < arena.num_public(); ++pub) target[arena.id({pub, last_top})] = 1;
  return make_instance(std::move(arena), Objective::reach(std::move(target)), "cnf-reach");
}

GameInstance cnf_to_safe_game(const CnfFormula& phi) {
  Arena arena = cnf_arena(phi);
  const auto n = static_cast<std::uint32_t>(phi.num_vars);
  const std::uint32_t last_bot = 2 * (static_cast<std::uint32_t>(phi.clauses.size()) - 1) + kBot;
  std::vector<char> target(arena.num_states(), 1);
  for (std::uint32_t b : {kBot, kTop}) target[arena.id({1 + 2 * (n - 1) + b, last_bot})] = 0;
  return make_instance(std::move(arena), Objective::safe(std::move(target)), "cnf-safe");
}

GameInstance qbf_to_safe_game(const QbfFormula& psi) {
  Arena arena = qbf_arena(psi);
  const std::uint32_t last_top = 2 * (static_cast<std::uint32_t>(psi.matrix.clauses.size()) - 1) + kTop;
  std::vector<char> target(arena.num_states(), 1);
  target[arena.id({0, last_top})] = 0;
  return make_instance(std::move(arena), Objective::safe(std::move(target)), "qbf-safe");
}

GameInstance qbf_to_reach_game(const QbfFormula& psi) {
  Arena arena = qbf_arena(psi);
  const auto n = static_cast<std::uint32_t>(psi.num_blocks);
  const std::uint32_t last_bot = 2 * (static_cast<std::uint32_t>(psi.matrix.clauses.size()) - 1) + kBot;
  std::vector<char> target(arena.num_states(), 0);
  for (std::uint32_t b : {kBot, kTop}) target[arena.id({1 + 2 * n + 2 * (n - 1) + b, last_bot})] = 1;
  return make_instance(std::move(arena), Objective::reach(std::move(target)), "qbf-reach");
}

namespace {

struct PrimeLayout {
  std::vector<std::uint64_t> primes;
  std::vector<std::uint32_t> count_offset;
  std::vector<std::uint32_t> rem_offset;
  std::uint32_t x = 0;
  std::uint32_t void_state = 0;
  std::uint32_t size = 0;

  explicit PrimeLayout(std::size_t n) : primes(first_n_primes(n)) {
    std::uint32_t next = 1;  // 0 is Choose
    for (std::uint64_t p : primes) {
      count_offset.push_back(next);
      next += static_cast<std::uint32_t>(p);
    }
    for (std::uint64_t p : primes) {
      rem_offset.push_back(next);
      next += static_cast<std::uint32_t>(p);
    }
    x = next++;
    void_state = next++;
    size = next;
  }
};

}  // namespace

std::uint32_t prime_remainder_rem_state(std::size_t n, std::size_t i, std::uint64_t r) {
  const PrimeLayout layout(n);
  return layout.rem_offset.at(i) + static_cast<std::uint32_t>(r);
}

GameInstance prime_remainder_game(std::size_t n) {
  if (n < 1) throw UsageError("prime count must be >= 1");
  const PrimeLayout L(n);
  std::vector<std::string> privs(L.size);
  privs[0] = "choose";
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint64_t c = 0; c < L.primes[i]; ++c) {
      privs[L.count_offset[i] + c] = "count" + std::to_string(i + 1) + "." + std::to_string(c);
      privs[L.rem_offset[i] + c] = "rem" + std::to_string(i + 1) + "." + std::to_string(c);
    }
  privs[L.x] = "X";
  privs[L.void_state] = "void";
  std::vector<std::string> f_pub{"s"}, f_priv;
  for (std::size_t i = 1; i <= n; ++i) {
    f_pub.push_back("rev" + std::to_string(i));
    f_priv.push_back("p" + std::to_string(i));
  }
  Arena arena({"S", "F"}, std::move(privs), {"f", "s"}, std::move(f_pub), std::move(f_priv), TurnOrder::FFirst);
  constexpr std::uint32_t S = 0, F = 1;
  constexpr PAction pf = 0;

  for (StateId s = 0; s < arena.num_states(); ++s)
    for (PAction a = 0; a < 2; ++a)
      for (FActionId fid = 0; fid < arena.num_f_actions(); ++fid) {
        const GameState from = arena.state(s);
        const FAction f = arena.f_action(fid);
        GameState to = from;
        // Which track and counter value a counting state stands for.
        std::size_t track = n;
        std::uint64_t count = 0;
        if (from.pub == S && from.priv == 0) {
          track = f.private_part;  // F commits to a prime with its hidden action part
        } else if (from.pub == S && from.priv >= L.count_offset[0] && from.priv < L.rem_offset[0]) {
          for (std::size_t i = 0; i < n; ++i)
            if (from.priv >= L.count_offset[i]) track = i;
          count = from.priv - L.count_offset[track];
        }
        if (track < n) {
          if (f.public_part == 0) {
            to = {S, L.count_offset[track] + static_cast<std::uint32_t>((count + 1) % L.primes[track])};
          } else if (f.public_part - 1 == track) {
            to = {F, L.rem_offset[track] + static_cast<std::uint32_t>(count)};
          } else {
            to = {S, L.void_state};
          }
        } else if (from.pub == F && from.priv >= L.rem_offset[0] && from.priv < L.x) {
          std::size_t i = 0;
          for (std::size_t t = 0; t < n; ++t)
            if (from.priv >= L.rem_offset[t]) i = t;
          const std::uint32_t r = from.priv - L.rem_offset[i];
          if (a == pf) {
            to = r > 0 ? GameState{F, from.priv - 1} : GameState{F, L.x};
          } else {
            to = {S, from.priv};
          }
        }
        arena.set_transition(s, a, fid, arena.id(to));
      }
  arena.set_initial(arena.id({S, 0}));

  std::vector<char> safe(arena.num_states(), 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint64_t r = 1; r < L.primes[i]; ++r) safe[arena.id({S, L.rem_offset[i] + static_cast<std::uint32_t>(r)})] = 0;
  safe[arena.id({F, L.x})] = 0;
  GameInstance inst = make_instance(std::move(arena), Objective::safe(std::move(safe)), "prime-remainder");
  inst.metadata["primes"] = std::to_string(n);
  return inst;
}

}  // namespace limem
