#pragma once

#include <cstddef>

#include "limem/arena.hpp"
#include "limem/formula.hpp"

namespace limem {

/// A_phi with P objective Reach({(v, (C_m, T))}). Public states:
/// inf, x_1^F, x_1^T, ..., x_n^F, x_n^T; private (C_k, F/T).
GameInstance cnf_to_reach_game(const CnfFormula& phi);
/// A_phi with P objective Safe(V minus the two (x_n^*, (C_m, F)) states).
GameInstance cnf_to_safe_game(const CnfFormula& phi);

/// A_psi with P objective Safe(V minus the accepting sink (inf, (C_m, T))).
GameInstance qbf_to_safe_game(const QbfFormula& psi);
/// A_psi with P objective Reach({(y_n^*, (C_m, F))}).
GameInstance qbf_to_reach_game(const QbfFormula& psi);

/// Prime-remainder game for the first n primes (F moves first).
GameInstance prime_remainder_game(std::size_t n);

/// Private state index of Rem(i, r) in prime_remainder_game(n), 0-based i.
std::uint32_t prime_remainder_rem_state(std::size_t n, std::size_t i, std::uint64_t r);

}  // namespace limem
