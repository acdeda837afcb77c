#include "limem/formula.hpp"

#include <cstdlib>
#include <string>

#include "limem/arena.hpp"

namespace limem {

void check_formula(const CnfFormula& phi) {
  if (phi.num_vars < 0) throw UsageError("negative variable count");
  if (phi.clauses.empty()) throw UsageError("formula has no clauses");
  for (const auto& c : phi.clauses) {
    if (c.empty()) throw UsageError("empty clause");
    for (int lit : c)
      if (lit == 0 || std::abs(lit) > phi.num_vars)
        throw UsageError("literal " + std::to_string(lit) + " out of range 1.." + std::to_string(phi.num_vars));
  }
}

void check_formula(const QbfFormula& psi) {
  if (psi.num_blocks < 1) throw UsageError("QBF needs at least one quantifier block");
  if (psi.matrix.num_vars != 2 * psi.num_blocks)
    throw UsageError("QBF matrix must range over exactly 2n variables");
  check_formula(psi.matrix);
}

bool eval_literal(int literal, const Assignment& a) {
  const bool v = a.at(static_cast<std::size_t>(std::abs(literal) - 1));
  return literal > 0 ? v : !v;
}

bool eval_clause(const std::vector<int>& clause, const Assignment& a) {
  for (int lit : clause)
    if (eval_literal(lit, a)) return true;
  return false;
}

bool eval_cnf(const CnfFormula& phi, const Assignment& a) {
  for (const auto& c : phi.clauses)
    if (!eval_clause(c, a)) return false;
  return true;
}

namespace {

void check_budget(int vars, std::uint64_t budget) {
  if (vars >= 63 || (1ULL << vars) > budget)
    throw ResourceError("2^" + std::to_string(vars) + " assignments exceed the budget of " + std::to_string(budget));
}

bool qbf_rec(const CnfFormula& m, Assignment& a, int var) {
  if (var > m.num_vars) return eval_cnf(m, a);
  const bool universal = var % 2 == 1;
  for (bool value : {false, true}) {
    a[static_cast<std::size_t>(var - 1)] = value;
    const bool r = qbf_rec(m, a, var + 1);
    if (universal && !r) return false;
    if (!universal && r) return true;
  }
  return universal;
}

}  // namespace

std::optional<Assignment> sat_bruteforce(const CnfFormula& phi, std::uint64_t budget) {
  check_formula(phi);
  check_budget(phi.num_vars, budget);
  const int n = phi.num_vars;
  Assignment a(static_cast<std::size_t>(n));
  for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
    // x_1 is the most significant bit.
    for (int v = 1; v <= n; ++v) a[static_cast<std::size_t>(v - 1)] = (bits >> (n - v)) & 1U;
    if (eval_cnf(phi, a)) return a;
  }
  return std::nullopt;
}

bool qbf_bruteforce(const QbfFormula& psi, std::uint64_t budget) {
  check_formula(psi);
  check_budget(psi.matrix.num_vars, budget);
  Assignment a(static_cast<std::size_t>(psi.matrix.num_vars));
  return qbf_rec(psi.matrix, a, 1);
}

}  // namespace limem
