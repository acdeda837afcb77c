#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace limem {

/// CNF over variables 1..num_vars; a literal is +v or -v.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool operator==(const CnfFormula&) const = default;
};

/// forall x_1 exists y_1 ... forall x_n exists y_n. matrix, where the matrix
/// numbers x_i as 2i-1 and y_i as 2i.
struct QbfFormula {
  int num_blocks = 0;
  CnfFormula matrix;

  static int x_var(int i) { return 2 * i - 1; }
  static int y_var(int i) { return 2 * i; }
  bool operator==(const QbfFormula&) const = default;
};

/// value[v-1] is the truth value of variable v.
using Assignment = std::vector<bool>;

inline constexpr std::uint64_t kDefaultFormulaBudget = 1ULL << 24;

/// Throws UsageError on empty clauses, zero literals, or out-of-range variables.
void check_formula(const CnfFormula& phi);
void check_formula(const QbfFormula& psi);

bool eval_literal(int literal, const Assignment& a);
bool eval_clause(const std::vector<int>& clause, const Assignment& a);
bool eval_cnf(const CnfFormula& phi, const Assignment& a);

/// Least model in the order false < true with x_1 most significant.
std::optional<Assignment> sat_bruteforce(const CnfFormula& phi, std::uint64_t budget = kDefaultFormulaBudget);
bool qbf_bruteforce(const QbfFormula& psi, std::uint64_t budget = kDefaultFormulaBudget);

}  // namespace limem
