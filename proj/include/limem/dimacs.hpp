#pragma once

#include <string_view>

#include "limem/formula.hpp"

namespace limem {

/// "p cnf V C" followed by zero-terminated clauses; 'c' lines are comments.
CnfFormula parse_dimacs(std::string_view text);

/// QDIMACS with 'a'/'e' prefix lines (before or after the header). Free
/// variables join an outermost existential block, and blocks are padded
/// with unused variables into strict forall/exists alternation. A variable
/// quantified twice is rejected as an unsupported shape.
QbfFormula parse_qdimacs(std::string_view text);

}  // namespace limem
