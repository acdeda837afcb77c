#include "limem/dimacs.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "limem/arena.hpp"

namespace limem {
namespace {

struct Parsed {
  int num_vars = -1;
  int num_clauses = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<std::pair<char, std::vector<int>>> prefix;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw UsageError("line " + std::to_string(line) + ": " + msg);
}

long to_int(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') fail(line, "expected an integer, got '" + tok + "'");
  return v;
}

Parsed parse(std::string_view input, bool allow_prefix) {
  Parsed p;
  std::istringstream in{std::string(input)};
  std::string raw;
  std::size_t line = 0;
  std::vector<int> clause;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c') continue;
    if (tok == "%") break;  // SATLIB end marker
    if (tok == "p") {
      std::string fmt, nv, nc, extra;
      if (p.num_vars >= 0) fail(line, "duplicate header");
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || (ls >> extra)) fail(line, "malformed header, expected 'p cnf <vars> <clauses>'");
      p.num_vars = static_cast<int>(to_int(nv, line));
      p.num_clauses = static_cast<int>(to_int(nc, line));
      if (p.num_vars < 0 || p.num_clauses < 0) fail(line, "negative count in header");
      continue;
    }
    if (tok == "a" || tok == "e") {
      if (!allow_prefix) fail(line, "quantifier line in a DIMACS CNF file");
      if (!p.clauses.empty() || !clause.empty()) fail(line, "quantifier line after the first clause");
      const char quantifier = tok[0];
      std::vector<int> vars;
      bool closed = false;
      while (ls >> tok) {
        const long v = to_int(tok, line);
        if (v == 0) {
          closed = true;
          break;
        }
        if (v < 0) fail(line, "negative variable in quantifier line");
        vars.push_back(static_cast<int>(v));
      }
      if (!closed) fail(line, "quantifier line not terminated by 0");
      p.prefix.emplace_back(quantifier, std::move(vars));
      continue;
    }
    if (p.num_vars < 0) fail(line, "clause before the 'p cnf' header");
    do {
      const long v = to_int(tok, line);
      if (v == 0) {
        if (clause.empty()) fail(line, "empty clause");
        p.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (std::labs(v) > p.num_vars) fail(line, "literal " + tok + " exceeds the declared variable count");
        clause.push_back(static_cast<int>(v));
      }
    } while (ls >> tok);
  }
  if (p.num_vars < 0) throw UsageError("missing 'p cnf' header");
  if (!clause.empty()) fail(line, "last clause not terminated by 0");
  if (static_cast<int>(p.clauses.size()) != p.num_clauses)
    throw UsageError("header declares " + std::to_string(p.num_clauses) + " clauses, found " +
                     std::to_string(p.clauses.size()));
  return p;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  Parsed p = parse(text, false);
  CnfFormula phi{p.num_vars, std::move(p.clauses)};
  check_formula(phi);
  return phi;
}

QbfFormula parse_qdimacs(std::string_view text) {
  Parsed p = parse(text, true);
  std::set<int> bound;
  for (const auto& [q, vars] : p.prefix)
    for (int v : vars) {
      if (v > p.num_vars) throw UsageError("quantified variable " + std::to_string(v) + " exceeds the declared count");
      if (!bound.insert(v).second)
        throw UsageError("unsupported shape: variable " + std::to_string(v) + " quantified twice");
    }
  // Free variables are existential and outermost.
  std::vector<int> free_vars;
  for (const auto& c : p.clauses)
    for (int lit : c)
      if (!bound.count(std::abs(lit))) {
        free_vars.push_back(std::abs(lit));
        bound.insert(std::abs(lit));
      }
  std::vector<std::pair<char, int>> sequence;  // quantifier per variable, 0 = padding
  auto push = [&](char q, int v) {
    const char want = sequence.size() % 2 == 0 ? 'a' : 'e';
    if (q != want) sequence.emplace_back(want, 0);
    sequence.emplace_back(q, v);
  };
  std::sort(free_vars.begin(), free_vars.end());
  for (int v : free_vars) push('e', v);
  for (const auto& [q, vars] : p.prefix)
    for (int v : vars) push(q, v);
  if (sequence.size() % 2 == 1) sequence.emplace_back('e', 0);
  if (sequence.empty()) sequence = {{'a', 0}, {'e', 0}};

  std::map<int, int> renumber;
  for (std::size_t i = 0; i < sequence.size(); ++i)
    if (sequence[i].second != 0) renumber[sequence[i].second] = static_cast<int>(i) + 1;
  QbfFormula psi;
  psi.num_blocks = static_cast<int>(sequence.size() / 2);
  psi.matrix.num_vars = static_cast<int>(sequence.size());
  for (const auto& c : p.clauses) {
    std::vector<int> out;
    for (int lit : c) out.push_back(lit > 0 ? renumber.at(lit) : -renumber.at(-lit));
    psi.matrix.clauses.push_back(std::move(out));
  }
  check_formula(psi);
  return psi;
}

}  // namespace limem
