#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "limem/arena.hpp"
#include "limem/solver_winf.hpp"
#include "limem/solver_winp.hpp"
#include "limem/strategy.hpp"

namespace limem {

inline constexpr int kFormatVersion = 1;

using Json = nlohmann::json;

/// Sorted keys, two-space indent, short scalar arrays on one line, trailing newline.
std::string canonical(const Json& value);

/// Parses JSON text; syntax errors become UsageError with line and column.
Json parse_json(std::string_view text);

Json instance_to_json(const GameInstance& instance);
/// Semantic errors name the violated invariant and the document section.
GameInstance instance_from_json(const Json& doc);
std::string serialize_instance(const GameInstance& instance);
GameInstance parse_instance(std::string_view text);

Json strategy_to_json(const Arena& arena, const PStrategy& strategy);
/// Accepts a strategy document or a verdict document carrying one.
PStrategy strategy_from_json(const Arena& arena, const Json& doc);

Json winp_verdict_json(const GameInstance& instance, const WinPResult& result);
Json winf_verdict_json(const WinFResult& result);
Json check_verdict_json(const Arena& arena, const Verdict& verdict);

}  // namespace limem
