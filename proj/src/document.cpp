#include "limem/document.hpp"

#include <map>

namespace limem {
namespace {

bool has_object(const Json& v) {
  if (v.is_object()) return true;
  if (v.is_array())
    for (const Json& e : v)
      if (has_object(e)) return true;
  return false;
}

void write(const Json& v, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      write(it.value(), indent + 2, out);
    }
    out += "\n" + pad + "}";
    return;
  }
  if (v.is_array()) {
    const std::string flat = v.dump();
    if (v.empty() || (!has_object(v) && indent + flat.size() <= 100)) {
      out += flat;
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ",\n";
      out += inner;
      write(v[i], indent + 2, out);
    }
    out += "\n" + pad + "]";
    return;
  }
  out += v.dump();
}

/// Field access with the document path in error messages.
const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw UsageError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw UsageError(path + ": missing field '" + key + "'");
  return *it;
}

std::vector<std::string> strings(const Json& v, const std::string& path) {
  if (!v.is_array()) throw UsageError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : v) {
    if (!e.is_string()) throw UsageError(path + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw UsageError(path + ": expected a string");
  return v.get<std::string>();
}

std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw UsageError(path + ": expected an integer");
  return v.get<std::int64_t>();
}

class LabelIndex {
public:
  LabelIndex(const std::vector<std::string>& labels, std::string what) : what_(std::move(what)) {
    for (std::uint32_t i = 0; i < labels.size(); ++i) index_.emplace(labels[i], i);
  }
  std::uint32_t at(const Json& v, const std::string& path) const {
    const std::string label = text(v, path);
    const auto it = index_.find(label);
    if (it == index_.end()) throw UsageError(path + ": unknown " + what_ + " '" + label + "'");
    return it->second;
  }

private:
  std::map<std::string, std::uint32_t> index_;
  std::string what_;
};

Json state_json(const Arena& a, StateId s) {
  const GameState g = a.state(s);
  return Json::array({a.public_labels()[g.pub], a.private_labels()[g.priv]});
}

Json f_action_json(const Arena& a, FActionId f) {
  const FAction x = a.f_action(f);
  return Json::array({a.f_public_labels()[x.public_part], a.f_private_labels()[x.private_part]});
}

Json observation_json(const Arena& a, const ObservationSpace& obs, std::size_t o) {
  const Observation x = obs.observation(o);
  Json j = Json::array({a.public_labels()[x.pub]});
  if (x.last_f_public) j.push_back(a.f_public_labels()[*x.last_f_public]);
  return j;
}

const char* section_of(const std::string& invariant) {
  if (invariant == "delta not total" || invariant == "delta-range") return "arena.transitions";
  if (invariant == "initial-range") return "arena.initial";
  if (invariant == "objective-shape") return "objective";
  if (invariant == "memory-bound") return "memory_bound";
  if (invariant == "p-actions-nonempty") return "arena.p_actions";
  if (invariant == "f-actions-nonempty") return "arena.f_actions";
  return "arena.states";
}

}  // namespace

std::string canonical(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

Json parse_json(std::string_view input) {
  try {
    return Json::parse(input.begin(), input.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, input.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (input[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw UsageError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }
}

Json instance_to_json(const GameInstance& instance) {
  const Arena& a = instance.arena;
  Json arena;
  arena["states"] = {{"public", a.public_labels()}, {"private", a.private_labels()}};
  arena["p_actions"] = a.p_action_labels();
  arena["f_actions"] = {{"public", a.f_public_labels()}, {"private", a.f_private_labels()}};
  arena["initial"] = state_json(a, a.initial());
  arena["turn_order"] = a.turn_order() == TurnOrder::PFirst ? "p-first" : "f-first";
  Json transitions = Json::array();
  for (StateId s = 0; s < a.num_states(); ++s)
    for (PAction x = 0; x < a.num_p_actions(); ++x)
      for (FActionId f = 0; f < a.num_f_actions(); ++f) {
        const StateId to = a.raw_target(s, x, f);
        if (to == Arena::kNoTarget) continue;
        transitions.push_back(
            Json::array({state_json(a, s), a.p_action_labels()[x], f_action_json(a, f), state_json(a, to)}));
      }
  arena["transitions"] = std::move(transitions);

  Json objective;
  const Objective& obj = instance.objective;
  if (obj.kind == ObjectiveKind::Parity) {
    objective["kind"] = "parity";
    Json prio = Json::array();
    for (StateId s = 0; s < obj.priority.size() && s < a.num_states(); ++s) {
      Json entry = state_json(a, s);
      entry.push_back(obj.priority[s]);
      prio.push_back(std::move(entry));
    }
    objective["priority"] = std::move(prio);
  } else {
    objective["kind"] = obj.kind == ObjectiveKind::Reach ? "reach" : "safe";
    Json target = Json::array();
    for (StateId s = 0; s < obj.target.size() && s < a.num_states(); ++s)
      if (obj.target[s]) target.push_back(state_json(a, s));
    objective["target"] = std::move(target);
  }

  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["arena"] = std::move(arena);
  doc["objective"] = std::move(objective);
  doc["memory_bound"] = instance.memory_bound;
  doc["metadata"] = Json::object();
  for (const auto& [k, v] : instance.metadata) doc["metadata"][k] = v;
  return doc;
}

GameInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw UsageError("document: expected an object");
  if (integer(field(doc, "format_version", "document"), "format_version") != kFormatVersion)
    throw UsageError("format_version: unsupported version");
  const Json& ja = field(doc, "arena", "document");
  const Json& states = field(ja, "states", "arena");
  const Json& facts = field(ja, "f_actions", "arena");
  const std::string order = text(field(ja, "turn_order", "arena"), "arena.turn_order");
  if (order != "p-first" && order != "f-first")
    throw UsageError("arena.turn_order: expected \"p-first\" or \"f-first\"");
  Arena arena(strings(field(states, "public", "arena.states"), "arena.states.public"),
              strings(field(states, "private", "arena.states"), "arena.states.private"),
              strings(field(ja, "p_actions", "arena"), "arena.p_actions"),
              strings(field(facts, "public", "arena.f_actions"), "arena.f_actions.public"),
              strings(field(facts, "private", "arena.f_actions"), "arena.f_actions.private"),
              order == "p-first" ? TurnOrder::PFirst : TurnOrder::FFirst);
  {
    ValidationReport labels = validate_arena(arena);
    std::erase_if(labels, [](const Violation& v) { return v.invariant == "delta not total"; });
    if (!labels.empty())
      throw UsageError(std::string(section_of(labels.front().invariant)) + ": " + describe(labels));
  }
  const LabelIndex pub(arena.public_labels(), "public state");
  const LabelIndex priv(arena.private_labels(), "private state");
  const LabelIndex pact(arena.p_action_labels(), "P action");
  const LabelIndex fpub(arena.f_public_labels(), "F public action");
  const LabelIndex fpriv(arena.f_private_labels(), "F private action");
  auto state_of = [&](const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() < 2) throw UsageError(path + ": expected [public, private]");
    return arena.id({pub.at(v[0], path + "[0]"), priv.at(v[1], path + "[1]")});
  };

  arena.set_initial(state_of(field(ja, "initial", "arena"), "arena.initial"));
  const Json& trans = field(ja, "transitions", "arena");
  if (!trans.is_array()) throw UsageError("arena.transitions: expected an array");
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const std::string path = "arena.transitions[" + std::to_string(i) + "]";
    const Json& t = trans[i];
    if (!t.is_array() || t.size() != 4) throw UsageError(path + ": expected [state, P action, F action, state]");
    const StateId from = state_of(t[0], path);
    const PAction x = pact.at(t[1], path + "[1]");
    if (!t[2].is_array() || t[2].size() != 2) throw UsageError(path + "[2]: expected [public, private]");
    const FActionId f = arena.f_id({fpub.at(t[2][0], path + "[2][0]"), fpriv.at(t[2][1], path + "[2][1]")});
    const StateId to = state_of(t[3], path + "[3]");
    if (arena.raw_target(from, x, f) != Arena::kNoTarget)
      throw UsageError(path + ": transition for this state and action pair listed twice");
    arena.set_transition(from, x, f, to);
  }

  GameInstance inst;
  const Json& jo = field(doc, "objective", "document");
  const std::string kind = text(field(jo, "kind", "objective"), "objective.kind");
  const std::size_t n = arena.num_states();
  if (kind == "parity") {
    std::vector<int> prio(n, -1);
    const Json& jp = field(jo, "priority", "objective");
    if (!jp.is_array()) throw UsageError("objective.priority: expected an array");
    for (std::size_t i = 0; i < jp.size(); ++i) {
      const std::string path = "objective.priority[" + std::to_string(i) + "]";
      if (!jp[i].is_array() || jp[i].size() != 3) throw UsageError(path + ": expected [public, private, priority]");
      const StateId s = state_of(jp[i], path);
      const std::int64_t p = integer(jp[i][2], path + "[2]");
      if (p < 0) throw UsageError(path + ": objective-shape: negative priority");
      prio[s] = static_cast<int>(p);
    }
    if (std::find(prio.begin(), prio.end(), -1) != prio.end())
      throw UsageError("objective.priority: objective-shape: priority map is not total over the states");
    inst.objective = Objective::parity(std::move(prio));
  } else if (kind == "reach" || kind == "safe") {
    std::vector<char> target(n, 0);
    const Json& jt = field(jo, "target", "objective");
    if (!jt.is_array()) throw UsageError("objective.target: expected an array");
    for (std::size_t i = 0; i < jt.size(); ++i)
      target[state_of(jt[i], "objective.target[" + std::to_string(i) + "]")] = 1;
    inst.objective = kind == "reach" ? Objective::reach(std::move(target)) : Objective::safe(std::move(target));
  } else {
    throw UsageError("objective.kind: expected \"reach\", \"safe\" or \"parity\"");
  }
  inst.memory_bound = static_cast<int>(integer(field(doc, "memory_bound", "document"), "memory_bound"));
  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) throw UsageError("metadata: expected an object");
    for (auto m = it->begin(); m != it->end(); ++m) inst.metadata[m.key()] = text(m.value(), "metadata." + m.key());
  }
  inst.arena = std::move(arena);

  const ValidationReport report = validate_instance(inst);
  if (!report.empty()) throw UsageError(std::string(section_of(report.front().invariant)) + ": " + describe(report));
  return inst;
}

std::string serialize_instance(const GameInstance& instance) { return canonical(instance_to_json(instance)); }

GameInstance parse_instance(std::string_view input) { return instance_from_json(parse_json(input)); }

Json strategy_to_json(const Arena& arena, const PStrategy& strategy) {
  check_compatible(arena, strategy);
  const ObservationSpace obs(arena);
  Json table = Json::array();
  for (std::size_t o = 0; o < strategy.num_observations(); ++o)
    for (std::uint32_t m = 0; m < strategy.memory_size(); ++m) {
      const PMove& mv = strategy.at(o, m);
      table.push_back({{"observation", observation_json(arena, obs, o)},
                       {"memory", m + 1},
                       {"action", arena.p_action_labels()[mv.action]},
                       {"next_memory", mv.memory + 1}});
    }
  return {{"format_version", kFormatVersion},
          {"kind", "p-strategy"},
          {"memory", strategy.memory_size()},
          {"initial_memory", strategy.initial_memory() + 1},
          {"table", std::move(table)}};
}

PStrategy strategy_from_json(const Arena& arena, const Json& doc) {
  if (doc.is_object() && doc.contains("strategy")) return strategy_from_json(arena, doc["strategy"]);
  const std::int64_t k = integer(field(doc, "memory", "strategy"), "strategy.memory");
  const std::int64_t init = integer(field(doc, "initial_memory", "strategy"), "strategy.initial_memory");
  if (k < 1) throw UsageError("strategy.memory: must be >= 1");
  if (init < 1 || init > k) throw UsageError("strategy.initial_memory: out of range 1.." + std::to_string(k));
  const ObservationSpace obs(arena);
  const LabelIndex pub(arena.public_labels(), "public state");
  const LabelIndex fpub(arena.f_public_labels(), "F public action");
  const LabelIndex pact(arena.p_action_labels(), "P action");
  PStrategy out(obs.size(), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(init - 1));
  std::vector<char> seen(out.num_slots(), 0);
  const Json& table = field(doc, "table", "strategy");
  if (!table.is_array()) throw UsageError("strategy.table: expected an array");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string path = "strategy.table[" + std::to_string(i) + "]";
    const Json& e = table[i];
    const Json& jo = field(e, "observation", path);
    if (!jo.is_array() || jo.size() != (obs.sees_f_action() ? 2u : 1u))
      throw UsageError(path + ".observation: expected " +
                       (obs.sees_f_action() ? "[public state, F public action]" : "[public state]"));
    Observation o{pub.at(jo[0], path + ".observation[0]"), std::nullopt};
    if (obs.sees_f_action()) o.last_f_public = fpub.at(jo[1], path + ".observation[1]");
    const std::int64_t m = integer(field(e, "memory", path), path + ".memory");
    const std::int64_t next = integer(field(e, "next_memory", path), path + ".next_memory");
    if (m < 1 || m > k || next < 1 || next > k) throw UsageError(path + ": memory value out of range 1.." + std::to_string(k));
    const std::size_t slot = out.slot(obs.index(o), static_cast<std::uint32_t>(m - 1));
    if (seen[slot]++) throw UsageError(path + ": table entry listed twice");
    out.set_slot(slot, PMove{pact.at(field(e, "action", path), path + ".action"), static_cast<std::uint32_t>(next - 1)});
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw UsageError("strategy.table: table does not cover every observation and memory value");
  return out;
}

Json winp_verdict_json(const GameInstance& instance, const WinPResult& result) {
  Json doc{{"format_version", kFormatVersion},
           {"problem", "WIN_P"},
           {"memory_bound", instance.memory_bound},
           {"search_nodes", result.search_nodes},
           {"verdict", result.win ? "WIN" : "NO-WIN"}};
  if (result.strategy) doc["strategy"] = strategy_to_json(instance.arena, *result.strategy);
  return doc;
}

Json winf_verdict_json(const WinFResult& result) {
  const KnowledgeGame& game = result.game;
  const Arena& a = game.instance.arena;
  const ObservationSpace obs(a);
  Json doc{{"format_version", kFormatVersion},
           {"problem", "WIN_F"},
           {"memory_bound", game.source_memory},
           {"knowledge_nodes", game.nodes.size()},
           {"verdict", result.f_wins ? "F-WINS" : "F-LOSES"}};
  if (game.source_memory > 1) doc["unrolled"] = true;
  if (result.certificate) {
    Json cert = Json::array();
    for (std::size_t v = 0; v < game.nodes.size(); ++v) {
      const std::int64_t f = result.certificate->choice[v];
      if (f < 0) continue;
      const KnowledgeNode& node = game.nodes[v];
      Json commit = Json::array();
      for (std::size_t o = 0; o < node.commit.action.size(); ++o) {
        const std::int32_t x = node.commit.action[o];
        if (x == PartialTable::kUnbound) continue;
        commit.push_back(Json::array({observation_json(a, obs, o), a.p_action_labels()[static_cast<std::size_t>(x)]}));
      }
      Json entry{{"node", v},
                 {"state", state_json(a, node.state)},
                 {"commit", std::move(commit)},
                 {"f_action", f_action_json(a, static_cast<FActionId>(f))}};
      if (node.pending >= 0) entry["p_action"] = a.p_action_labels()[static_cast<std::size_t>(node.pending)];
      cert.push_back(std::move(entry));
    }
    doc["certificate"] = std::move(cert);
  }
  return doc;
}

Json check_verdict_json(const Arena& arena, const Verdict& verdict) {
  Json doc{{"format_version", kFormatVersion}, {"problem", "VERIFY"}, {"verdict", verdict.winning ? "WINNING" : "LOSING"}};
  if (verdict.witness) {
    Json stem = Json::array(), cycle = Json::array(), script = Json::array();
    for (StateId s : verdict.witness->lasso.stem) stem.push_back(state_json(arena, s));
    for (StateId s : verdict.witness->lasso.cycle) cycle.push_back(state_json(arena, s));
    for (FActionId f : verdict.witness->f_script) script.push_back(f_action_json(arena, f));
    doc["witness"] = {{"stem", std::move(stem)}, {"cycle", std::move(cycle)}, {"f_script", std::move(script)}};
  }
  return doc;
}

}  // namespace limem
