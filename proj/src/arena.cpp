#include "limem/arena.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace limem {

Arena::Arena(std::vector<std::string> public_states, std::vector<std::string> private_states,
             std::vector<std::string> p_actions, std::vector<std::string> f_public_actions,
             std::vector<std::string> f_private_actions, TurnOrder order)
    : public_labels_(std::move(public_states)),
      private_labels_(std::move(private_states)),
      p_action_labels_(std::move(p_actions)),
      f_public_labels_(std::move(f_public_actions)),
      f_private_labels_(std::move(f_private_actions)),
      turn_order_(order) {
  delta_.assign(num_states() * num_p_actions() * num_f_actions(), kNoTarget);
}

StateId Arena::id(GameState s) const {
  if (s.pub >= num_public() || s.priv >= num_private())
    throw UsageError("state (" + std::to_string(s.pub) + "," + std::to_string(s.priv) +
                     ") out of range");
  return static_cast<StateId>(s.pub * num_private() + s.priv);
}

GameState Arena::state(StateId id) const {
  if (id >= num_states()) throw UsageError("state id " + std::to_string(id) + " out of range");
  const auto q = static_cast<std::uint32_t>(num_private());
  return {id / q, id % q};
}

FActionId Arena::f_id(FAction a) const {
  if (a.public_part >= num_f_public() || a.private_part >= num_f_private())
    throw UsageError("F action (" + std::to_string(a.public_part) + "," +
                     std::to_string(a.private_part) + ") out of range");
  return static_cast<FActionId>(a.public_part * num_f_private() + a.private_part);
}

FAction Arena::f_action(FActionId id) const {
  if (id >= num_f_actions()) throw UsageError("F action id " + std::to_string(id) + " out of range");
  const auto q = static_cast<std::uint32_t>(num_f_private());
  return {id / q, id % q};
}

void Arena::set_transition(StateId from, PAction a, FActionId f, StateId to) {
  if (from >= num_states() || to >= num_states() || a >= num_p_actions() || f >= num_f_actions())
    throw UsageError("transition entry out of range");
  delta_[(static_cast<std::size_t>(from) * num_p_actions() + a) * num_f_actions() + f] = to;
}

std::string Arena::state_label(StateId s) const {
  const GameState g = state(s);
  return "(" + public_labels_[g.pub] + "," + private_labels_[g.priv] + ")";
}

std::string Arena::f_action_label(FActionId f) const {
  const FAction a = f_action(f);
  if (num_f_private() == 1) return f_public_labels_[a.public_part];
  return f_public_labels_[a.public_part] + "/" + f_private_labels_[a.private_part];
}

Objective Objective::reach(std::vector<char> target) {
  return Objective{ObjectiveKind::Reach, std::move(target), {}};
}

Objective Objective::safe(std::vector<char> target) {
  return Objective{ObjectiveKind::Safe, std::move(target), {}};
}

Objective Objective::parity(std::vector<int> priority) {
  return Objective{ObjectiveKind::Parity, {}, std::move(priority)};
}

Objective complement(const Objective& objective) {
  switch (objective.kind) {
    case ObjectiveKind::Reach:
    case ObjectiveKind::Safe: {
      std::vector<char> flipped(objective.target.size());
      std::transform(objective.target.begin(), objective.target.end(), flipped.begin(),
                     [](char c) { return static_cast<char>(c == 0); });
      return objective.kind == ObjectiveKind::Reach ? Objective::safe(std::move(flipped))
                                                    : Objective::reach(std::move(flipped));
    }
    case ObjectiveKind::Parity: {
      std::vector<int> shifted = objective.priority;
      for (int& p : shifted) ++p;
      return Objective::parity(std::move(shifted));
    }
  }
  return objective;
}

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what, ValidationReport& out) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      out.push_back({"labels-unique", std::string(what) + " label '" + l + "' repeated"});
}

}  // namespace

ValidationReport validate_arena(const Arena& arena) {
  ValidationReport out;
  if (arena.num_public() == 0 || arena.num_private() == 0)
    out.push_back({"state-space-nonempty", "arena has no states"});
  if (arena.num_p_actions() == 0) out.push_back({"p-actions-nonempty", "P has no actions"});
  if (arena.num_f_actions() == 0) out.push_back({"f-actions-nonempty", "F has no actions"});
  check_unique(arena.public_labels(), "public state", out);
  check_unique(arena.private_labels(), "private state", out);
  check_unique(arena.p_action_labels(), "P action", out);
  check_unique(arena.f_public_labels(), "F public action", out);
  check_unique(arena.f_private_labels(), "F private action", out);
  if (arena.num_states() > 0 && arena.initial() >= arena.num_states())
    out.push_back({"initial-range", "initial state id out of range"});

  std::size_t missing = 0;
  std::size_t first_missing = 0;
  const auto table = arena.delta_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == Arena::kNoTarget) {
      if (missing++ == 0) first_missing = i;
    } else if (table[i] >= arena.num_states()) {
      out.push_back({"delta-range", "transition target out of range"});
    }
  }
  if (missing > 0) {
    const std::size_t nf = arena.num_f_actions();
    const std::size_t na = arena.num_p_actions();
    const auto f = static_cast<FActionId>(first_missing % nf);
    const auto a = static_cast<PAction>((first_missing / nf) % na);
    const auto s = static_cast<StateId>(first_missing / nf / na);
    std::ostringstream msg;
    msg << missing << " of " << table.size() << " entries undefined; first: state "
        << arena.state_label(s) << ", P action " << arena.p_action_labels()[a] << ", F action "
        << arena.f_action_label(f);
    out.push_back({"delta not total", msg.str()});
  }
  return out;
}

ValidationReport validate_instance(const GameInstance& instance) {
  ValidationReport out = validate_arena(instance.arena);
  const auto& obj = instance.objective;
  const std::size_t n = instance.arena.num_states();
  if (obj.kind == ObjectiveKind::Parity) {
    if (!obj.target.empty()) out.push_back({"objective-shape", "parity objective carries a target set"});
    if (obj.priority.size() != n)
      out.push_back({"objective-shape", "priority map is not total over the states"});
    if (std::any_of(obj.priority.begin(), obj.priority.end(), [](int p) { return p < 0; }))
      out.push_back({"objective-shape", "negative priority"});
  } else {
    if (!obj.priority.empty()) out.push_back({"objective-shape", "reach/safe objective carries priorities"});
    if (obj.target.size() != n)
      out.push_back({"objective-shape", "target membership does not cover the states"});
  }
  if (instance.memory_bound < 1) out.push_back({"memory-bound", "memory bound must be >= 1"});
  return out;
}

std::string describe(const ValidationReport& report) {
  std::string s;
  for (const auto& v : report) {
    if (!s.empty()) s += "; ";
    s += v.invariant + ": " + v.detail;
  }
  return s;
}

StateId step(const Arena& arena, StateId v, PAction a, FActionId f) {
  if (v >= arena.num_states()) throw UsageError("state id out of range");
  if (a >= arena.num_p_actions()) throw UsageError("P action out of range");
  if (f >= arena.num_f_actions()) throw UsageError("F action out of range");
  const StateId to = arena.raw_target(v, a, f);
  if (to == Arena::kNoTarget) throw UsageError("delta not total at " + arena.state_label(v));
  return to;
}

GameState step(const Arena& arena, GameState v, PAction a, FAction f) {
  return arena.state(step(arena, arena.id(v), a, arena.f_id(f)));
}

namespace {

bool linked(const Arena& arena, StateId from, StateId to) {
  for (PAction a = 0; a < arena.num_p_actions(); ++a)
    for (FActionId f = 0; f < arena.num_f_actions(); ++f)
      if (arena.raw_target(from, a, f) == to) return true;
  return false;
}

}  // namespace

bool is_well_formed(const Arena& arena, const Lasso& lasso) {
  if (lasso.cycle.empty()) return false;
  std::vector<StateId> seq = lasso.stem;
  seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());
  for (StateId s : seq)
    if (s >= arena.num_states()) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!linked(arena, seq[i], seq[i + 1])) return false;
  return linked(arena, lasso.cycle.back(), lasso.cycle.front());
}

bool eval_lasso(const Objective& objective, const Lasso& lasso) {
  switch (objective.kind) {
    case ObjectiveKind::Reach: {
      auto hit = [&](StateId s) { return objective.in_target(s); };
      return std::any_of(lasso.stem.begin(), lasso.stem.end(), hit) ||
             std::any_of(lasso.cycle.begin(), lasso.cycle.end(), hit);
    }
    case ObjectiveKind::Safe: {
      auto ok = [&](StateId s) { return objective.in_target(s); };
      return std::all_of(lasso.stem.begin(), lasso.stem.end(), ok) &&
             std::all_of(lasso.cycle.begin(), lasso.cycle.end(), ok);
    }
    case ObjectiveKind::Parity: {
      int lowest = objective.priority.at(lasso.cycle.front());
      for (StateId s : lasso.cycle) lowest = std::min(lowest, objective.priority.at(s));
      return lowest % 2 == 0;
    }
  }
  return false;
}

}  // namespace limem
