#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace limem {

/// Raised on malformed input or out-of-range ids (CLI exit code 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration or node budget is exhausted (CLI exit code 3).
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Flat state index: pub * num_private + priv.
using StateId = std::uint32_t;
using PAction = std::uint32_t;
/// Flat F action index: public_part * f_private_size + private_part.
using FActionId = std::uint32_t;

struct GameState {
  std::uint32_t pub = 0;
  std::uint32_t priv = 0;
  auto operator<=>(const GameState&) const = default;
};

struct FAction {
  std::uint32_t public_part = 0;
  std::uint32_t private_part = 0;
  auto operator<=>(const FAction&) const = default;
};

enum class TurnOrder { PFirst, FFirst };

/// A finite arena V = V^pub x V^priv with a transition function over
/// (state, P action, F action). The transition table may be partial while
/// an arena is being assembled; validate_arena() reports missing entries.
class Arena {
public:
  static constexpr StateId kNoTarget = 0xffffffffu;

  Arena() = default;
  Arena(std::vector<std::string> public_states, std::vector<std::string> private_states,
        std::vector<std::string> p_actions, std::vector<std::string> f_public_actions,
        std::vector<std::string> f_private_actions, TurnOrder order = TurnOrder::PFirst);

  std::size_t num_public() const { return public_labels_.size(); }
  std::size_t num_private() const { return private_labels_.size(); }
  std::size_t num_states() const { return num_public() * num_private(); }
  std::size_t num_p_actions() const { return p_action_labels_.size(); }
  std::size_t num_f_public() const { return f_public_labels_.size(); }
  std::size_t num_f_private() const { return f_private_labels_.size(); }
  std::size_t num_f_actions() const { return num_f_public() * num_f_private(); }

  StateId id(GameState s) const;
  GameState state(StateId id) const;
  std::uint32_t pub_of(StateId id) const { return id / static_cast<StateId>(num_private()); }
  FActionId f_id(FAction a) const;
  FAction f_action(FActionId id) const;
  std::uint32_t f_public_of(FActionId id) const {
    return id / static_cast<FActionId>(num_f_private());
  }

  void set_transition(StateId from, PAction a, FActionId f, StateId to);
  void set_transition(GameState from, PAction a, FAction f, GameState to) {
    set_transition(id(from), a, f_id(f), id(to));
  }
  /// Raw table entry; kNoTarget when unset. No range checks.
  StateId raw_target(StateId from, PAction a, FActionId f) const {
    return delta_[(static_cast<std::size_t>(from) * num_p_actions() + a) * num_f_actions() + f];
  }
  std::span<const StateId> delta_table() const { return delta_; }

  StateId initial() const { return initial_; }
  void set_initial(StateId s) { initial_ = s; }
  TurnOrder turn_order() const { return turn_order_; }
  void set_turn_order(TurnOrder t) { turn_order_ = t; }

  const std::vector<std::string>& public_labels() const { return public_labels_; }
  const std::vector<std::string>& private_labels() const { return private_labels_; }
  const std::vector<std::string>& p_action_labels() const { return p_action_labels_; }
  const std::vector<std::string>& f_public_labels() const { return f_public_labels_; }
  const std::vector<std::string>& f_private_labels() const { return f_private_labels_; }
  std::string state_label(StateId s) const;
  std::string f_action_label(FActionId f) const;

  bool operator==(const Arena&) const = default;

private:
  std::vector<std::string> public_labels_;
  std::vector<std::string> private_labels_;
  std::vector<std::string> p_action_labels_;
  std::vector<std::string> f_public_labels_;
  std::vector<std::string> f_private_labels_;
  std::vector<StateId> delta_;
  StateId initial_ = 0;
  TurnOrder turn_order_ = TurnOrder::PFirst;
};

enum class ObjectiveKind { Reach, Safe, Parity };

/// P's winning condition. Reach/Safe carry a membership vector over flat
/// state ids; Parity carries a priority per state (min-parity, even wins).
struct Objective {
  ObjectiveKind kind = ObjectiveKind::Safe;
  std::vector<char> target;
  std::vector<int> priority;

  static Objective reach(std::vector<char> target);
  static Objective safe(std::vector<char> target);
  static Objective parity(std::vector<int> priority);

  bool in_target(StateId s) const { return target[s] != 0; }
  bool operator==(const Objective&) const = default;
};

/// Reach(T) <-> Safe(V\T); Parity(p) -> Parity(p+1).
Objective complement(const Objective& objective);

struct GameInstance {
  Arena arena;
  Objective objective;
  int memory_bound = 1;
  std::map<std::string, std::string> metadata;

  bool operator==(const GameInstance&) const = default;
};

/// Ultimately periodic play stem . cycle^omega.
struct Lasso {
  std::vector<StateId> stem;
  std::vector<StateId> cycle;
};

struct Violation {
  std::string invariant;
  std::string detail;
};
using ValidationReport = std::vector<Violation>;

ValidationReport validate_arena(const Arena& arena);
/// validate_arena plus objective shape and memory bound checks.
ValidationReport validate_instance(const GameInstance& instance);
std::string describe(const ValidationReport& report);

/// Delta lookup with range checks; throws UsageError on bad ids or a hole in delta.
StateId step(const Arena& arena, StateId v, PAction a, FActionId f);
GameState step(const Arena& arena, GameState v, PAction a, FAction f);

/// Whether the lasso's states are linked by some action pair under delta.
bool is_well_formed(const Arena& arena, const Lasso& lasso);

bool eval_lasso(const Objective& objective, const Lasso& lasso);

}  // namespace limem
