#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "repmas/fsf.hpp"

namespace repmas::atn {

using StateId = int;

enum class Atom { AI, PI, dAI, dPI, LifeTime, LowPiStreak, Qualifier };
enum class CmpOp { Lt, Le, Eq, Ge, Gt };

/// Right-hand side of a comparison. `param` keeps the symbolic name (`$theta_ai`)
/// for printing; `value` is what gets compared.
struct Operand {
  double value = 0.0;
  std::string param;

  friend bool operator==(const Operand&, const Operand&) = default;
};

/// Guard expression tree. And/Or nodes are n-ary.
struct Guard {
  enum class Type { True, False, Compare, And, Or, Not };

  Type type = Type::True;
  Atom atom = Atom::AI;
  std::string qualifier;
  CmpOp op = CmpOp::Eq;
  Operand rhs;
  std::vector<Guard> children;

  friend bool operator==(const Guard&, const Guard&) = default;
};

/// The agent properties guards can see. `fsf` may be null (no qualifier atoms
/// then hold).
struct AgentView {
  StateId state = 0;
  double ai = 0.0;
  double pi = 0.0;
  double d_ai = 0.0;
  double d_pi = 0.0;
  std::int64_t lifetime = 0;
  std::int64_t low_pi_streak = 0;
  const Fsf* fsf = nullptr;
};

bool evaluate(const Guard& guard, const AgentView& view);

/// Named constants that `$name` operands resolve against.
using Params = std::map<std::string, double, std::less<>>;

Guard parse_guard(std::string_view text, const Params& params = {});
std::string print_guard(const Guard& guard);

struct State {
  StateId id = 0;
  std::string label;
  bool terminal = false;
  std::vector<std::string> on_enter;
};

struct Transition {
  StateId from = 0;
  StateId to = 0;
  Guard guard;
};

struct AtnSpec {
  std::string name;
  StateId initial = 0;
  std::vector<State> states;
  /// Declaration order is priority order within a source state.
  std::vector<Transition> transitions;

  const State* find_state(StateId id) const noexcept;
  bool is_terminal(StateId id) const;
};

struct StepResult {
  StateId new_state = 0;
  bool fired = false;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

/// Fires the first outgoing transition of `view.state` whose guard holds.
/// Throws Error{UnknownState} if the state is not part of `spec`.
StepResult step_atn(const AtnSpec& spec, const AgentView& view);

/// Line-based format:
///
///   # comment
///   atn fire
///   initial 1
///   state <id> <label> [terminal] [on_enter <action>[,<action>...]]
///   transition <from> -> <to> : <guard>
///
/// Guards: comparisons `<atom> <op> <number|$param>` with atoms AI, PI, dAI,
/// dPI, lifeTime, lowPiStreak and qualifier(<name>); ops < <= = >= >;
/// connectives NOT, AND, OR (in increasing binding order: OR, AND, NOT) and
/// parentheses; literals true/false.
AtnSpec parse_atn(std::string_view text, const Params& params = {});

/// Built-in defaults, also shipped as data/atn/fire.atn and brigade.atn.
std::string_view default_fire_atn_text();
std::string_view default_brigade_atn_text();

}  // namespace repmas::atn
