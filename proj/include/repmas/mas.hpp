#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "repmas/atn.hpp"
#include "repmas/config.hpp"
#include "repmas/fsf.hpp"
#include "repmas/ontology.hpp"

namespace repmas {

using AgentId = std::int64_t;
using Cycle = std::int64_t;

/// Virtual-family observations (phenomena) vs concrete ones (actors).
enum class AgentKind { Phenomenon, Actor };

std::string_view to_string(AgentKind kind);

/// The living representative of one fact.
struct FactualAgent {
  AgentId id = 0;
  AgentKind kind = AgentKind::Phenomenon;
  ClassId class_id = 0;
  /// Every absorbed FSF; never empty, times non-decreasing, back() is current.
  std::vector<Fsf> history;
  double ai = 0.0;
  double pi = 0.0;
  /// Indicator values at the end of the previous cycle (for dAI / dPI).
  double prev_ai = 0.0;
  double prev_pi = 0.0;
  atn::StateId state = 0;
  Cycle creation_cycle = 0;
  std::optional<Cycle> death_cycle;
  /// Consecutive cycles with PI below thresholds.theta_dead.
  std::int64_t low_pi_streak = 0;
  /// Last cycle a responder saw a hazard in radius or was extinguishing.
  Cycle last_engaged_cycle = 0;
  /// Other agents with |total proximity| above the prune epsilon.
  std::map<AgentId, double> acquaintances;

  const Fsf& current() const { return history.back(); }
  bool dead() const noexcept { return death_cycle.has_value(); }
  /// Cycles since creation; frozen at death.
  std::int64_t lifetime(Cycle now) const noexcept {
    return (death_cycle ? *death_cycle : now) - creation_cycle;
  }
};

struct RoutingDecision {
  enum class Outcome { Absorbed, Created };

  Outcome outcome = Outcome::Created;
  AgentId agent = 0;
  /// Best total proximity over the live agents (absent when there were none).
  std::optional<double> best_proximity;

  friend bool operator==(const RoutingDecision&, const RoutingDecision&) = default;
};

enum class ActivityKind { StateChange, IndicatorChange };

struct ActivityRecord {
  Cycle cycle = 0;
  AgentId agent = 0;
  ActivityKind kind = ActivityKind::IndicatorChange;

  friend bool operator==(const ActivityRecord&, const ActivityRecord&) = default;
};

/// One indicator computation (creation or absorption), with its inputs.
struct IndicatorEvent {
  Cycle cycle = 0;
  AgentId agent = 0;
  bool created = false;
  /// Proximity term (0 on creation).
  double p = 0.0;
  /// Exponent argument x (or y for responders).
  double x = 0.0;
  double ai = 0.0;
  double pi = 0.0;
};

struct AgentSnapshot {
  AgentId id = 0;
  AgentKind kind = AgentKind::Phenomenon;
  std::string class_name;
  std::string object_id;
  atn::StateId state = 0;
  bool dead = false;
  double ai = 0.0;
  double pi = 0.0;
  std::int64_t lifetime = 0;
  Cycle creation_cycle = 0;
  std::size_t history_size = 0;
  Fsf current;
  std::vector<std::pair<AgentId, double>> acquaintances;

  friend bool operator==(const AgentSnapshot&, const AgentSnapshot&) = default;
};

/// Immutable copy of the registry, agents in id order.
struct Snapshot {
  /// Number of cycles run so far.
  Cycle completed_cycles = 0;
  std::vector<AgentSnapshot> agents;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Single-line JSON with a fixed key order.
std::string snapshot_to_json(const Snapshot& snapshot);

/// Called when an agent enters a state listing `action` in on_enter.
using ActionHandler = std::function<void(const FactualAgent&, atn::StateId)>;

/// The representation layer: factual agents, the generative routing step,
/// indicator dynamics, acquaintances, and the cycle clock.
///
/// Not thread-safe; a single caller drives it. On an exception the registry
/// is left consistent but the failing cycle may be partially applied.
class RepresentationMas {
 public:
  explicit RepresentationMas(EngineConfig config);
  RepresentationMas(MasConfig config, Ontology ontology);

  /// Absorbs `fsf` into the closest live agent when that proximity reaches
  /// the creation threshold, otherwise creates a new agent for it.
  /// Requires fsf.time == cycle().
  RoutingDecision route_fsf(const Fsf& fsf);

  /// Routes the batch in order, refreshes acquaintances, steps every live
  /// ATN in id order, records activities, then advances the clock.
  std::vector<ActivityRecord> run_cycle(std::span<const Fsf> observations);

  Snapshot snapshot() const;

  Cycle cycle() const noexcept { return cycle_; }
  const std::vector<FactualAgent>& agents() const noexcept { return agents_; }
  const FactualAgent& agent(AgentId id) const { return agents_.at(static_cast<std::size_t>(id)); }
  std::size_t live_agent_count() const noexcept;
  std::size_t ingested_count() const noexcept { return ingested_; }
  const std::vector<ActivityRecord>& activity_log() const noexcept { return activity_log_; }
  const std::vector<IndicatorEvent>& indicator_log() const noexcept { return indicator_log_; }
  const MasConfig& config() const noexcept { return config_; }
  const Ontology& ontology() const noexcept { return ontology_; }

  void set_action_handler(const std::string& action, ActionHandler handler);

 private:
  const atn::AtnSpec& atn_for(AgentKind kind) const;
  IndicatorEvent compute_indicators(const FactualAgent* agent, const Fsf& fsf, double p) const;
  int count_nearby(const Coord& where, double radius, const std::vector<bool>& class_mask) const;
  void refresh_acquaintances();
  atn::AgentView view_of(const FactualAgent& a) const;

  MasConfig config_;
  Ontology ontology_;
  std::vector<bool> responder_mask_;
  std::vector<bool> hazard_mask_;
  std::vector<FactualAgent> agents_;
  Cycle cycle_ = 0;
  std::size_t ingested_ = 0;
  std::vector<ActivityRecord> activity_log_;
  std::vector<IndicatorEvent> indicator_log_;
  std::unordered_map<std::string, ActionHandler> actions_;
};

}  // namespace repmas
