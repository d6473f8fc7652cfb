#include "repmas/mas.hpp"

#include <cmath>

#include "json.hpp"
#include "repmas/error.hpp"
#include "repmas/indicators.hpp"
#include "repmas/proximity.hpp"

namespace repmas {

namespace {

AgentKind kind_for(const Fsf& fsf) {
  return fsf.semantic.family() == Family::Virtual ? AgentKind::Phenomenon : AgentKind::Actor;
}

std::vector<bool> class_mask(const Ontology& onto, const std::vector<std::string>& names) {
  std::vector<bool> mask(onto.class_count(), false);
  for (const auto& name : names) {
    auto id = onto.find_class(name);
    if (!id) throw Error(Errc::ConfigError, "class '" + name + "' is not in the ontology");
    mask[*id] = true;
  }
  return mask;
}

}  // namespace

std::string_view to_string(AgentKind kind) {
  return kind == AgentKind::Phenomenon ? "phenomenon" : "actor";
}

RepresentationMas::RepresentationMas(EngineConfig config)
    : RepresentationMas(std::move(config.mas), std::move(config.ontology)) {}

RepresentationMas::RepresentationMas(MasConfig config, Ontology ontology)
    : config_(std::move(config)), ontology_(std::move(ontology)) {
  config_.validate();
  responder_mask_ = class_mask(ontology_, config_.responder_classes);
  hazard_mask_ = class_mask(ontology_, config_.hazard_classes);
}

std::size_t RepresentationMas::live_agent_count() const noexcept {
  std::size_t n = 0;
  for (const auto& a : agents_) n += a.dead() ? 0 : 1;
  return n;
}

void RepresentationMas::set_action_handler(const std::string& action, ActionHandler handler) {
  actions_[action] = std::move(handler);
}

const atn::AtnSpec& RepresentationMas::atn_for(AgentKind kind) const {
  return kind == AgentKind::Phenomenon ? config_.phenomenon_atn : config_.actor_atn;
}

int RepresentationMas::count_nearby(const Coord& where, double radius,
                                    const std::vector<bool>& mask) const {
  int n = 0;
  for (const auto& a : agents_) {
    if (a.dead() || !mask[a.class_id]) continue;
    if (distance(a.current().location, where) <= radius) ++n;
  }
  return n;
}

IndicatorEvent RepresentationMas::compute_indicators(const FactualAgent* agent, const Fsf& fsf,
                                                     double p) const {
  const AgentKind kind = agent ? agent->kind : kind_for(fsf);
  const double ai = agent ? agent->ai : 0.0;
  IndicatorUpdate u;
  if (kind == AgentKind::Phenomenon) {
    const std::int64_t lifetime = agent ? agent->lifetime(cycle_) : 0;
    const int brigades = count_nearby(fsf.location, config_.fire.brigade_radius, responder_mask_);
    u = update_indicators_fire(ai, fsf, lifetime, brigades, p, config_.fire);
  } else {
    BrigadeContext ctx;
    ctx.active_fires_in_radius = count_nearby(fsf.location, config_.brigade.radius, hazard_mask_);
    const auto ext = fsf.number("extinguishing");
    ctx.extinguishing = ext && *ext != 0.0;
    const bool engaged = ctx.extinguishing || ctx.active_fires_in_radius > 0;
    ctx.idle_cycles = (engaged || !agent) ? 0 : fsf.time - agent->last_engaged_cycle;
    u = update_indicators_brigade(ai, ctx, p, config_.brigade);
  }
  IndicatorEvent ev;
  ev.cycle = cycle_;
  ev.agent = agent ? agent->id : static_cast<AgentId>(agents_.size());
  ev.created = agent == nullptr;
  ev.p = p;
  ev.x = u.x;
  ev.ai = u.ai;
  ev.pi = u.pi;
  return ev;
}

RoutingDecision RepresentationMas::route_fsf(const Fsf& fsf) {
  if (fsf.time != cycle_) {
    throw Error(Errc::StaleFsf, fsf.object_id + " observed at cycle " + std::to_string(fsf.time) +
                                    " but the engine is at cycle " + std::to_string(cycle_));
  }
  try {
    validate_fsf(fsf, ontology_);
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidFsf) throw;
    throw Error(Errc::InvalidFsf, e.what());
  }
  const ClassId cls = ontology_.classify(fsf.object_id).id;

  RoutingDecision decision;
  FactualAgent* best = nullptr;
  for (auto& a : agents_) {
    if (a.dead()) continue;
    const double p = total_proximity(fsf, cls, a.current(), a.class_id, ontology_, config_.proximity).total;
    // Strict comparison keeps the smallest id on ties.
    if (!decision.best_proximity || p > *decision.best_proximity) {
      decision.best_proximity = p;
      best = &a;
    }
  }

  if (best && *decision.best_proximity >= config_.creation_threshold) {
    const IndicatorEvent ev = compute_indicators(best, fsf, *decision.best_proximity);
    best->history.push_back(fsf);
    best->ai = ev.ai;
    best->pi = ev.pi;
    if (best->kind == AgentKind::Actor) {
      const auto ext = fsf.number("extinguishing");
      const bool extinguishing = ext && *ext != 0.0;
      if (extinguishing || count_nearby(fsf.location, config_.brigade.radius, hazard_mask_) > 0) {
        best->last_engaged_cycle = fsf.time;
      }
    }
    indicator_log_.push_back(ev);
    decision.outcome = RoutingDecision::Outcome::Absorbed;
    decision.agent = best->id;
  } else {
    const IndicatorEvent ev = compute_indicators(nullptr, fsf, 0.0);
    FactualAgent a;
    a.id = static_cast<AgentId>(agents_.size());
    a.kind = kind_for(fsf);
    a.class_id = cls;
    a.history.push_back(fsf);
    a.ai = ev.ai;
    a.pi = ev.pi;
    a.state = atn_for(a.kind).initial;
    a.creation_cycle = cycle_;
    a.last_engaged_cycle = cycle_;
    agents_.push_back(std::move(a));
    indicator_log_.push_back(ev);
    decision.outcome = RoutingDecision::Outcome::Created;
    decision.agent = agents_.back().id;
  }
  ++ingested_;
  return decision;
}

void RepresentationMas::refresh_acquaintances() {
  std::vector<FactualAgent*> live;
  for (auto& a : agents_) {
    if (a.dead()) continue;
    a.acquaintances.clear();
    live.push_back(&a);
  }
  const double eps = config_.acquaintance_prune_epsilon;
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      FactualAgent& a = *live[i];
      FactualAgent& b = *live[j];
      const double p =
          total_proximity(a.current(), a.class_id, b.current(), b.class_id, ontology_, config_.proximity).total;
      if (std::abs(p) > eps) {
        a.acquaintances.emplace(b.id, p);
        b.acquaintances.emplace(a.id, p);
      }
    }
  }
}

atn::AgentView RepresentationMas::view_of(const FactualAgent& a) const {
  atn::AgentView v;
  v.state = a.state;
  v.ai = a.ai;
  v.pi = a.pi;
  v.d_ai = a.ai - a.prev_ai;
  v.d_pi = a.pi - a.prev_pi;
  v.lifetime = a.lifetime(cycle_);
  v.low_pi_streak = a.low_pi_streak;
  v.fsf = &a.current();
  return v;
}

std::vector<ActivityRecord> RepresentationMas::run_cycle(std::span<const Fsf> observations) {
  for (const auto& fsf : observations) {
    if (fsf.time != cycle_) {
      throw Error(Errc::StaleFsf, fsf.object_id + " observed at cycle " + std::to_string(fsf.time) +
                                      " during cycle " + std::to_string(cycle_));
    }
  }

  struct Before {
    double ai;
    double pi;
    bool dead;
  };
  std::vector<Before> before;
  before.reserve(agents_.size());
  for (const auto& a : agents_) before.push_back({a.ai, a.pi, a.dead()});

  for (const auto& fsf : observations) route_fsf(fsf);

  for (auto& a : agents_) {
    if (a.dead()) continue;
    a.low_pi_streak = a.pi < config_.thresholds.theta_dead ? a.low_pi_streak + 1 : 0;
  }

  refresh_acquaintances();

  std::vector<bool> fired(agents_.size(), false);
  for (auto& a : agents_) {
    if (a.dead()) continue;
    const auto& spec = atn_for(a.kind);
    const atn::StepResult step = atn::step_atn(spec, view_of(a));
    if (!step.fired) continue;
    fired[static_cast<std::size_t>(a.id)] = true;
    a.state = step.new_state;
    const atn::State* entered = spec.find_state(a.state);
    if (entered->terminal) a.death_cycle = cycle_;
    for (const auto& action : entered->on_enter) {
      if (auto it = actions_.find(action); it != actions_.end()) it->second(a, a.state);
    }
  }

  std::vector<ActivityRecord> records;
  for (auto& a : agents_) {
    const auto idx = static_cast<std::size_t>(a.id);
    const bool is_new = idx >= before.size();
    if (!is_new && before[idx].dead) continue;
    if (is_new || a.ai != before[idx].ai || a.pi != before[idx].pi) {
      records.push_back({cycle_, a.id, ActivityKind::IndicatorChange});
    }
    if (fired[idx]) records.push_back({cycle_, a.id, ActivityKind::StateChange});
    a.prev_ai = a.ai;
    a.prev_pi = a.pi;
  }

  activity_log_.insert(activity_log_.end(), records.begin(), records.end());
  ++cycle_;
  return records;
}

Snapshot RepresentationMas::snapshot() const {
  Snapshot s;
  s.completed_cycles = cycle_;
  s.agents.reserve(agents_.size());
  for (const auto& a : agents_) {
    AgentSnapshot as;
    as.id = a.id;
    as.kind = a.kind;
    as.class_name = ontology_.class_name(a.class_id);
    as.object_id = a.current().object_id;
    as.state = a.state;
    as.dead = a.dead();
    as.ai = a.ai;
    as.pi = a.pi;
    // Lifetime as of the last completed cycle.
    as.lifetime = a.lifetime(cycle_ > 0 ? cycle_ - 1 : 0);
    as.creation_cycle = a.creation_cycle;
    as.history_size = a.history.size();
    as.current = a.current();
    as.acquaintances.assign(a.acquaintances.begin(), a.acquaintances.end());
    s.agents.push_back(std::move(as));
  }
  return s;
}

std::string snapshot_to_json(const Snapshot& snapshot) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["cycles"] = snapshot.completed_cycles;
  doc["agents"] = ojson::array();
  for (const auto& a : snapshot.agents) {
    ojson acq = ojson::array();
    for (const auto& [id, p] : a.acquaintances) acq.push_back(ojson::array({id, p}));
    ojson agent;
    agent["id"] = a.id;
    agent["kind"] = to_string(a.kind);
    agent["class"] = a.class_name;
    agent["object_id"] = a.object_id;
    agent["state"] = a.state;
    agent["dead"] = a.dead;
    agent["ai"] = a.ai;
    agent["pi"] = a.pi;
    agent["lifetime"] = a.lifetime;
    agent["creation_cycle"] = a.creation_cycle;
    agent["history_size"] = a.history_size;
    agent["current_fsf"] = serialize_fsf(a.current);
    agent["acquaintances"] = std::move(acq);
    doc["agents"].push_back(std::move(agent));
  }
  return doc.dump();
}

}  // namespace repmas
