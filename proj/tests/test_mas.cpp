#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "repmas/error.hpp"
#include "repmas/indicators.hpp"
#include "repmas/mas.hpp"
#include "repmas/proximity.hpp"
#include "support.hpp"

using namespace repmas;

namespace {

Fsf fire_at(const std::string& id, Coord at, std::int64_t t, std::int64_t fieriness = 1, std::int64_t burning = 2) {
  Fsf f;
  f.object_id = id;
  f.class_name = "Fire";
  f.semantic = SemanticClass(Kind::Phenomenon);
  f.qualifiers = {{"fieriness", fieriness}, {"inDangerNeighbours", std::int64_t{3}}, {"burningNeighbours", burning}};
  f.location = at;
  f.time = t;
  return f;
}

Fsf brigade_at(const std::string& id, Coord at, std::int64_t t, bool extinguishing = false) {
  Fsf f;
  f.object_id = id;
  f.class_name = "FireBrigade";
  f.semantic = SemanticClass(Kind::Actor);
  f.qualifiers = {{"extinguishing", std::int64_t{extinguishing ? 1 : 0}}};
  f.location = at;
  f.time = t;
  return f;
}

void advance_to(RepresentationMas& mas, Cycle c) {
  while (mas.cycle() < c) mas.run_cycle({});
}

std::size_t history_total(const RepresentationMas& mas) {
  std::size_t n = 0;
  for (const auto& a : mas.agents()) n += a.history.size();
  return n;
}

}  // namespace

TEST(Indicators, FireWorkedExamples) {
  const Fsf f = fire_at("fire#14", {20, 25}, 7, 1, 2);
  const auto u = update_indicators_fire(0.0, f, 0, 0, 0.0);
  EXPECT_DOUBLE_EQ(u.x, 3.0);
  EXPECT_NEAR(u.pi, 10.0 * std::exp(-0.15), 1e-12);
  EXPECT_NEAR(u.pi, 8.607, 1e-3);

  // x = 2 + 1 + 7 - 5*2 = 0.
  const auto zero = update_indicators_fire(0.0, f, 7, 2, 0.0);
  EXPECT_EQ(zero.x, 0.0);
  EXPECT_EQ(zero.pi, 10.0);

  EXPECT_EQ(update_indicators_fire(3.0, f, 0, 0, 1.0).ai, 4.0);
}

TEST(Indicators, FireNeedsItsQualifiers) {
  Fsf f = fire_at("fire#1", {0, 0}, 0);
  f.qualifiers.erase(f.qualifiers.begin());
  try {
    update_indicators_fire(0.0, f, 0, 0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingQualifier);
  }
}

TEST(Indicators, BrigadeWorkedExamples) {
  BrigadeContext idle{0, false, 10};
  EXPECT_NEAR(update_indicators_brigade(0.0, idle, 0.0).pi, 10.0 * std::exp(-0.5), 1e-12);
  EXPECT_NEAR(update_indicators_brigade(0.0, idle, 0.0).pi, 6.065, 1e-3);

  EXPECT_EQ(update_indicators_brigade(0.0, BrigadeContext{0, false, 0}, 0.0).pi, 10.0);

  BrigadeContext busy{2, true, 0};
  const auto u = update_indicators_brigade(1.0, busy, 0.5);
  EXPECT_DOUBLE_EQ(u.x, -7.0);
  EXPECT_NEAR(u.pi, 10.0 * std::exp(0.35) + 0.5, 1e-12);
  EXPECT_NEAR(u.pi, 14.69, 1e-2);
  EXPECT_EQ(u.ai, 1.5);
}

TEST(Routing, EmptyMasCreatesAgentZero) {
  RepresentationMas mas(default_engine_config());
  const auto d = mas.route_fsf(fire_at("fire#14", {20, 25}, 0));
  EXPECT_EQ(d.outcome, RoutingDecision::Outcome::Created);
  EXPECT_EQ(d.agent, 0);
  EXPECT_FALSE(d.best_proximity.has_value());
  EXPECT_EQ(mas.agent(0).ai, 0.0);
  EXPECT_NEAR(mas.agent(0).pi, 10.0 * std::exp(-0.15), 1e-12);
}

TEST(Routing, SameFireNextCycleIsAbsorbed) {
  RepresentationMas mas(default_engine_config());
  advance_to(mas, 7);
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#14", {20, 25}, 7)});
  const auto d = mas.route_fsf(fire_at("fire#14", {20, 25}, 8));
  EXPECT_EQ(d.outcome, RoutingDecision::Outcome::Absorbed);
  EXPECT_EQ(d.agent, 0);
  const double c = std::cosh(0.1);
  EXPECT_NEAR(*d.best_proximity, 1.0 / (c * c), 1e-12);
  EXPECT_NEAR(*d.best_proximity, 0.99007, 1e-5);
  EXPECT_EQ(mas.agent(0).history.size(), 2u);
}

TEST(Routing, StaleAndInvalid) {
  RepresentationMas mas(default_engine_config());
  try {
    mas.route_fsf(fire_at("fire#1", {0, 0}, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StaleFsf);
  }
  Fsf bad = fire_at("fire#1", {0, 0}, 0);
  bad.class_name = "Building";
  try {
    mas.route_fsf(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidFsf);
  }
  EXPECT_THROW(mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 5)}), Error);
  EXPECT_EQ(mas.ingested_count(), 0u);
}

TEST(Routing, BruteForceArgmaxOverRandomAgents) {
  testsupport::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    RepresentationMas mas(default_engine_config());
    std::vector<Fsf> seed;
    for (int i = 0; i < 20; ++i) {
      // Distinct far-apart objects, so each starts its own agent.
      seed.push_back(i % 2 ? fire_at("fire#" + std::to_string(i), {i * 100, 0}, 0)
                           : brigade_at("brigade#" + std::to_string(i), {i * 100, 0}, 0));
    }
    mas.run_cycle(seed);
    ASSERT_EQ(mas.agents().size(), 20u);
    Fsf probe = testsupport::int_in(g, 0, 1)
                    ? fire_at("fire#" + std::to_string(testsupport::int_in(g, 0, 40)),
                              {testsupport::int_in(g, 0, 2000), testsupport::int_in(g, -20, 20)}, 1,
                              testsupport::int_in(g, 1, 3), testsupport::int_in(g, 0, 4))
                    : brigade_at("brigade#" + std::to_string(testsupport::int_in(g, 0, 40)),
                                 {testsupport::int_in(g, 0, 2000), testsupport::int_in(g, -20, 20)}, 1);

    double best = -2.0;
    AgentId best_id = -1;
    for (const auto& a : mas.agents()) {
      if (a.dead()) continue;
      const double p = total_proximity(probe, a.current(), mas.ontology()).total;
      if (p > best) best = p, best_id = a.id;
    }
    const auto d = mas.route_fsf(probe);
    ASSERT_NEAR(*d.best_proximity, best, 1e-15);
    if (best >= 0.3) {
      ASSERT_EQ(d.outcome, RoutingDecision::Outcome::Absorbed);
      ASSERT_EQ(d.agent, best_id);
    } else {
      ASSERT_EQ(d.outcome, RoutingDecision::Outcome::Created);
      ASSERT_EQ(d.agent, 20);
    }
  }
}

TEST(Routing, TiesGoToSmallestId) {
  RepresentationMas mas(default_engine_config());
  // Two fires equidistant from the probe, same qualifiers.
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 0), fire_at("fire#2", {40, 0}, 0)});
  ASSERT_EQ(mas.agents().size(), 2u);
  const auto d = mas.route_fsf(fire_at("fire#3", {20, 0}, 1));
  EXPECT_EQ(d.outcome, RoutingDecision::Outcome::Absorbed);
  EXPECT_EQ(d.agent, 0);
}

TEST(RunCycle, SingleNewFireGivesTwoRecords) {
  RepresentationMas mas(default_engine_config());
  const auto records = mas.run_cycle(std::vector<Fsf>{fire_at("fire#14", {20, 25}, 0)});
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0], (ActivityRecord{0, 0, ActivityKind::IndicatorChange}));
  EXPECT_EQ(records[1], (ActivityRecord{0, 0, ActivityKind::StateChange}));
  EXPECT_EQ(mas.agent(0).state, 2);
  EXPECT_EQ(mas.cycle(), 1);
}

TEST(RunCycle, QuietCycleHasNoRecords) {
  RepresentationMas mas(default_engine_config());
  EXPECT_TRUE(mas.run_cycle({}).empty());
  mas.run_cycle(std::vector<Fsf>{brigade_at("brigade#1", {0, 0}, 1)});
  // The brigade is now in state 2 with flat indicators and receives nothing.
  EXPECT_TRUE(mas.run_cycle({}).empty());
  EXPECT_TRUE(mas.run_cycle({}).empty());
}

TEST(RunCycle, DeadAgentsAreFrozen) {
  RepresentationMas mas(default_engine_config());
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 0)});
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 1, 8)});
  const FactualAgent dead = mas.agent(0);
  ASSERT_TRUE(dead.dead());
  EXPECT_EQ(dead.state, 4);
  EXPECT_EQ(*dead.death_cycle, 1);

  // A new observation of the same fire does not reach the dead agent.
  const auto records = mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 2)});
  EXPECT_EQ(mas.agents().size(), 2u);
  for (const auto& r : records) EXPECT_NE(r.agent, 0);
  for (int i = 0; i < 5; ++i) mas.run_cycle({});
  const FactualAgent& later = mas.agent(0);
  EXPECT_EQ(later.ai, dead.ai);
  EXPECT_EQ(later.pi, dead.pi);
  EXPECT_EQ(later.state, dead.state);
  EXPECT_EQ(later.acquaintances, dead.acquaintances);
  EXPECT_EQ(later.history.size(), dead.history.size());
  EXPECT_EQ(later.lifetime(mas.cycle()), 1);
}

TEST(RunCycle, AcquaintancesAreSymmetricAndPruned) {
  RepresentationMas mas(default_engine_config());
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 0), fire_at("fire#2", {40, 0}, 0),
                                 brigade_at("brigade#1", {5, 0}, 0), fire_at("fire#3", {900, 900}, 0)});
  const auto& a = mas.agents();
  ASSERT_EQ(a.size(), 4u);
  for (const auto& x : a) {
    for (const auto& [id, p] : x.acquaintances) {
      EXPECT_GT(std::abs(p), 0.01);
      EXPECT_EQ(mas.agent(id).acquaintances.at(x.id), p);
    }
  }
  EXPECT_TRUE(mas.agent(3).acquaintances.empty());
  EXPECT_TRUE(mas.agent(0).acquaintances.count(1));
}

TEST(RunCycle, ConservationAndAiRecurrenceOnStreams) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testsupport::StreamGen gen(seed);
    RepresentationMas mas(default_engine_config());
    std::size_t fed = 0;
    while (fed < 300) {
      std::vector<Fsf> batch;
      const auto n = testsupport::int_in(gen.g, 0, 6);
      for (int i = 0; i < n; ++i) batch.push_back(gen.next(mas.cycle()));
      mas.run_cycle(batch);
      fed += batch.size();
      ASSERT_EQ(history_total(mas), fed);
    }
    std::map<AgentId, double> ai;
    for (const auto& ev : mas.indicator_log()) {
      if (ev.created) {
        ASSERT_EQ(ev.p, 0.0);
        ai[ev.agent] = 0.0;
      } else {
        ai[ev.agent] += ev.p;
      }
      ASSERT_NEAR(ev.ai, ai[ev.agent], 1e-9);
    }
    for (const auto& a : mas.agents()) ASSERT_NEAR(a.ai, ai[a.id], 1e-9);
  }
}

TEST(Snapshot, EmptyAndDeterministic) {
  RepresentationMas empty(default_engine_config());
  EXPECT_TRUE(empty.snapshot().agents.empty());
  EXPECT_EQ(snapshot_to_json(empty.snapshot()), R"({"cycles":0,"agents":[]})");

  auto run = [] {
    testsupport::StreamGen gen(99);
    RepresentationMas mas(default_engine_config());
    std::vector<std::string> lines;
    for (int c = 0; c < 60; ++c) {
      std::vector<Fsf> batch;
      for (int i = 0; i < 4; ++i) batch.push_back(gen.next(c));
      mas.run_cycle(batch);
      lines.push_back(snapshot_to_json(mas.snapshot()));
    }
    return lines;
  };
  EXPECT_EQ(run(), run());
}

TEST(Actions, OnEnterHandlersRun) {
  EngineConfig cfg = default_engine_config();
  cfg.mas.phenomenon_atn = atn::parse_atn(
      "atn f\ninitial 1\nstate 1 new\nstate 2 seen on_enter mark\nstate 4 dead terminal\n"
      "transition 1 -> 2 : true\ntransition 2 -> 4 : qualifier(fieriness) = 8\n");
  RepresentationMas mas(std::move(cfg));
  std::vector<AgentId> seen;
  mas.set_action_handler("mark", [&](const FactualAgent& a, atn::StateId s) {
    EXPECT_EQ(s, 2);
    seen.push_back(a.id);
  });
  mas.run_cycle(std::vector<Fsf>{fire_at("fire#1", {0, 0}, 0), fire_at("fire#2", {500, 0}, 0)});
  EXPECT_EQ(seen, (std::vector<AgentId>{0, 1}));
}
