#include <gtest/gtest.h>

#include "repmas/atn.hpp"
#include "repmas/config.hpp"
#include "repmas/error.hpp"
#include "support.hpp"

using namespace repmas;
using namespace repmas::atn;

namespace {

AtnSpec default_fire() { return parse_atn(default_fire_atn_text(), threshold_params(Thresholds{})); }
AtnSpec default_brigade() { return parse_atn(default_brigade_atn_text(), threshold_params(Thresholds{})); }

Errc atn_error(const std::string& text) {
  try {
    parse_atn(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return Errc::ParseError;
}

Guard random_guard(testsupport::Gen& g, int depth) {
  using testsupport::int_in;
  Guard out;
  const int pick = depth <= 0 ? static_cast<int>(int_in(g, 0, 2)) : static_cast<int>(int_in(g, 0, 5));
  switch (pick) {
    case 0:
      out.type = int_in(g, 0, 1) ? Guard::Type::True : Guard::Type::False;
      return out;
    case 1:
    case 2: {
      out.type = Guard::Type::Compare;
      out.atom = static_cast<Atom>(int_in(g, 0, 6));
      if (out.atom == Atom::Qualifier) out.qualifier = int_in(g, 0, 1) ? "fieriness" : "water";
      out.op = static_cast<CmpOp>(int_in(g, 0, 4));
      if (int_in(g, 0, 2) == 0) {
        out.rhs = {2.0, "theta_ai"};
      } else {
        out.rhs.value = static_cast<double>(int_in(g, -20, 20)) / 4.0;
      }
      return out;
    }
    case 3:
      out.type = Guard::Type::Not;
      out.children.push_back(random_guard(g, depth - 1));
      return out;
    default: {
      out.type = pick == 4 ? Guard::Type::And : Guard::Type::Or;
      const auto n = int_in(g, 2, 3);
      for (int i = 0; i < n; ++i) {
        Guard child = random_guard(g, depth - 1);
        // The parser flattens nested same-type connectives.
        if (child.type == out.type) {
          for (auto& c : child.children) out.children.push_back(std::move(c));
        } else {
          out.children.push_back(std::move(child));
        }
      }
      return out;
    }
  }
}

}  // namespace

TEST(StepAtn, FireActiveToSalient) {
  const AtnSpec spec = default_fire();
  AgentView v;
  v.state = 2;
  v.ai = 5;
  v.pi = 9;
  EXPECT_EQ(step_atn(spec, v), (StepResult{3, true}));
}

TEST(StepAtn, TerminalNeverFires) {
  for (const AtnSpec& spec : {default_fire(), default_brigade()}) {
    AgentView v;
    v.state = 4;
    v.ai = 100;
    v.pi = 100;
    v.d_ai = 1;
    v.d_pi = 1;
    EXPECT_EQ(step_atn(spec, v), (StepResult{4, false}));
  }
}

TEST(StepAtn, NoGuardHolds) {
  AgentView v;
  v.state = 2;
  v.ai = 1;
  v.pi = 9;
  EXPECT_EQ(step_atn(default_fire(), v), (StepResult{2, false}));
}

TEST(StepAtn, UnknownState) {
  AgentView v;
  v.state = 9;
  try {
    step_atn(default_fire(), v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownState);
  }
}

TEST(StepAtn, DeathHasPriorityOverPromotion) {
  Fsf out;
  out.qualifiers = {{"fieriness", std::int64_t{8}}};
  AgentView v;
  v.state = 2;
  v.ai = 5;
  v.pi = 9;
  v.fsf = &out;
  EXPECT_EQ(step_atn(default_fire(), v), (StepResult{4, true}));
  AgentView w;
  w.state = 3;
  w.low_pi_streak = 3;
  EXPECT_EQ(step_atn(default_fire(), w), (StepResult{4, true}));
}

TEST(StepAtn, SalientRegressesOnFallingAi) {
  AgentView v;
  v.state = 3;
  v.ai = 1.5;
  v.d_ai = -0.5;
  EXPECT_EQ(step_atn(default_fire(), v), (StepResult{2, true}));
}

TEST(StepAtn, BrigadeEngagesAndReleases) {
  AgentView v;
  v.state = 2;
  v.d_ai = 1;
  v.d_pi = 0.5;
  EXPECT_EQ(step_atn(default_brigade(), v), (StepResult{3, true}));
  v.state = 3;
  v.d_ai = 0;
  v.d_pi = -1;
  EXPECT_EQ(step_atn(default_brigade(), v), (StepResult{2, true}));
}

TEST(StepAtn, MissingQualifierIsFalse) {
  const Guard g = parse_guard("qualifier(fieriness) = 8 OR NOT qualifier(fieriness) = 8");
  AgentView v;
  EXPECT_FALSE(evaluate(parse_guard("qualifier(fieriness) = 8"), v));
  EXPECT_TRUE(evaluate(g, v));  // NOT of a false atom
}

TEST(ParseAtn, DefaultsHaveFourStates) {
  for (const AtnSpec& spec : {default_fire(), default_brigade()}) {
    EXPECT_EQ(spec.states.size(), 4u);
    EXPECT_EQ(spec.initial, 1);
    EXPECT_TRUE(spec.is_terminal(4));
    EXPECT_FALSE(spec.is_terminal(3));
  }
  EXPECT_EQ(default_fire().name, "fire");
  EXPECT_EQ(default_brigade().name, "brigade");
}

TEST(ParseAtn, StateActions) {
  const AtnSpec s = parse_atn("atn t\ninitial 1\nstate 1 a on_enter log,notify\nstate 2 b terminal\n"
                              "transition 1 -> 2 : true\n");
  ASSERT_EQ(s.states[0].on_enter.size(), 2u);
  EXPECT_EQ(s.states[0].on_enter[1], "notify");
}

TEST(ParseAtn, Errors) {
  EXPECT_EQ(atn_error("atn x\ninitial 1\nstate 1 a\nstate 2 b\ntransition 2 -> 9 : true\n"), Errc::DanglingStateRef);
  EXPECT_EQ(atn_error("atn x\ninitial 3\nstate 1 a\n"), Errc::DanglingStateRef);
  EXPECT_EQ(atn_error("atn x\ninitial 1\nstate 1 a terminal\nstate 2 b\ntransition 1 -> 2 : true\n"),
            Errc::TerminalWithOutgoing);
  EXPECT_EQ(atn_error("atn x\ninitial 1\nstate 1 a\nstate 1 b\n"), Errc::SchemaError);
  EXPECT_EQ(atn_error("atn x\ninitial 1\nstate 1 a\nstate 2 b\ntransition 1 -> 2 : AI >>\n"), Errc::SchemaError);
  EXPECT_EQ(atn_error("atn x\ninitial 1\nstate 1 a\nstate 2 b\ntransition 1 -> 2 : AI < $nope\n"),
            Errc::SchemaError);
  EXPECT_EQ(atn_error("bogus line\n"), Errc::SchemaError);
}

TEST(ParseAtn, ErrorsCarryLineNumbers) {
  try {
    parse_atn("atn x\ninitial 1\nstate 1 a\nstate 2 b\ntransition 2 -> 9 : true\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(Guard, PrecedenceAndParens) {
  AgentView v;
  v.ai = 1;
  v.pi = 1;
  // OR binds loosest: true OR (false AND false).
  EXPECT_TRUE(evaluate(parse_guard("AI = 1 OR AI = 2 AND PI = 2"), v));
  EXPECT_FALSE(evaluate(parse_guard("(AI = 1 OR AI = 2) AND PI = 2"), v));
  EXPECT_FALSE(evaluate(parse_guard("NOT AI = 1 AND PI = 1"), v));
}

TEST(Guard, ExampleIsWellFormed) {
  const Guard g = parse_guard("dAI < 0 AND PI < 5");
  ASSERT_EQ(g.type, Guard::Type::And);
  ASSERT_EQ(g.children.size(), 2u);
  EXPECT_EQ(g.children[0].atom, Atom::dAI);
  EXPECT_EQ(g.children[0].op, CmpOp::Lt);
  EXPECT_EQ(g.children[1].atom, Atom::PI);
  EXPECT_EQ(g.children[1].rhs.value, 5.0);
  EXPECT_EQ(parse_guard(print_guard(g)), g);
}

TEST(Guard, PrintParseFixpoint) {
  testsupport::Gen g(5);
  const Params params{{"theta_ai", 2.0}};
  for (int i = 0; i < 3000; ++i) {
    const Guard guard = random_guard(g, 4);
    const std::string text = print_guard(guard);
    const Guard back = parse_guard(text, params);
    ASSERT_EQ(back, guard) << text;
    ASSERT_EQ(print_guard(back), text);
  }
}

TEST(Guard, DeterministicOverSnapshots) {
  testsupport::Gen g(6);
  const AtnSpec spec = default_fire();
  for (int i = 0; i < 1000; ++i) {
    AgentView v;
    v.state = static_cast<StateId>(testsupport::int_in(g, 1, 4));
    v.ai = testsupport::real_in(g, -5, 10);
    v.pi = testsupport::real_in(g, 0, 12);
    v.d_ai = testsupport::real_in(g, -2, 2);
    v.low_pi_streak = testsupport::int_in(g, 0, 4);
    const StepResult a = step_atn(spec, v);
    const StepResult b = step_atn(spec, v);
    ASSERT_EQ(a, b);
    if (spec.is_terminal(v.state)) ASSERT_FALSE(a.fired);
    if (!a.fired) ASSERT_EQ(a.new_state, v.state);
  }
}
