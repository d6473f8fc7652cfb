#include "repmas/atn.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "repmas/error.hpp"

namespace repmas::atn {

namespace {

constexpr std::string_view kFireAtn = R"(# Fire factual agent.
# Death transitions come first in each state so they take priority.
atn fire
initial 1
state 1 creation
state 2 active
state 3 salient
state 4 dead terminal
transition 1 -> 2 : true
transition 2 -> 4 : qualifier(fieriness) = $extinguished_value OR lowPiStreak >= $n_dead
transition 2 -> 3 : AI >= $theta_ai AND PI >= $theta_pi
transition 3 -> 4 : qualifier(fieriness) = $extinguished_value OR lowPiStreak >= $n_dead
transition 3 -> 2 : dAI < 0 AND AI < $theta_ai
)";

constexpr std::string_view kBrigadeAtn = R"(# Fire brigade factual agent.
atn brigade
initial 1
state 1 creation
state 2 searching
state 3 engaged
state 4 removed terminal
transition 1 -> 2 : true
transition 2 -> 4 : qualifier(removed) = 1
transition 2 -> 3 : dAI > 0 AND dPI > 0
transition 3 -> 2 : dAI <= 0 AND dPI <= 0
)";

bool compare(double lhs, CmpOp op, double rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
  }
  return false;
}

std::string_view op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

struct AtomName {
  Atom atom;
  std::string_view name;
};

constexpr AtomName kAtoms[] = {
    {Atom::AI, "AI"},         {Atom::PI, "PI"},
    {Atom::dAI, "dAI"},       {Atom::dPI, "dPI"},
    {Atom::LifeTime, "lifeTime"}, {Atom::LowPiStreak, "lowPiStreak"},
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Recursive-descent parser over a flat token list.
class GuardParser {
 public:
  GuardParser(std::string_view text, const Params& params) : params_(params) { tokenize(text); }

  Guard parse() {
    Guard g = parse_or();
    if (pos_ != tokens_.size()) fail("unexpected '" + tokens_[pos_] + "'");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::SchemaError, "guard: " + why);
  }

  void tokenize(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(' || c == ')') {
        tokens_.emplace_back(1, c);
        ++i;
      } else if (c == '<' || c == '>') {
        if (i + 1 < s.size() && s[i + 1] == '=') {
          tokens_.push_back(std::string(s.substr(i, 2)));
          i += 2;
        } else {
          tokens_.emplace_back(1, c);
          ++i;
        }
      } else if (c == '=') {
        tokens_.emplace_back("=");
        i += (i + 1 < s.size() && s[i + 1] == '=') ? 2 : 1;
      } else {
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
               std::string_view("()<>=").find(s[j]) == std::string_view::npos) {
          ++j;
        }
        tokens_.push_back(std::string(s.substr(i, j - i)));
        i = j;
      }
    }
  }

  bool accept(std::string_view tok) {
    if (pos_ < tokens_.size() && tokens_[pos_] == tok) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& next(const char* expected) {
    if (pos_ >= tokens_.size()) fail(std::string("expected ") + expected + " at end of guard");
    return tokens_[pos_++];
  }

  Guard parse_or() {
    Guard first = parse_and();
    if (pos_ >= tokens_.size() || tokens_[pos_] != "OR") return first;
    Guard node;
    node.type = Guard::Type::Or;
    node.children.push_back(std::move(first));
    while (accept("OR")) node.children.push_back(parse_and());
    return node;
  }

  Guard parse_and() {
    Guard first = parse_not();
    if (pos_ >= tokens_.size() || tokens_[pos_] != "AND") return first;
    Guard node;
    node.type = Guard::Type::And;
    node.children.push_back(std::move(first));
    while (accept("AND")) node.children.push_back(parse_not());
    return node;
  }

  Guard parse_not() {
    if (accept("NOT")) {
      Guard node;
      node.type = Guard::Type::Not;
      node.children.push_back(parse_not());
      return node;
    }
    return parse_primary();
  }

  Guard parse_primary() {
    if (accept("(")) {
      Guard inner = parse_or();
      if (!accept(")")) fail("missing ')'");
      return inner;
    }
    if (accept("true")) return Guard{};
    if (accept("false")) {
      Guard g;
      g.type = Guard::Type::False;
      return g;
    }
    return parse_comparison();
  }

  Guard parse_comparison() {
    Guard g;
    g.type = Guard::Type::Compare;
    const std::string& name = next("an atom");
    if (name == "qualifier") {
      if (!accept("(")) fail("expected '(' after qualifier");
      g.atom = Atom::Qualifier;
      g.qualifier = next("a qualifier name");
      if (!accept(")")) fail("expected ')' after qualifier name");
    } else {
      auto it = std::find_if(std::begin(kAtoms), std::end(kAtoms),
                             [&](const AtomName& a) { return a.name == name; });
      if (it == std::end(kAtoms)) fail("unknown atom '" + name + "'");
      g.atom = it->atom;
    }
    const std::string& op = next("a comparison operator");
    if (op == "<") g.op = CmpOp::Lt;
    else if (op == "<=") g.op = CmpOp::Le;
    else if (op == "=") g.op = CmpOp::Eq;
    else if (op == ">=") g.op = CmpOp::Ge;
    else if (op == ">") g.op = CmpOp::Gt;
    else fail("unknown operator '" + op + "'");

    const std::string& rhs = next("a number or $parameter");
    if (!rhs.empty() && rhs[0] == '$') {
      auto it = params_.find(std::string_view(rhs).substr(1));
      if (it == params_.end()) fail("unbound parameter '" + rhs + "'");
      g.rhs = {it->second, rhs.substr(1)};
    } else {
      double v = 0;
      auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), v);
      if (ec != std::errc() || ptr != rhs.data() + rhs.size()) fail("bad number '" + rhs + "'");
      g.rhs = {v, {}};
    }
    return g;
  }

  const Params& params_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

void print_into(const Guard& g, std::string& out);

void print_child(const Guard& child, std::string& out) {
  const bool compound = child.type == Guard::Type::And || child.type == Guard::Type::Or;
  if (compound) out += '(';
  print_into(child, out);
  if (compound) out += ')';
}

void print_into(const Guard& g, std::string& out) {
  switch (g.type) {
    case Guard::Type::True: out += "true"; return;
    case Guard::Type::False: out += "false"; return;
    case Guard::Type::Not:
      out += "NOT ";
      print_child(g.children.at(0), out);
      return;
    case Guard::Type::And:
    case Guard::Type::Or: {
      const char* sep = g.type == Guard::Type::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < g.children.size(); ++i) {
        if (i) out += sep;
        print_child(g.children[i], out);
      }
      return;
    }
    case Guard::Type::Compare:
      if (g.atom == Atom::Qualifier) {
        out += "qualifier(" + g.qualifier + ")";
      } else {
        for (const auto& a : kAtoms) {
          if (a.atom == g.atom) out += a.name;
        }
      }
      out += ' ';
      out += op_text(g.op);
      out += ' ';
      out += g.rhs.param.empty() ? format_number(g.rhs.value) : "$" + g.rhs.param;
      return;
  }
}

StateId parse_state_id(const std::string& tok, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(Errc::SchemaError, "bad state id '" + tok + "'", line);
  }
  return v;
}

}  // namespace

bool evaluate(const Guard& guard, const AgentView& view) {
  switch (guard.type) {
    case Guard::Type::True: return true;
    case Guard::Type::False: return false;
    case Guard::Type::Not: return !evaluate(guard.children.at(0), view);
    case Guard::Type::And:
      return std::all_of(guard.children.begin(), guard.children.end(),
                         [&](const Guard& c) { return evaluate(c, view); });
    case Guard::Type::Or:
      return std::any_of(guard.children.begin(), guard.children.end(),
                         [&](const Guard& c) { return evaluate(c, view); });
    case Guard::Type::Compare: {
      double lhs = 0.0;
      switch (guard.atom) {
        case Atom::AI: lhs = view.ai; break;
        case Atom::PI: lhs = view.pi; break;
        case Atom::dAI: lhs = view.d_ai; break;
        case Atom::dPI: lhs = view.d_pi; break;
        case Atom::LifeTime: lhs = static_cast<double>(view.lifetime); break;
        case Atom::LowPiStreak: lhs = static_cast<double>(view.low_pi_streak); break;
        case Atom::Qualifier: {
          // Missing or non-numeric qualifiers make the comparison false.
          if (!view.fsf) return false;
          auto v = view.fsf->number(guard.qualifier);
          if (!v) return false;
          lhs = *v;
          break;
        }
      }
      return compare(lhs, guard.op, guard.rhs.value);
    }
  }
  return false;
}

Guard parse_guard(std::string_view text, const Params& params) {
  return GuardParser(text, params).parse();
}

std::string print_guard(const Guard& guard) {
  std::string out;
  print_into(guard, out);
  return out;
}

const State* AtnSpec::find_state(StateId id) const noexcept {
  for (const auto& s : states) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

bool AtnSpec::is_terminal(StateId id) const {
  const State* s = find_state(id);
  if (!s) throw Error(Errc::UnknownState, "state " + std::to_string(id) + " is not in ATN " + name);
  return s->terminal;
}

StepResult step_atn(const AtnSpec& spec, const AgentView& view) {
  if (spec.is_terminal(view.state)) return {view.state, false};
  for (const auto& t : spec.transitions) {
    if (t.from == view.state && evaluate(t.guard, view)) return {t.to, true};
  }
  return {view.state, false};
}

AtnSpec parse_atn(std::string_view text, const Params& params) {
  AtnSpec spec;
  bool have_initial = false;
  std::size_t initial_line = 0;
  // (from, to, line) of each transition, checked once all states are known.
  std::vector<std::size_t> transition_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = raw.substr(0, hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;

    if (keyword == "atn") {
      if (!(words >> spec.name)) throw Error(Errc::SchemaError, "atn needs a name", line_no);
    } else if (keyword == "initial") {
      std::string id;
      if (!(words >> id)) throw Error(Errc::SchemaError, "initial needs a state id", line_no);
      spec.initial = parse_state_id(id, line_no);
      have_initial = true;
      initial_line = line_no;
    } else if (keyword == "state") {
      State st;
      std::string id;
      if (!(words >> id >> st.label)) {
        throw Error(Errc::SchemaError, "state needs an id and a label", line_no);
      }
      st.id = parse_state_id(id, line_no);
      std::string word;
      while (words >> word) {
        if (word == "terminal") {
          st.terminal = true;
        } else if (word == "on_enter") {
          std::string list;
          if (!(words >> list)) throw Error(Errc::SchemaError, "on_enter needs action names", line_no);
          std::istringstream names(list);
          std::string action;
          while (std::getline(names, action, ',')) {
            if (action.empty()) throw Error(Errc::SchemaError, "empty action name", line_no);
            st.on_enter.push_back(action);
          }
        } else {
          throw Error(Errc::SchemaError, "unexpected '" + word + "' in state line", line_no);
        }
      }
      if (spec.find_state(st.id)) {
        throw Error(Errc::SchemaError, "duplicate state " + std::to_string(st.id), line_no);
      }
      spec.states.push_back(std::move(st));
    } else if (keyword == "transition") {
      std::string from, arrow, to, colon;
      if (!(words >> from >> arrow >> to >> colon) || arrow != "->" || colon != ":") {
        throw Error(Errc::SchemaError, "expected 'transition <from> -> <to> : <guard>'", line_no);
      }
      std::string guard_text;
      std::getline(words, guard_text);
      Transition t;
      t.from = parse_state_id(from, line_no);
      t.to = parse_state_id(to, line_no);
      try {
        t.guard = parse_guard(guard_text, params);
      } catch (const Error& e) {
        throw Error(Errc::SchemaError, e.what(), line_no);
      }
      spec.transitions.push_back(std::move(t));
      transition_lines.push_back(line_no);
    } else {
      throw Error(Errc::SchemaError, "unknown keyword '" + keyword + "'", line_no);
    }
  }

  if (spec.states.empty()) throw Error(Errc::SchemaError, "ATN declares no states");
  if (!have_initial) throw Error(Errc::SchemaError, "ATN has no initial state");
  if (!spec.find_state(spec.initial)) {
    throw Error(Errc::DanglingStateRef, "initial state " + std::to_string(spec.initial) + " is not declared",
                initial_line);
  }
  for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
    const auto& t = spec.transitions[i];
    for (StateId end : {t.from, t.to}) {
      if (!spec.find_state(end)) {
        throw Error(Errc::DanglingStateRef, "transition references undeclared state " + std::to_string(end),
                    transition_lines[i]);
      }
    }
    if (spec.find_state(t.from)->terminal) {
      throw Error(Errc::TerminalWithOutgoing,
                  "terminal state " + std::to_string(t.from) + " has an outgoing transition",
                  transition_lines[i]);
    }
  }
  return spec;
}

std::string_view default_fire_atn_text() { return kFireAtn; }
std::string_view default_brigade_atn_text() { return kBrigadeAtn; }

}  // namespace repmas::atn
