#include "repmas/fsf.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "json.hpp"
#include "repmas/error.hpp"
#include "repmas/ontology.hpp"

namespace repmas {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  if (s.find_first_of(".eE") == std::string_view::npos) return std::nullopt;
  double v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<Coord> parse_coord(std::string_view s) {
  const auto bar = s.find('|');
  if (bar == std::string_view::npos) return std::nullopt;
  auto x = parse_int(s.substr(0, bar));
  auto y = parse_int(s.substr(bar + 1));
  if (!x || !y) return std::nullopt;
  return Coord{*x, *y};
}

bool is_symbol_char(char c) {
  return c != ',' && c != '(' && c != ')' && c != '|' && c != ' ' && c != '\t' && c != '\r' &&
         c != '\n' && c != '#';
}

bool is_plain_symbol(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_symbol_char(c)) return false;
  }
  return !parse_int(s) && !parse_real(s);
}

Value parse_value(std::string_view token) {
  if (token.find('|') != std::string_view::npos) {
    if (auto c = parse_coord(token)) return *c;
    throw Error(Errc::BadCoordinate, "'" + std::string(token) + "' is not an x|y pair of integers");
  }
  if (auto i = parse_int(token)) return *i;
  if (auto r = parse_real(token)) return *r;
  if (!is_plain_symbol(token)) {
    throw Error(Errc::MalformedTuple, "bad value token '" + std::string(token) + "'");
  }
  return Symbol(token);
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string format_value(const Value& v) {
  struct Visitor {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_real(d); }
    std::string operator()(const Coord& c) const {
      return std::to_string(c.x) + "|" + std::to_string(c.y);
    }
    std::string operator()(const Symbol& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

void check_object_id(std::string_view id) {
  if (id.empty()) throw Error(Errc::MalformedTuple, "empty object id");
  for (char c : id) {
    if (c == ',' || c == '(' || c == ')' || c == ' ' || c == '\t') {
      throw Error(Errc::MalformedTuple, "object id '" + std::string(id) + "' contains a separator");
    }
  }
}

json value_to_json(const Value& v) {
  struct Visitor {
    json operator()(std::int64_t i) const { return i; }
    json operator()(double d) const { return d; }
    json operator()(const Coord& c) const { return json{{"x", c.x}, {"y", c.y}}; }
    json operator()(const Symbol& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

Value value_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw Error(Errc::NonFiniteInput, "non-finite qualifier value");
    return d;
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) return Coord{j.at("x").get<std::int64_t>(), j.at("y").get<std::int64_t>()};
  throw Error(Errc::MalformedTuple, "unsupported JSON qualifier value " + j.dump());
}

}  // namespace

double distance(const Coord& a, const Coord& b) noexcept {
  const double dx = static_cast<double>(a.x - b.x);
  const double dy = static_cast<double>(a.y - b.y);
  return std::hypot(dx, dy);
}

std::optional<double> as_number(const Value& value) noexcept {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return std::nullopt;
}

bool values_equal(const Value& a, const Value& b) noexcept {
  auto na = as_number(a);
  auto nb = as_number(b);
  if (na && nb) return *na == *nb;
  return a == b;
}

const QualifierValue* Fsf::find(std::string_view name) const noexcept {
  for (const auto& q : qualifiers) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

std::optional<double> Fsf::number(std::string_view name) const noexcept {
  const auto* q = find(name);
  return q ? as_number(q->value) : std::nullopt;
}

Fsf parse_fsf(std::string_view text, const Ontology& ontology) {
  const std::string_view body = trim(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw Error(Errc::MalformedTuple, "expected a parenthesized tuple");
  }
  const std::string_view inner = body.substr(1, body.size() - 2);
  if (inner.find_first_of("()") != std::string_view::npos) {
    throw Error(Errc::MalformedTuple, "unbalanced parentheses");
  }

  std::vector<std::string_view> tokens;
  for (std::size_t start = 0;;) {
    const auto comma = inner.find(',', start);
    tokens.push_back(trim(inner.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto tok : tokens) {
    if (tok.empty()) throw Error(Errc::MalformedTuple, "empty token");
  }
  if (tokens.size() % 2 == 0) {
    throw Error(Errc::MalformedTuple, "expected an object id followed by name/value pairs");
  }

  Fsf fsf;
  fsf.object_id = std::string(tokens[0]);
  check_object_id(fsf.object_id);
  const Classification cls = ontology.classify(fsf.object_id);
  fsf.class_name = cls.class_name;
  fsf.semantic = cls.semantic;

  bool have_location = false;
  bool have_time = false;
  for (std::size_t i = 1; i < tokens.size(); i += 2) {
    const std::string_view name = ontology.canonical_qualifier(tokens[i]);
    const std::string_view raw = tokens[i + 1];
    if (name == kLocalisationKey) {
      if (have_location) throw Error(Errc::MalformedTuple, "duplicate localisation");
      auto c = parse_coord(raw);
      if (!c) throw Error(Errc::BadCoordinate, "localisation '" + std::string(raw) + "' is not x|y");
      fsf.location = *c;
      have_location = true;
    } else if (name == kTimeKey) {
      if (have_time) throw Error(Errc::MalformedTuple, "duplicate time");
      auto t = parse_int(raw);
      if (!t || *t < 0) {
        throw Error(Errc::MalformedTuple, "time '" + std::string(raw) + "' is not a non-negative integer");
      }
      fsf.time = *t;
      have_time = true;
    } else {
      if (!ontology.allows_qualifier(cls.id, name)) {
        throw Error(Errc::UnknownQualifier,
                    "qualifier '" + std::string(name) + "' is not declared for class " + cls.class_name);
      }
      if (fsf.find(name)) {
        throw Error(Errc::MalformedTuple, "duplicate qualifier '" + std::string(name) + "'");
      }
      fsf.qualifiers.push_back({std::string(name), parse_value(raw)});
    }
  }
  if (!have_location) throw Error(Errc::MalformedTuple, "missing localisation");
  if (!have_time) throw Error(Errc::MalformedTuple, "missing time");
  return fsf;
}

std::string serialize_fsf(const Fsf& fsf) {
  std::string out = "(" + fsf.object_id;
  for (const auto& q : fsf.qualifiers) {
    out += ", ";
    out += q.name;
    out += ", ";
    out += format_value(q.value);
  }
  out += ", localisation, " + format_value(fsf.location);
  out += ", time, " + std::to_string(fsf.time) + ")";
  return out;
}

std::string fsf_to_jsonl(const Fsf& fsf) {
  json quals = json::array();
  for (const auto& q : fsf.qualifiers) quals.push_back(json::array({q.name, value_to_json(q.value)}));
  json doc = {
      {"objectId", fsf.object_id},
      {"class", fsf.class_name},
      {"qualifiers", std::move(quals)},
      {"location", {{"x", fsf.location.x}, {"y", fsf.location.y}}},
      {"time", fsf.time},
  };
  return doc.dump();
}

Fsf parse_fsf_jsonl(std::string_view line, const Ontology& ontology) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedTuple, std::string("invalid JSON: ") + e.what());
  }
  Fsf fsf;
  try {
    fsf.object_id = doc.at("objectId").get<std::string>();
    check_object_id(fsf.object_id);
    const Classification cls = ontology.classify(fsf.object_id);
    fsf.class_name = cls.class_name;
    fsf.semantic = cls.semantic;
    if (doc.contains("class") && doc.at("class").get<std::string>() != cls.class_name) {
      throw Error(Errc::InvalidFsf, "class '" + doc.at("class").get<std::string>() +
                                        "' disagrees with prefix rule (" + cls.class_name + ")");
    }
    for (const auto& pair : doc.value("qualifiers", json::array())) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(Errc::MalformedTuple, "qualifier entries must be [name, value] pairs");
      }
      const std::string name(ontology.canonical_qualifier(pair[0].get<std::string>()));
      if (name == kLocalisationKey || name == kTimeKey) {
        throw Error(Errc::MalformedTuple, "'" + name + "' belongs in its own key");
      }
      if (!ontology.allows_qualifier(cls.id, name)) {
        throw Error(Errc::UnknownQualifier, "qualifier '" + name + "' is not declared for class " + cls.class_name);
      }
      if (fsf.find(name)) throw Error(Errc::MalformedTuple, "duplicate qualifier '" + name + "'");
      fsf.qualifiers.push_back({name, value_from_json(pair[1])});
    }
    const auto& loc = doc.at("location");
    fsf.location = {loc.at("x").get<std::int64_t>(), loc.at("y").get<std::int64_t>()};
    fsf.time = doc.at("time").get<std::int64_t>();
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedTuple, std::string("JSON FSF schema: ") + e.what());
  }
  if (fsf.time < 0) throw Error(Errc::MalformedTuple, "negative time");
  for (const auto& q : fsf.qualifiers) {
    if (const auto* s = std::get_if<Symbol>(&q.value); s && !is_plain_symbol(*s)) {
      throw Error(Errc::MalformedTuple, "symbol '" + *s + "' cannot be represented in tuple form");
    }
  }
  return fsf;
}

void validate_fsf(const Fsf& fsf, const Ontology& ontology) {
  auto invalid = [&](const std::string& why) {
    throw Error(Errc::InvalidFsf, "'" + fsf.object_id + "': " + why);
  };
  if (fsf.object_id.empty()) invalid("empty object id");
  for (char c : fsf.object_id) {
    if (c == ',' || c == '(' || c == ')' || c == ' ' || c == '\t') invalid("separator in object id");
  }
  if (fsf.time < 0) invalid("negative time");
  const Classification cls = ontology.classify(fsf.object_id);
  if (cls.class_name != fsf.class_name || cls.semantic != fsf.semantic) {
    invalid("class " + fsf.class_name + " disagrees with the ontology (" + cls.class_name + ")");
  }
  std::set<std::string_view> seen;
  for (const auto& q : fsf.qualifiers) {
    if (q.name.empty()) invalid("empty qualifier name");
    if (ontology.canonical_qualifier(q.name) != q.name) invalid("qualifier '" + q.name + "' is an alias");
    if (!ontology.allows_qualifier(cls.id, q.name)) {
      throw Error(Errc::UnknownQualifier, "qualifier '" + q.name + "' is not declared for " + cls.class_name);
    }
    if (!seen.insert(q.name).second) invalid("duplicate qualifier '" + q.name + "'");
    if (const auto* d = std::get_if<double>(&q.value); d && !std::isfinite(*d)) {
      invalid("non-finite value for '" + q.name + "'");
    }
    if (const auto* s = std::get_if<Symbol>(&q.value); s && !is_plain_symbol(*s)) {
      invalid("symbol '" + *s + "' is not representable");
    }
  }
}

}  // namespace repmas
