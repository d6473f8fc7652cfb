#include "repmas/ontology.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "repmas/error.hpp"

namespace repmas {

namespace {

using json = nlohmann::json;

// Shipped as data/ontology/rcr.json as well.
constexpr std::string_view kRcrOntology = R"json({
  "classes": [
    {"name": "Motionless", "parent": "Object"},
    {"name": "Building", "parent": "Motionless"},
    {"name": "Road", "parent": "Motionless"},
    {"name": "Node", "parent": "Motionless"},
    {"name": "Humanoid", "parent": "Actor"},
    {"name": "FireBrigade", "parent": "Humanoid"},
    {"name": "Civilian", "parent": "Humanoid"},
    {"name": "AmbulanceTeam", "parent": "Humanoid"},
    {"name": "PoliceForce", "parent": "Humanoid"},
    {"name": "Fire", "parent": "Phenomenon"}
  ],
  "prefixes": {
    "fire": "Fire",
    "brigade": "FireBrigade",
    "building": "Building",
    "road": "Road",
    "civilian": "Civilian",
    "ambulance": "AmbulanceTeam",
    "police": "PoliceForce"
  },
  "qualifiers": {
    "Fire": ["fieriness", "inDangerNeighbours", "burningNeighbours"],
    "Building": ["fieriness", "floors", "brokenness"],
    "Humanoid": ["hp", "damage", "buriedness"],
    "FireBrigade": ["extinguishing", "water", "removed"]
  },
  "aliases": {"fieryness": "fieriness"},
  "similarity": [
    {"a": "Fire", "b": "Building", "value": 0.4},
    {"a": "Fire", "b": "FireBrigade", "value": 0.2},
    {"a": "Fire", "b": "Civilian", "value": 0.1},
    {"a": "FireBrigade", "b": "Building", "value": 0.1},
    {"a": "FireBrigade", "b": "AmbulanceTeam", "value": 0.5},
    {"a": "FireBrigade", "b": "PoliceForce", "value": 0.5},
    {"a": "AmbulanceTeam", "b": "Civilian", "value": 0.3}
  ],
  "default_similarity": 0.0
})json";

void require_unit_interval(double value, const std::string& what) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
    throw Error(Errc::SchemaError, what + " must lie in [-1, 1]");
  }
}

}  // namespace

Ontology::Ontology() {
  nodes_.push_back({"Concrete", std::nullopt, std::nullopt, {}});
  nodes_.push_back({"Virtual", std::nullopt, std::nullopt, {}});
  by_name_.emplace("Concrete", 0);
  by_name_.emplace("Virtual", 1);
  for (Kind kind : {Kind::Object, Kind::Actor, Kind::Means, Kind::Phenomenon, Kind::Action,
                    Kind::Message}) {
    const ClassId root = family_of(kind) == Family::Concrete ? 0 : 1;
    by_name_.emplace(std::string(to_string(kind)), nodes_.size());
    nodes_.push_back({std::string(to_string(kind)), root, kind, {}});
  }
  table_.assign(nodes_.size() * nodes_.size(), default_similarity_);
  for (ClassId i = 0; i < nodes_.size(); ++i) table_[i * nodes_.size() + i] = 1.0;
}

std::optional<ClassId> Ontology::find_class(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ClassId Ontology::require_class(std::string_view name) const {
  auto id = find_class(name);
  if (!id) throw Error(Errc::SchemaError, "unknown class '" + std::string(name) + "'");
  return *id;
}

void Ontology::add_class(const std::string& name, const std::string& parent) {
  if (name.empty()) throw Error(Errc::SchemaError, "class name must be non-empty");
  if (by_name_.count(name)) throw Error(Errc::SchemaError, "duplicate class '" + name + "'");
  const ClassId parent_id = require_class(parent);
  const std::size_t old_n = nodes_.size();
  nodes_.push_back({name, parent_id, nodes_[parent_id].kind, {}});
  by_name_.emplace(name, old_n);

  // Grow the dense table, keeping existing entries.
  const std::size_t n = nodes_.size();
  std::vector<double> grown(n * n, default_similarity_);
  for (std::size_t a = 0; a < old_n; ++a) {
    for (std::size_t b = 0; b < old_n; ++b) grown[a * n + b] = table_[a * old_n + b];
  }
  grown[old_n * n + old_n] = 1.0;
  table_ = std::move(grown);
}

void Ontology::add_prefix(const std::string& prefix, const std::string& class_name) {
  const ClassId id = require_class(class_name);
  if (!nodes_[id].kind) {
    throw Error(Errc::SchemaError, "prefix '" + prefix + "' targets root class '" + class_name +
                                       "', which has no observation kind");
  }
  if (prefix.empty()) throw Error(Errc::SchemaError, "empty prefix");
  prefixes_[prefix] = id;
}

void Ontology::add_qualifiers(const std::string& class_name, const std::vector<std::string>& names) {
  const ClassId id = require_class(class_name);
  for (const auto& name : names) {
    if (name.empty()) throw Error(Errc::SchemaError, "empty qualifier name");
    if (name == "localisation" || name == "time") {
      throw Error(Errc::SchemaError, "'" + name + "' is reserved");
    }
    nodes_[id].qualifiers.insert(name);
  }
}

void Ontology::add_alias(const std::string& alias, const std::string& canonical) {
  if (alias.empty() || canonical.empty()) throw Error(Errc::SchemaError, "empty alias");
  aliases_[alias] = canonical;
}

void Ontology::set_similarity(const std::string& a, const std::string& b, double value) {
  require_unit_interval(value, "similarity(" + a + ", " + b + ")");
  ClassId ia = require_class(a);
  ClassId ib = require_class(b);
  if (ia == ib) {
    if (value != 1.0) throw Error(Errc::SchemaError, "similarity(" + a + ", " + a + ") must be 1");
    return;
  }
  if (ia > ib) std::swap(ia, ib);
  auto [it, inserted] = explicit_.emplace(std::make_pair(ia, ib), value);
  if (!inserted && it->second != value) {
    throw Error(Errc::SchemaError, "asymmetric similarity for (" + a + ", " + b + ")");
  }
  const std::size_t n = nodes_.size();
  table_[ia * n + ib] = value;
  table_[ib * n + ia] = value;
}

void Ontology::set_default_similarity(double value) {
  require_unit_interval(value, "default_similarity");
  default_similarity_ = value;
  const std::size_t n = nodes_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (!explicit_.count(key)) table_[a * n + b] = value;
    }
  }
}

double Ontology::similarity(std::string_view a, std::string_view b) const {
  return similarity(require_class(a), require_class(b));
}

Classification Ontology::classify(std::string_view object_id) const {
  const auto hash = object_id.find('#');
  const std::string_view prefix = object_id.substr(0, hash);
  auto it = prefixes_.find(prefix);
  if (it == prefixes_.end()) {
    throw Error(Errc::UnknownClassPrefix,
                "no class rule for prefix '" + std::string(prefix) + "' of '" +
                    std::string(object_id) + "'");
  }
  const Node& node = nodes_[it->second];
  return {it->second, node.name, SemanticClass(*node.kind)};
}

std::string_view Ontology::canonical_qualifier(std::string_view name) const {
  auto it = aliases_.find(name);
  return it == aliases_.end() ? name : std::string_view(it->second);
}

bool Ontology::allows_qualifier(ClassId id, std::string_view canonical_name) const {
  for (std::optional<ClassId> cur = id; cur; cur = nodes_[*cur].parent) {
    if (nodes_[*cur].qualifiers.count(canonical_name)) return true;
  }
  return false;
}

Ontology Ontology::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("ontology is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::SchemaError, "ontology must be a JSON object");

  Ontology onto;
  try {
    // items() only references its argument, so keep these alive for the loops.
    const json prefixes = doc.value("prefixes", json::object());
    const json qualifiers = doc.value("qualifiers", json::object());
    const json aliases = doc.value("aliases", json::object());
    for (const auto& cls : doc.value("classes", json::array())) {
      onto.add_class(cls.at("name").get<std::string>(), cls.at("parent").get<std::string>());
    }
    for (const auto& [prefix, cls] : prefixes.items()) {
      onto.add_prefix(prefix, cls.get<std::string>());
    }
    for (const auto& [cls, names] : qualifiers.items()) {
      onto.add_qualifiers(cls, names.get<std::vector<std::string>>());
    }
    for (const auto& [alias, canonical] : aliases.items()) {
      onto.add_alias(alias, canonical.get<std::string>());
    }
    if (doc.contains("default_similarity")) {
      onto.set_default_similarity(doc.at("default_similarity").get<double>());
    }
    for (const auto& entry : doc.value("similarity", json::array())) {
      onto.set_similarity(entry.at("a").get<std::string>(), entry.at("b").get<std::string>(),
                          entry.at("value").get<double>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("ontology schema: ") + e.what());
  }
  return onto;
}

Ontology Ontology::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open ontology file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

const Ontology& Ontology::rcr_default() {
  static const Ontology instance = from_json(kRcrOntology);
  return instance;
}

std::string Ontology::to_json() const {
  json doc;
  doc["classes"] = json::array();
  for (std::size_t i = 8; i < nodes_.size(); ++i) {
    doc["classes"].push_back({{"name", nodes_[i].name}, {"parent", nodes_[*nodes_[i].parent].name}});
  }
  doc["prefixes"] = json::object();
  for (const auto& [prefix, id] : prefixes_) doc["prefixes"][prefix] = nodes_[id].name;
  doc["qualifiers"] = json::object();
  for (const auto& node : nodes_) {
    if (!node.qualifiers.empty()) {
      doc["qualifiers"][node.name] = std::vector<std::string>(node.qualifiers.begin(), node.qualifiers.end());
    }
  }
  doc["aliases"] = json::object();
  for (const auto& [alias, canonical] : aliases_) doc["aliases"][alias] = canonical;
  doc["similarity"] = json::array();
  for (const auto& [key, value] : explicit_) {
    doc["similarity"].push_back(
        {{"a", nodes_[key.first].name}, {"b", nodes_[key.second].name}, {"value", value}});
  }
  doc["default_similarity"] = default_similarity_;
  return doc.dump(2);
}

}  // namespace repmas
