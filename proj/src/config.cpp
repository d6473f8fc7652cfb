#include "repmas/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "repmas/error.hpp"

namespace repmas {

namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class T>
void read_opt(const json& obj, const char* key, T& field) {
  if (obj.contains(key)) field = obj.at(key).get<T>();
}

}  // namespace

atn::Params threshold_params(const Thresholds& t) {
  return {
      {"theta_ai", t.theta_ai},
      {"theta_pi", t.theta_pi},
      {"theta_dead", t.theta_dead},
      {"n_dead", static_cast<double>(t.n_dead)},
      {"extinguished_value", t.extinguished_value},
  };
}

MasConfig MasConfig::defaults() {
  MasConfig cfg;
  const auto params = threshold_params(cfg.thresholds);
  cfg.phenomenon_atn = atn::parse_atn(atn::default_fire_atn_text(), params);
  cfg.actor_atn = atn::parse_atn(atn::default_brigade_atn_text(), params);
  return cfg;
}

void MasConfig::validate() const {
  auto bad = [](const std::string& why) { throw Error(Errc::ConfigError, why); };
  if (!(creation_threshold >= -1.0 && creation_threshold <= 1.0)) bad("creation_threshold must be in [-1, 1]");
  if (!(acquaintance_prune_epsilon >= 0.0)) bad("acquaintance_prune_epsilon must be >= 0");
  if (!(fire.brigade_radius > 0.0)) bad("fire_indicators.brigade_radius must be > 0");
  if (!(brigade.radius > 0.0)) bad("brigade_indicators.radius must be > 0");
  if (!std::isfinite(proximity.temporal_rate) || !std::isfinite(proximity.spatial_rate) ||
      proximity.temporal_rate < 0 || proximity.spatial_rate < 0) {
    bad("proximity rates must be finite and >= 0");
  }
  if (!(proximity.qualifier_weight >= 0.0 && proximity.qualifier_weight <= 1.0)) {
    bad("proximity.qualifier_weight must be in [0, 1]");
  }
  if (thresholds.n_dead < 0) bad("thresholds.n_dead must be >= 0");
  if (phenomenon_atn.states.empty() || actor_atn.states.empty()) bad("both ATNs must be set");
}

EngineConfig default_engine_config() {
  return {MasConfig::defaults(), Ontology::rcr_default()};
}

EngineConfig parse_engine_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  EngineConfig out{MasConfig::defaults(), Ontology::rcr_default()};
  MasConfig& cfg = out.mas;
  std::string phenomenon_text(atn::default_fire_atn_text());
  std::string actor_text(atn::default_brigade_atn_text());
  try {
    read_opt(doc, "creation_threshold", cfg.creation_threshold);
    read_opt(doc, "acquaintance_prune_epsilon", cfg.acquaintance_prune_epsilon);
    if (doc.contains("proximity")) {
      const auto& p = doc.at("proximity");
      read_opt(p, "temporal_rate", cfg.proximity.temporal_rate);
      read_opt(p, "spatial_rate", cfg.proximity.spatial_rate);
      read_opt(p, "qualifier_weight", cfg.proximity.qualifier_weight);
    }
    if (doc.contains("fire_indicators")) {
      const auto& f = doc.at("fire_indicators");
      read_opt(f, "coefficient", cfg.fire.coefficient);
      read_opt(f, "scale", cfg.fire.scale);
      read_opt(f, "brigade_weight", cfg.fire.brigade_weight);
      read_opt(f, "brigade_radius", cfg.fire.brigade_radius);
    }
    if (doc.contains("brigade_indicators")) {
      const auto& b = doc.at("brigade_indicators");
      read_opt(b, "coefficient", cfg.brigade.coefficient);
      read_opt(b, "scale", cfg.brigade.scale);
      read_opt(b, "k1", cfg.brigade.k1);
      read_opt(b, "k2", cfg.brigade.k2);
      read_opt(b, "k3", cfg.brigade.k3);
      read_opt(b, "radius", cfg.brigade.radius);
    }
    if (doc.contains("thresholds")) {
      const auto& t = doc.at("thresholds");
      read_opt(t, "theta_ai", cfg.thresholds.theta_ai);
      read_opt(t, "theta_pi", cfg.thresholds.theta_pi);
      read_opt(t, "theta_dead", cfg.thresholds.theta_dead);
      read_opt(t, "n_dead", cfg.thresholds.n_dead);
      read_opt(t, "extinguished_value", cfg.thresholds.extinguished_value);
    }
    read_opt(doc, "responder_classes", cfg.responder_classes);
    read_opt(doc, "hazard_classes", cfg.hazard_classes);
    if (doc.contains("ontology")) {
      try {
        out.ontology = Ontology::load(base_dir / doc.at("ontology").get<std::string>());
      } catch (const Error& e) {
        throw Error(Errc::ConfigError, std::string("ontology: ") + e.what());
      }
    }
    if (doc.contains("atn")) {
      const auto& a = doc.at("atn");
      if (a.contains("phenomenon")) phenomenon_text = read_file(base_dir / a.at("phenomenon").get<std::string>());
      if (a.contains("actor")) actor_text = read_file(base_dir / a.at("actor").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("config schema: ") + e.what());
  }
  try {
    const auto params = threshold_params(cfg.thresholds);
    cfg.phenomenon_atn = atn::parse_atn(phenomenon_text, params);
    cfg.actor_atn = atn::parse_atn(actor_text, params);
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, std::string("ATN: ") + e.what());
  }
  for (const auto& names : {cfg.responder_classes, cfg.hazard_classes}) {
    for (const auto& name : names) {
      if (!out.ontology.find_class(name)) {
        throw Error(Errc::ConfigError, "class '" + name + "' is not in the ontology");
      }
    }
  }
  cfg.validate();
  return out;
}

EngineConfig load_engine_config(const std::filesystem::path& path) {
  try {
    return parse_engine_config(read_file(path), path.parent_path());
  } catch (const Error& e) {
    if (e.code() == Errc::ConfigError) throw;
    throw Error(Errc::ConfigError, path.string() + ": " + e.what());
  }
}

}  // namespace repmas
