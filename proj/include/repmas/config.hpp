#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "repmas/atn.hpp"
#include "repmas/ontology.hpp"
#include "repmas/proximity.hpp"

namespace repmas {

/// PI = scale·exp(−coefficient·x) + p for fires, with
/// x = burningNeighbours + fieriness + lifeTime − brigade_weight·nbFireBrigades,
/// brigades counted within `brigade_radius` world units.
struct FireIndicatorParams {
  double coefficient = 0.05;
  double scale = 10.0;
  double brigade_weight = 5.0;
  double brigade_radius = 10.0;
};

/// Same exponential form for responders, with
/// y = k1·idleCycles − k2·activeFiresInRadius − k3·[extinguishing].
struct BrigadeIndicatorParams {
  double coefficient = 0.05;
  double scale = 10.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double k3 = 5.0;
  double radius = 10.0;
};

/// Values bound to the `$name` parameters of ATN guards.
struct Thresholds {
  double theta_ai = 2.0;
  double theta_pi = 5.0;
  double theta_dead = 1.0;
  int n_dead = 3;
  double extinguished_value = 8.0;
};

atn::Params threshold_params(const Thresholds& t);

struct MasConfig {
  double creation_threshold = 0.3;
  double acquaintance_prune_epsilon = 0.01;
  ProximityParams proximity;
  FireIndicatorParams fire;
  BrigadeIndicatorParams brigade;
  Thresholds thresholds;
  /// Actor classes counted as nbFireBrigades around a fire.
  std::vector<std::string> responder_classes{"FireBrigade"};
  /// Phenomenon classes counted as active fires around a responder.
  std::vector<std::string> hazard_classes{"Fire"};
  atn::AtnSpec phenomenon_atn;
  atn::AtnSpec actor_atn;

  /// Built-in defaults, with the default ATNs bound to `thresholds`.
  static MasConfig defaults();

  /// Throws Error{ConfigError} on an out-of-range value.
  void validate() const;
};

/// Everything a run needs besides the observations.
struct EngineConfig {
  MasConfig mas;
  Ontology ontology;
};

/// Loads a JSON config. Relative paths inside it (ontology, ATN files) are
/// resolved against the config file's directory; omitted ones fall back to
/// the built-in defaults. See data/config/default.json.
EngineConfig load_engine_config(const std::filesystem::path& path);
EngineConfig parse_engine_config(const std::string& json_text, const std::filesystem::path& base_dir);
EngineConfig default_engine_config();

}  // namespace repmas
