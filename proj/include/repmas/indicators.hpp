#pragma once

#include <cmath>
#include <cstdint>

#include "repmas/config.hpp"
#include "repmas/fsf.hpp"

namespace repmas {

struct IndicatorUpdate {
  double ai = 0.0;
  double pi = 0.0;
  /// Argument of the exponential term (x for fires, y for responders).
  double x = 0.0;
};

inline double plausibility(double x, double p, double scale, double coefficient) {
  return scale * std::exp(-coefficient * x) + p;
}

/// AI' = AI + p; PI' = 10·exp(−0.05·x) + p with
/// x = burningNeighbours + fieriness + lifeTime − 5·brigades (default params).
/// Throws MissingQualifier when `fsf` lacks burningNeighbours or fieriness.
IndicatorUpdate update_indicators_fire(double ai, const Fsf& fsf, std::int64_t lifetime,
                                       int brigades_nearby, double p,
                                       const FireIndicatorParams& params = {});

struct BrigadeContext {
  int active_fires_in_radius = 0;
  bool extinguishing = false;
  std::int64_t idle_cycles = 0;
};

/// AI' = AI + p; PI' = 10·exp(−0.05·y) + p with y = k1·idle − k2·fires − k3·[extinguishing].
IndicatorUpdate update_indicators_brigade(double ai, const BrigadeContext& ctx, double p,
                                          const BrigadeIndicatorParams& params = {});

}  // namespace repmas
