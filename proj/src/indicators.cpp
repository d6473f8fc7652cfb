#include "repmas/indicators.hpp"

#include <cmath>

#include "repmas/error.hpp"

namespace repmas {

IndicatorUpdate update_indicators_fire(double ai, const Fsf& fsf, std::int64_t lifetime,
                                       int brigades_nearby, double p,
                                       const FireIndicatorParams& params) {
  const auto burning = fsf.number("burningNeighbours");
  const auto fieriness = fsf.number("fieriness");
  if (!burning || !fieriness) {
    throw Error(Errc::MissingQualifier,
                fsf.object_id + " needs numeric burningNeighbours and fieriness qualifiers");
  }
  IndicatorUpdate u;
  u.x = *burning + *fieriness + static_cast<double>(lifetime) -
        params.brigade_weight * static_cast<double>(brigades_nearby);
  u.ai = ai + p;
  u.pi = plausibility(u.x, p, params.scale, params.coefficient);
  return u;
}

IndicatorUpdate update_indicators_brigade(double ai, const BrigadeContext& ctx, double p,
                                          const BrigadeIndicatorParams& params) {
  IndicatorUpdate u;
  u.x = params.k1 * static_cast<double>(ctx.idle_cycles) -
        params.k2 * static_cast<double>(ctx.active_fires_in_radius) -
        params.k3 * (ctx.extinguishing ? 1.0 : 0.0);
  u.ai = ai + p;
  u.pi = plausibility(u.x, p, params.scale, params.coefficient);
  return u;
}

}  // namespace repmas
