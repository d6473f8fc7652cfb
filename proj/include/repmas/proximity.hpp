#pragma once

#include "repmas/fsf.hpp"
#include "repmas/ontology.hpp"

namespace repmas {

/// Rates of the temporal and spatial kernels, and the weight λ of the
/// class-similarity term in the semantic proximity.
struct ProximityParams {
  double temporal_rate = 0.2;
  double spatial_rate = 0.08;
  double qualifier_weight = 0.5;
};

struct ProximityBreakdown {
  double semantic = 0.0;
  double temporal = 0.0;
  double spatial = 0.0;
  double total = 0.0;

  friend bool operator==(const ProximityBreakdown&, const ProximityBreakdown&) = default;
};

/// 4·e^(−rΔ) / (1 + e^(−rΔ))². Equals 1 at Δ = 0 and decays to 0; the sign of
/// Δ is ignored. Throws NonFiniteInput for NaN/inf.
double proximity_kernel(double delta, double rate);

/// Δt in cycles.
inline double temporal_proximity(double delta_t, double rate = ProximityParams{}.temporal_rate) {
  return proximity_kernel(delta_t, rate);
}

/// Δe in world units (Euclidean distance between locations).
inline double spatial_proximity(double delta_e, double rate = ProximityParams{}.spatial_rate) {
  return proximity_kernel(delta_e, rate);
}

/// Fraction of the qualifier names carried by both FSFs whose values agree.
/// 1 when they share no qualifier name.
double qualifier_agreement(const Fsf& a, const Fsf& b) noexcept;

/// 1 for the same object. Otherwise S·(λ + (1 − λ)·J), where S is the
/// ontology's class similarity and J the qualifier agreement.
double semantic_proximity(const Fsf& a, const Fsf& b, const Ontology& ontology,
                          double qualifier_weight = ProximityParams{}.qualifier_weight);

/// Same as above with both class ids already resolved.
double semantic_proximity(const Fsf& a, ClassId class_a, const Fsf& b, ClassId class_b,
                          const Ontology& ontology, double qualifier_weight);

ProximityBreakdown total_proximity(const Fsf& a, const Fsf& b, const Ontology& ontology,
                                   const ProximityParams& params = {});

ProximityBreakdown total_proximity(const Fsf& a, ClassId class_a, const Fsf& b, ClassId class_b,
                                   const Ontology& ontology, const ProximityParams& params);

}  // namespace repmas
