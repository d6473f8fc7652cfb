#include "repmas/proximity.hpp"

#include <cmath>
#include <string>

#include "repmas/error.hpp"

namespace repmas {

double proximity_kernel(double delta, double rate) {
  if (!std::isfinite(delta) || !std::isfinite(rate)) {
    throw Error(Errc::NonFiniteInput, "proximity input " + std::to_string(delta) + " is not finite");
  }
  const double e = std::exp(-rate * std::abs(delta));
  const double denom = 1.0 + e;
  return 4.0 * e / (denom * denom);
}

double qualifier_agreement(const Fsf& a, const Fsf& b) noexcept {
  int shared = 0;
  int equal = 0;
  for (const auto& qa : a.qualifiers) {
    const auto* qb = b.find(qa.name);
    if (!qb) continue;
    ++shared;
    if (values_equal(qa.value, qb->value)) ++equal;
  }
  return shared == 0 ? 1.0 : static_cast<double>(equal) / shared;
}

double semantic_proximity(const Fsf& a, ClassId class_a, const Fsf& b, ClassId class_b,
                          const Ontology& ontology, double qualifier_weight) {
  if (a.object_id == b.object_id) return 1.0;
  const double s = ontology.similarity(class_a, class_b);
  if (s == 0.0) return 0.0;
  return s * (qualifier_weight + (1.0 - qualifier_weight) * qualifier_agreement(a, b));
}

double semantic_proximity(const Fsf& a, const Fsf& b, const Ontology& ontology,
                          double qualifier_weight) {
  const ClassId ca = ontology.classify(a.object_id).id;
  const ClassId cb = ontology.classify(b.object_id).id;
  return semantic_proximity(a, ca, b, cb, ontology, qualifier_weight);
}

ProximityBreakdown total_proximity(const Fsf& a, ClassId class_a, const Fsf& b, ClassId class_b,
                                   const Ontology& ontology, const ProximityParams& params) {
  ProximityBreakdown p;
  p.semantic = semantic_proximity(a, class_a, b, class_b, ontology, params.qualifier_weight);
  p.temporal = temporal_proximity(static_cast<double>(a.time - b.time), params.temporal_rate);
  p.spatial = spatial_proximity(distance(a.location, b.location), params.spatial_rate);
  p.total = p.semantic * p.temporal * p.spatial;
  return p;
}

ProximityBreakdown total_proximity(const Fsf& a, const Fsf& b, const Ontology& ontology,
                                   const ProximityParams& params) {
  const ClassId ca = ontology.classify(a.object_id).id;
  const ClassId cb = ontology.classify(b.object_id).id;
  return total_proximity(a, ca, b, cb, ontology, params);
}

}  // namespace repmas
