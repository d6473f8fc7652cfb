#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "repmas/error.hpp"
#include "repmas/proximity.hpp"
#include "support.hpp"

using namespace repmas;

namespace {

// 4e^{-rΔ}/(1+e^{-rΔ})² rewritten as sech²(rΔ/2).
double sech2_oracle(double delta, double rate) {
  const double c = std::cosh(rate * delta / 2.0);
  return 1.0 / (c * c);
}

const Ontology& onto() { return Ontology::rcr_default(); }

Fsf fire(const std::string& id, std::vector<QualifierValue> q, Coord at, std::int64_t t) {
  Fsf f;
  f.object_id = id;
  f.class_name = "Fire";
  f.semantic = SemanticClass(Kind::Phenomenon);
  f.qualifiers = std::move(q);
  f.location = at;
  f.time = t;
  return f;
}

}  // namespace

TEST(Kernel, IdentityAtZero) {
  EXPECT_EQ(temporal_proximity(0.0), 1.0);
  EXPECT_EQ(spatial_proximity(0.0), 1.0);
}

TEST(Kernel, WorkedValues) {
  EXPECT_NEAR(temporal_proximity(5.0), 0.786448, 1e-5);
  EXPECT_NEAR(temporal_proximity(10.0), 0.419974, 1e-5);
  EXPECT_NEAR(spatial_proximity(25.0), 0.419974, 1e-5);
  EXPECT_NEAR(spatial_proximity(25.0), temporal_proximity(10.0), 1e-15);
}

TEST(Kernel, MatchesSech2Oracle) {
  testsupport::Gen g(1);
  for (int i = 0; i < 10000; ++i) {
    const double d = testsupport::real_in(g, 0.0, 400.0);
    ASSERT_NEAR(temporal_proximity(d), sech2_oracle(d, 0.2), 1e-12) << d;
    ASSERT_NEAR(spatial_proximity(d), sech2_oracle(d, 0.08), 1e-12) << d;
  }
}

TEST(Kernel, NegativeDeltaIsAbsoluteValued) {
  EXPECT_EQ(temporal_proximity(-3.0), temporal_proximity(3.0));
}

TEST(Kernel, StrictlyDecreasingInUnitInterval) {
  testsupport::Gen g(2);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = testsupport::real_in(g, 0.0, 60.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = temporal_proximity(xs[i]);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    if (xs[i] > 0.0) ASSERT_LT(v, 1.0);
    if (i > 0) ASSERT_LT(v, temporal_proximity(xs[i - 1])) << xs[i - 1] << " " << xs[i];
  }
}

TEST(Kernel, RejectsNonFinite) {
  try {
    temporal_proximity(std::nan(""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteInput);
  }
  EXPECT_THROW(spatial_proximity(INFINITY), Error);
}

TEST(Semantic, SameObjectIsOne) {
  const auto a = fire("fire#14", {{"fieriness", std::int64_t{1}}}, {0, 0}, 0);
  const auto b = fire("fire#14", {{"fieriness", std::int64_t{3}}}, {9, 9}, 4);
  EXPECT_EQ(semantic_proximity(a, b, onto()), 1.0);
}

TEST(Semantic, DifferentFiresNoSharedValues) {
  // Same class (similarity 1), qualifiers shared but all disagree: 1 * (0.5 + 0.5 * 0).
  const auto a = fire("fire#14", {{"fieriness", std::int64_t{1}}, {"burningNeighbours", std::int64_t{2}}}, {0, 0}, 0);
  const auto b = fire("fire#15", {{"fieriness", std::int64_t{2}}, {"burningNeighbours", std::int64_t{0}}}, {0, 0}, 0);
  EXPECT_DOUBLE_EQ(semantic_proximity(a, b, onto()), 0.5);
}

TEST(Semantic, CustomTableAgainstStraightLineOracle) {
  auto doc = nlohmann::json::parse(Ontology::rcr_default().to_json());
  for (auto& e : doc["similarity"]) {
    const bool pair = (e["a"] == "Fire" && e["b"] == "FireBrigade") || (e["a"] == "FireBrigade" && e["b"] == "Fire");
    if (pair) e["value"] = 0.8;
  }
  const Ontology o = Ontology::from_json(doc.dump());
  ASSERT_DOUBLE_EQ(o.similarity("FireBrigade", "Fire"), 0.8);
  testsupport::Gen g(3);
  for (int i = 0; i < 2000; ++i) {
    Fsf a = testsupport::random_fsf(g, true);
    Fsf b = testsupport::random_fsf(g, true);
    const double lambda = testsupport::real_in(g, 0.0, 1.0);

    double expected = 1.0;
    if (a.object_id != b.object_id) {
      const double s = o.similarity(a.class_name, b.class_name);
      int shared = 0, agree = 0;
      for (const auto& qa : a.qualifiers) {
        for (const auto& qb : b.qualifiers) {
          if (qa.name != qb.name) continue;
          ++shared;
          if (values_equal(qa.value, qb.value)) ++agree;
        }
      }
      const double j = shared == 0 ? 1.0 : static_cast<double>(agree) / shared;
      expected = s * (lambda + (1.0 - lambda) * j);
    }
    ASSERT_NEAR(semantic_proximity(a, b, o, lambda), expected, 1e-15);
  }
  const auto f = fire("fire#14", {{"fieriness", std::int64_t{1}}}, {0, 0}, 0);
  Fsf br;
  br.object_id = "brigade#3";
  br.class_name = "FireBrigade";
  br.semantic = SemanticClass(Kind::Actor);
  EXPECT_DOUBLE_EQ(semantic_proximity(f, br, o), 0.8);
}

TEST(Total, IdenticalIsAllOnes) {
  const auto a = fire("fire#14", {{"fieriness", std::int64_t{1}}}, {20, 25}, 7);
  EXPECT_EQ(total_proximity(a, a, onto()), (ProximityBreakdown{1, 1, 1, 1}));
}

TEST(Total, SameObjectFiveCyclesApart) {
  const auto a = fire("fire#14", {}, {20, 25}, 7);
  const auto b = fire("fire#14", {}, {20, 25}, 12);
  EXPECT_NEAR(total_proximity(a, b, onto()).total, 0.786448, 1e-5);
}

TEST(Total, ProductRuleSymmetryBounds) {
  testsupport::Gen g(4);
  for (int i = 0; i < 10000; ++i) {
    const Fsf a = testsupport::random_fsf(g);
    const Fsf b = testsupport::random_fsf(g);
    const auto ab = total_proximity(a, b, onto());
    const auto ba = total_proximity(b, a, onto());
    ASSERT_NEAR(ab.total, ab.semantic * ab.temporal * ab.spatial, 1e-12);
    ASSERT_EQ(ab, ba);
    ASSERT_GE(ab.total, -1.0);
    ASSERT_LE(ab.total, 1.0);
    ASSERT_LE(std::abs(ab.total), std::abs(ab.semantic) + 1e-15);
    ASSERT_LE(std::abs(ab.total), std::min(ab.temporal, ab.spatial) + 1e-15);
    ASSERT_EQ(semantic_proximity(a, a, onto()), 1.0);
  }
}
