#include "repmas/paperlike.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace repmas::scenario {

namespace {

constexpr int kWidth = 9;
constexpr int kHeight = 5;
constexpr int kSpacing = 40;
constexpr double kBrigadeReach = 10.0;

struct Keyframe {
  Cycle cycle;
  std::int64_t x;
  std::int64_t y;
};

struct ScriptedBrigade {
  std::int64_t id;
  std::int64_t water;
  std::vector<Keyframe> path;
};

struct ScriptedFire {
  std::int64_t building;
  Cycle first;
  /// Cycle reported with fieriness 8, or -1 if it never goes out.
  Cycle extinguished;
  /// Brigades nearby only start extinguishing from this cycle.
  Cycle fought_from;
};

// fieriness, inDangerNeighbours, burningNeighbours of the tracked fire, from its ignition.
struct TrackedRow {
  std::int64_t fieriness;
  std::int64_t in_danger;
  std::int64_t burning;
};

constexpr std::int64_t kTrackedBuilding = 32;
constexpr Cycle kTrackedFirst = 30;
constexpr TrackedRow kTrackedRows[] = {
    {1, 4, 0}, {1, 4, 0}, {2, 3, 1}, {2, 3, 1}, {2, 3, 1}, {3, 2, 2}, {3, 2, 2},  // 30-36
    {3, 2, 2}, {3, 2, 2}, {3, 2, 2}, {3, 2, 2}, {3, 2, 2}, {3, 2, 2}, {3, 2, 2},  // 37-43
    {2, 2, 2}, {2, 2, 1}, {1, 2, 1}, {1, 2, 1}, {8, 2, 1},                        // 44-48
};

const std::vector<ScriptedBrigade>& brigades() {
  static const std::vector<ScriptedBrigade> list = {
      {1, 100, {{5, 44, 40}, {18, 44, 40}, {22, 76, 40}, {23, 76, 40}, {38, 192, 120}, {40, 192, 120},
                {41, 181, 120}, {42, 192, 120}, {46, 192, 120}, {47, 180, 120}, {48, 180, 120},
                {59, 276, 160}}},
      {2, 90, {{5, 84, 40}, {23, 84, 40}, {37, 205, 100}, {38, 212, 108}, {39, 208, 120}, {40, 214, 120},
               {42, 214, 120}, {43, 208, 120}, {44, 214, 120}, {45, 208, 120}, {46, 214, 120},
               {47, 222, 124}, {59, 284, 160}}},
      {3, 80, {{5, 40, 84}, {14, 40, 84}, {20, 80, 76}, {28, 80, 76}, {42, 200, 136}, {43, 200, 128},
               {46, 200, 128}, {47, 200, 140}}},
      {4, 70, {{5, 124, 44}, {26, 124, 44}, {30, 84, 76}, {36, 84, 76}, {40, 120, 80}}},
  };
  return list;
}

const std::vector<ScriptedFire>& fires() {
  static const std::vector<ScriptedFire> list = {
      {10, 5, 20, 5},
      {11, 5, 26, 5},
      {20, 15, 36, 15},
      {kTrackedBuilding, kTrackedFirst, 48, 43},
      {43, 44, -1, 1000},
      {44, 52, -1, 1000},
  };
  return list;
}

Coord location(std::int64_t building) {
  return {(building % kWidth) * kSpacing, (building / kWidth) * kSpacing};
}

Coord position_at(const std::vector<Keyframe>& path, Cycle t) {
  if (t <= path.front().cycle) return {path.front().x, path.front().y};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Keyframe& a = path[i];
    const Keyframe& b = path[i + 1];
    if (t > b.cycle) continue;
    const double f = static_cast<double>(t - a.cycle) / static_cast<double>(b.cycle - a.cycle);
    return {static_cast<std::int64_t>(std::lround(a.x + f * (b.x - a.x))),
            static_cast<std::int64_t>(std::lround(a.y + f * (b.y - a.y)))};
  }
  return {path.back().x, path.back().y};
}

bool burning_at(const ScriptedFire& f, Cycle t) {
  return t >= f.first && (f.extinguished < 0 || t < f.extinguished);
}

std::vector<std::int64_t> grid_neighbours(std::int64_t b) {
  std::vector<std::int64_t> out;
  const std::int64_t col = b % kWidth;
  const std::int64_t row = b / kWidth;
  if (row > 0) out.push_back(b - kWidth);
  if (col + 1 < kWidth) out.push_back(b + 1);
  if (row + 1 < kHeight) out.push_back(b + kWidth);
  if (col > 0) out.push_back(b - 1);
  return out;
}

Fsf fire_fsf(std::int64_t building, std::int64_t fieriness, std::int64_t in_danger, std::int64_t burning,
             Cycle t) {
  Fsf f;
  f.object_id = "fire#" + std::to_string(building);
  f.class_name = "Fire";
  f.semantic = SemanticClass(Kind::Phenomenon);
  f.qualifiers = {{"fieriness", fieriness}, {"inDangerNeighbours", in_danger}, {"burningNeighbours", burning}};
  f.location = location(building);
  f.time = t;
  return f;
}

// Generic fires grow one fieriness step every 4 cycles; neighbour counts come
// from the other scripted fires.
Fsf generic_fire_fsf(const ScriptedFire& f, Cycle t) {
  const bool out = f.extinguished == t;
  const std::int64_t fieriness = out ? kExtinguishedFieriness : std::min<std::int64_t>(3, 1 + (t - f.first) / 4);
  std::int64_t burning = 0;
  std::int64_t gone = 0;
  const auto nbs = grid_neighbours(f.building);
  for (const auto& other : fires()) {
    if (std::find(nbs.begin(), nbs.end(), other.building) == nbs.end()) continue;
    if (burning_at(other, t)) ++burning;
    else if (other.extinguished >= 0 && t >= other.extinguished) ++gone;
  }
  const auto in_danger = static_cast<std::int64_t>(nbs.size()) - burning - gone;
  return fire_fsf(f.building, fieriness, in_danger, burning, t);
}

}  // namespace

PaperlikeScenario build_paperlike_scenario() {
  PaperlikeScenario sc;

  WorldSpec& w = sc.world;
  w.width = kWidth;
  w.height = kHeight;
  w.spacing = kSpacing;
  w.spread_probability = 0.0;
  w.sensing_radius = 60.0;
  w.total_cycles = sc.total_cycles;
  w.seed = 7;
  for (const auto& f : fires()) w.ignitions.push_back({f.building, std::max<Cycle>(0, f.first - 3)});
  for (const auto& b : brigades()) w.brigades.push_back({b.id, {b.path.front().x, b.path.front().y}, PatrolPolicy::Sweep});

  std::map<std::int64_t, std::int64_t> water;
  for (const auto& b : brigades()) water[b.id] = b.water;

  for (Cycle t = sc.discovery_cycle; t < sc.total_cycles; ++t) {
    TraceBatch batch{t, {}};
    for (const auto& b : brigades()) {
      const Coord pos = position_at(b.path, t);
      bool extinguishing = false;
      for (const auto& f : fires()) {
        if (burning_at(f, t) && t >= f.fought_from && distance(pos, location(f.building)) <= kBrigadeReach) {
          extinguishing = true;
        }
      }
      Fsf fsf;
      fsf.object_id = "brigade#" + std::to_string(b.id);
      fsf.class_name = "FireBrigade";
      fsf.semantic = SemanticClass(Kind::Actor);
      fsf.qualifiers = {{"extinguishing", static_cast<std::int64_t>(extinguishing ? 1 : 0)},
                        {"water", water[b.id]}};
      fsf.location = pos;
      fsf.time = t;
      batch.fsfs.push_back(std::move(fsf));
      if (extinguishing) water[b.id] = std::max<std::int64_t>(0, water[b.id] - 2);
    }
    for (const auto& f : fires()) {
      if (t < f.first || (f.extinguished >= 0 && t > f.extinguished)) continue;
      if (f.building == kTrackedBuilding) {
        const auto& row = kTrackedRows[t - kTrackedFirst];
        const Fsf fsf = fire_fsf(f.building, row.fieriness, row.in_danger, row.burning, t);
        batch.fsfs.push_back(fsf);
        if (t == kTrackedFirst) batch.fsfs.push_back(fsf);
      } else {
        batch.fsfs.push_back(generic_fire_fsf(f, t));
      }
    }
    sc.trace.push_back(std::move(batch));
  }
  return sc;
}

}  // namespace repmas::scenario
