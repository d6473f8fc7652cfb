#include "repmas/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "repmas/error.hpp"

namespace repmas::scenario {

namespace {

using json = nlohmann::json;

constexpr std::string_view kPolicyNames[] = {"stationary", "sweep", "random_walk"};

PatrolPolicy policy_from(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kPolicyNames); ++i) {
    if (kPolicyNames[i] == name) return static_cast<PatrolPolicy>(i);
  }
  throw Error(Errc::ConfigError, "unknown patrol policy '" + name + "'");
}

std::int64_t step_toward(std::int64_t from, std::int64_t to, std::int64_t max_step) {
  const std::int64_t d = std::clamp(to - from, -max_step, max_step);
  return from + d;
}

}  // namespace

void WorldSpec::validate() const {
  auto bad = [](const std::string& why) { throw Error(Errc::ConfigError, "world: " + why); };
  if (width <= 0 || height <= 0) bad("grid must be at least 1x1");
  if (spacing <= 0) bad("spacing must be > 0");
  if (!(spread_probability >= 0.0 && spread_probability <= 1.0)) bad("spread_probability must be in [0, 1]");
  if (!(extinguish_rate >= 0.0)) bad("extinguish_rate must be >= 0");
  if (!(growth_rate >= 0.0)) bad("growth_rate must be >= 0");
  if (!(max_fieriness >= 1.0 && max_fieriness < kExtinguishedFieriness)) bad("max_fieriness must be in [1, 8)");
  if (brigade_speed < 0) bad("brigade_speed must be >= 0");
  if (!(sensing_radius >= 0.0) || !(extinguish_range >= 0.0)) bad("radii must be >= 0");
  if (total_cycles < 0) bad("total_cycles must be >= 0");
  const std::int64_t n = static_cast<std::int64_t>(width) * height;
  for (const auto& ig : ignitions) {
    if (ig.building < 0 || ig.building >= n) bad("ignition building " + std::to_string(ig.building) + " off the grid");
    if (ig.cycle < 0 || ig.cycle >= total_cycles) {
      bad("ignition cycle " + std::to_string(ig.cycle) + " outside [0, total_cycles)");
    }
  }
  for (std::size_t i = 0; i < brigades.size(); ++i) {
    for (std::size_t j = i + 1; j < brigades.size(); ++j) {
      if (brigades[i].id == brigades[j].id) bad("duplicate brigade id " + std::to_string(brigades[i].id));
    }
  }
}

WorldSpec parse_world_spec(const std::string& json_text) {
  WorldSpec spec;
  try {
    const json doc = json::parse(json_text);
    spec.width = doc.value("width", spec.width);
    spec.height = doc.value("height", spec.height);
    spec.spacing = doc.value("spacing", spec.spacing);
    spec.spread_probability = doc.value("spread_probability", spec.spread_probability);
    spec.extinguish_rate = doc.value("extinguish_rate", spec.extinguish_rate);
    spec.growth_rate = doc.value("growth_rate", spec.growth_rate);
    spec.max_fieriness = doc.value("max_fieriness", spec.max_fieriness);
    spec.brigade_speed = doc.value("brigade_speed", spec.brigade_speed);
    spec.sensing_radius = doc.value("sensing_radius", spec.sensing_radius);
    spec.extinguish_range = doc.value("extinguish_range", spec.extinguish_range);
    spec.seed = doc.value("seed", spec.seed);
    spec.total_cycles = doc.value("total_cycles", spec.total_cycles);
    for (const auto& ig : doc.value("ignitions", json::array())) {
      spec.ignitions.push_back({ig.at("building").get<std::int64_t>(), ig.at("cycle").get<Cycle>()});
    }
    for (const auto& b : doc.value("brigades", json::array())) {
      BrigadeSpec bs;
      bs.id = b.at("id").get<std::int64_t>();
      bs.start = {b.at("x").get<std::int64_t>(), b.at("y").get<std::int64_t>()};
      bs.patrol = policy_from(b.value("patrol", std::string("stationary")));
      spec.brigades.push_back(bs);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("world spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

WorldSpec load_world_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open world spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_world_spec(buf.str());
}

std::string world_spec_to_json(const WorldSpec& spec) {
  nlohmann::ordered_json doc;
  doc["width"] = spec.width;
  doc["height"] = spec.height;
  doc["spacing"] = spec.spacing;
  doc["spread_probability"] = spec.spread_probability;
  doc["extinguish_rate"] = spec.extinguish_rate;
  doc["growth_rate"] = spec.growth_rate;
  doc["max_fieriness"] = spec.max_fieriness;
  doc["brigade_speed"] = spec.brigade_speed;
  doc["sensing_radius"] = spec.sensing_radius;
  doc["extinguish_range"] = spec.extinguish_range;
  doc["seed"] = spec.seed;
  doc["total_cycles"] = spec.total_cycles;
  doc["ignitions"] = nlohmann::ordered_json::array();
  for (const auto& ig : spec.ignitions) {
    doc["ignitions"].push_back({{"building", ig.building}, {"cycle", ig.cycle}});
  }
  doc["brigades"] = nlohmann::ordered_json::array();
  for (const auto& b : spec.brigades) {
    doc["brigades"].push_back({{"id", b.id},
                               {"x", b.start.x},
                               {"y", b.start.y},
                               {"patrol", kPolicyNames[static_cast<int>(b.patrol)]}});
  }
  return doc.dump(2);
}

World::World(WorldSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
  spec_.validate();
  buildings_.resize(static_cast<std::size_t>(spec_.width) * spec_.height);
  max_corner_ = {static_cast<std::int64_t>(spec_.width - 1) * spec_.spacing,
                 static_cast<std::int64_t>(spec_.height - 1) * spec_.spacing};
  std::vector<BrigadeSpec> sorted = spec_.brigades;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Brigade b;
    b.id = sorted[i].id;
    b.slot = i;
    b.pos = sorted[i].start;
    b.policy = sorted[i].patrol;
    brigades_.push_back(b);
  }
}

Coord World::building_location(std::int64_t building) const {
  return {(building % spec_.width) * spec_.spacing, (building / spec_.width) * spec_.spacing};
}

std::vector<std::int64_t> World::neighbours(std::int64_t b) const {
  std::vector<std::int64_t> out;
  const std::int64_t col = b % spec_.width;
  const std::int64_t row = b / spec_.width;
  if (row > 0) out.push_back(b - spec_.width);             // N
  if (col + 1 < spec_.width) out.push_back(b + 1);         // E
  if (row + 1 < spec_.height) out.push_back(b + spec_.width);  // S
  if (col > 0) out.push_back(b - 1);                       // W
  return out;
}

int World::burning_neighbours(std::int64_t building) const {
  int n = 0;
  for (auto nb : neighbours(building)) n += buildings_[nb].status == Status::Burning ? 1 : 0;
  return n;
}

int World::intact_neighbours(std::int64_t building) const {
  int n = 0;
  for (auto nb : neighbours(building)) n += buildings_[nb].status == Status::Intact ? 1 : 0;
  return n;
}

void World::patrol(Brigade& b) {
  const std::int64_t speed = spec_.brigade_speed;
  switch (b.policy) {
    case PatrolPolicy::Stationary:
      return;
    case PatrolPolicy::Sweep: {
      std::int64_t x = b.pos.x + b.sweep_dir * speed;
      if (x < 0 || x > max_corner_.x) {
        x = std::clamp<std::int64_t>(x, 0, max_corner_.x);
        b.sweep_dir = -b.sweep_dir;
        b.pos.y += spec_.spacing;
        if (b.pos.y > max_corner_.y) b.pos.y = 0;
      }
      b.pos.x = x;
      return;
    }
    case PatrolPolicy::RandomWalk: {
      const auto dir = rng_.below(4);
      const std::int64_t dx[] = {0, speed, 0, -speed};
      const std::int64_t dy[] = {-speed, 0, speed, 0};
      b.pos.x = std::clamp<std::int64_t>(b.pos.x + dx[dir], 0, max_corner_.x);
      b.pos.y = std::clamp<std::int64_t>(b.pos.y + dy[dir], 0, max_corner_.y);
      return;
    }
  }
}

void World::act(Brigade& b, Cycle cycle) {
  b.extinguishing = false;
  if (b.target && buildings_[*b.target].status != Status::Burning) b.target.reset();
  if (!b.target) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < buildings_.size(); ++i) {
      const auto& bd = buildings_[i];
      if (bd.status != Status::Burning || !bd.discovered) continue;
      const double d = distance(b.pos, building_location(static_cast<std::int64_t>(i)));
      if (d <= spec_.sensing_radius && d < best) {
        best = d;
        b.target = static_cast<std::int64_t>(i);
      }
    }
  }
  if (!b.target) {
    patrol(b);
    return;
  }

  // Each brigade gets its own slot around the fire: W, E, N, S.
  const Coord fire = building_location(*b.target);
  const std::int64_t off = static_cast<std::int64_t>(spec_.extinguish_range / 2.0);
  const std::int64_t ox[] = {-off, off, 0, 0};
  const std::int64_t oy[] = {0, 0, -off, off};
  const Coord slot{fire.x + ox[b.slot % 4], fire.y + oy[b.slot % 4]};
  b.pos = {step_toward(b.pos.x, slot.x, spec_.brigade_speed), step_toward(b.pos.y, slot.y, spec_.brigade_speed)};

  if (distance(b.pos, fire) <= spec_.extinguish_range) {
    b.extinguishing = true;
    Building& bd = buildings_[*b.target];
    bd.intensity -= spec_.extinguish_rate;
    if (bd.intensity <= 0.0) {
      bd.intensity = 0.0;
      bd.status = Status::Extinguished;
      bd.extinguished_at = cycle;
    }
  }
}

Fsf World::fire_fsf(std::int64_t building, Cycle cycle) const {
  const Building& bd = buildings_[building];
  std::int64_t fieriness = kExtinguishedFieriness;
  if (bd.status == Status::Burning) {
    fieriness = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(bd.intensity)), 1,
                                         static_cast<std::int64_t>(spec_.max_fieriness));
  }
  Fsf f;
  f.object_id = "fire#" + std::to_string(building);
  f.class_name = "Fire";
  f.semantic = SemanticClass(Kind::Phenomenon);
  f.qualifiers = {
      {"fieriness", fieriness},
      {"inDangerNeighbours", static_cast<std::int64_t>(intact_neighbours(building))},
      {"burningNeighbours", static_cast<std::int64_t>(burning_neighbours(building))},
  };
  f.location = building_location(building);
  f.time = cycle;
  return f;
}

std::vector<Fsf> World::tick(Cycle cycle) {
  if (cycle != next_cycle_) {
    throw Error(Errc::StaleFsf, "world expected cycle " + std::to_string(next_cycle_) + ", got " +
                                    std::to_string(cycle));
  }

  for (auto& b : brigades_) act(b, cycle);

  for (const auto& ig : spec_.ignitions) {
    if (ig.cycle != cycle) continue;
    Building& bd = buildings_[ig.building];
    if (bd.status != Status::Intact) continue;
    bd.status = Status::Burning;
    bd.intensity = 1.0;
    bd.ignited = cycle;
  }

  std::vector<std::int64_t> older;
  for (std::size_t i = 0; i < buildings_.size(); ++i) {
    if (buildings_[i].status == Status::Burning && buildings_[i].ignited < cycle) {
      older.push_back(static_cast<std::int64_t>(i));
    }
  }
  for (auto i : older) {
    Building& bd = buildings_[i];
    bd.intensity = std::min(spec_.max_fieriness, bd.intensity + spec_.growth_rate);
  }
  std::vector<std::int64_t> lit;
  for (auto i : older) {
    for (auto nb : neighbours(i)) {
      if (buildings_[nb].status != Status::Intact) continue;
      if (rng_.uniform() < spec_.spread_probability) lit.push_back(nb);
    }
  }
  for (auto nb : lit) {
    Building& bd = buildings_[nb];
    if (bd.status != Status::Intact) continue;
    bd.status = Status::Burning;
    bd.intensity = 1.0;
    bd.ignited = cycle;
  }

  for (std::size_t i = 0; i < buildings_.size(); ++i) {
    Building& bd = buildings_[i];
    if (bd.status != Status::Burning || bd.discovered) continue;
    const Coord loc = building_location(static_cast<std::int64_t>(i));
    for (const auto& b : brigades_) {
      if (distance(b.pos, loc) <= spec_.sensing_radius) {
        bd.discovered = true;
        break;
      }
    }
  }

  std::vector<Fsf> out;
  for (const auto& b : brigades_) {
    Fsf f;
    f.object_id = "brigade#" + std::to_string(b.id);
    f.class_name = "FireBrigade";
    f.semantic = SemanticClass(Kind::Actor);
    f.qualifiers = {{"extinguishing", static_cast<std::int64_t>(b.extinguishing ? 1 : 0)}};
    f.location = b.pos;
    f.time = cycle;
    out.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < buildings_.size(); ++i) {
    const Building& bd = buildings_[i];
    if (!bd.discovered) continue;
    if (bd.status == Status::Burning || (bd.status == Status::Extinguished && bd.extinguished_at == cycle)) {
      out.push_back(fire_fsf(static_cast<std::int64_t>(i), cycle));
    }
  }
  ++next_cycle_;
  return out;
}

}  // namespace repmas::scenario
