#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "repmas/fsf.hpp"
#include "repmas/rng.hpp"

namespace repmas::scenario {

using Cycle = std::int64_t;

enum class PatrolPolicy { Stationary, Sweep, RandomWalk };

struct BrigadeSpec {
  std::int64_t id = 0;
  Coord start;
  PatrolPolicy patrol = PatrolPolicy::Stationary;
};

struct Ignition {
  std::int64_t building = 0;
  Cycle cycle = 0;
};

/// Toy fire world: a width × height grid of buildings `spacing` units apart;
/// building b sits at ((b % width)·spacing, (b / width)·spacing) and its
/// fire is reported as `fire#b`.
struct WorldSpec {
  int width = 10;
  int height = 10;
  int spacing = 40;
  std::vector<Ignition> ignitions;
  std::vector<BrigadeSpec> brigades;
  double spread_probability = 0.05;
  /// Fieriness units removed per cycle by each extinguishing brigade.
  double extinguish_rate = 0.5;
  /// Fieriness gained per cycle by a burning building.
  double growth_rate = 0.25;
  double max_fieriness = 3.0;
  /// Per-axis movement per cycle.
  int brigade_speed = 8;
  double sensing_radius = 60.0;
  double extinguish_range = 6.0;
  std::uint64_t seed = 1;
  Cycle total_cycles = 100;

  /// Throws Error{ConfigError}.
  void validate() const;
};

WorldSpec parse_world_spec(const std::string& json_text);
WorldSpec load_world_spec(const std::filesystem::path& path);
std::string world_spec_to_json(const WorldSpec& spec);

/// Fieriness reported for a building that has been put out.
inline constexpr std::int64_t kExtinguishedFieriness = 8;

/// Mutable world state. Each call to tick() advances one cycle:
///
///  1. Brigades act in id order. A brigade drops a target that stopped
///     burning, then picks the nearest discovered burning building within
///     sensing range (ties: lowest id). With a target it moves toward its
///     slot next to the fire (at most `brigade_speed` per axis) and, once
///     within `extinguish_range`, lowers the fire by `extinguish_rate`; a
///     fire at or below 0 is extinguished. Without a target it patrols.
///  2. Ignitions scheduled for this cycle light intact buildings at 1.
///  3. Fires burning before this cycle grow by `growth_rate` (capped).
///  4. Each such fire, in building order, tries its N, E, S, W intact
///     neighbours; each try draws one uniform and ignites on u < p.
///  5. Burning buildings within sensing range of a brigade become discovered.
///  6. Emission: one FSF per brigade (id order), then one per discovered
///     building that is burning or was extinguished this cycle.
class World {
 public:
  explicit World(WorldSpec spec);

  /// Advances to `cycle` (must equal next_cycle()) and returns its FSFs.
  std::vector<Fsf> tick(Cycle cycle);

  const WorldSpec& spec() const noexcept { return spec_; }
  Cycle next_cycle() const noexcept { return next_cycle_; }

  Coord building_location(std::int64_t building) const;
  bool burning(std::int64_t building) const { return buildings_.at(building).status == Status::Burning; }
  bool extinguished(std::int64_t building) const {
    return buildings_.at(building).status == Status::Extinguished;
  }
  int burning_neighbours(std::int64_t building) const;
  int intact_neighbours(std::int64_t building) const;
  Coord brigade_position(std::size_t index) const { return brigades_.at(index).pos; }

 private:
  enum class Status { Intact, Burning, Extinguished };

  struct Building {
    Status status = Status::Intact;
    double intensity = 0.0;
    bool discovered = false;
    Cycle ignited = 0;
    Cycle extinguished_at = -1;
  };

  struct Brigade {
    std::int64_t id = 0;
    std::size_t slot = 0;
    Coord pos;
    PatrolPolicy policy = PatrolPolicy::Stationary;
    std::optional<std::int64_t> target;
    bool extinguishing = false;
    int sweep_dir = 1;
  };

  std::vector<std::int64_t> neighbours(std::int64_t building) const;
  void act(Brigade& b, Cycle cycle);
  void patrol(Brigade& b);
  Fsf fire_fsf(std::int64_t building, Cycle cycle) const;

  WorldSpec spec_;
  Rng rng_;
  std::vector<Building> buildings_;
  std::vector<Brigade> brigades_;
  Cycle next_cycle_ = 0;
  Coord max_corner_;
};

inline std::vector<Fsf> tick_world(World& world, Cycle cycle) { return world.tick(cycle); }

}  // namespace repmas::scenario
