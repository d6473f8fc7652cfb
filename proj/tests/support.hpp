// Shared generators for the property tests. Everything is driven by a seeded
// mt19937_64 so failures reproduce.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "repmas/fsf.hpp"
#include "repmas/ontology.hpp"

namespace testsupport {

using Gen = std::mt19937_64;

inline std::int64_t int_in(Gen& g, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(g);
}

inline double real_in(Gen& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline repmas::Value random_value(Gen& g) {
  switch (int_in(g, 0, 5)) {
    case 0:
    case 1:
      return int_in(g, -1000, 1000);
    case 2: {
      // Mix short decimals, large and tiny magnitudes.
      const double mant = real_in(g, -10.0, 10.0);
      return mant * std::pow(10.0, static_cast<double>(int_in(g, -8, 12)));
    }
    case 3:
      return repmas::Coord{int_in(g, -500, 500), int_in(g, -500, 500)};
    case 4: {
      static const char* words[] = {"low", "high", "n/a", "burnt_out", "x-1", "A7"};
      return repmas::Symbol(words[int_in(g, 0, 5)]);
    }
    default:
      return static_cast<std::int64_t>(int_in(g, 0, 3));
  }
}

struct Kindling {
  const char* prefix;
  const char* class_name;
  repmas::Kind kind;
  std::vector<std::string> vocab;
};

inline const std::vector<Kindling>& rcr_entities() {
  static const std::vector<Kindling> list = {
      {"fire", "Fire", repmas::Kind::Phenomenon, {"fieriness", "inDangerNeighbours", "burningNeighbours"}},
      {"brigade", "FireBrigade", repmas::Kind::Actor,
       {"extinguishing", "water", "removed", "hp", "damage", "buriedness"}},
      {"building", "Building", repmas::Kind::Object, {"fieriness", "floors", "brokenness"}},
      {"civilian", "Civilian", repmas::Kind::Actor, {"hp", "damage", "buriedness"}},
  };
  return list;
}

/// A valid FSF under the default ontology, with arbitrary qualifier values.
inline repmas::Fsf random_fsf(Gen& g, bool numeric_only = false) {
  const auto& e = rcr_entities()[int_in(g, 0, static_cast<std::int64_t>(rcr_entities().size()) - 1)];
  repmas::Fsf f;
  f.object_id = std::string(e.prefix) + "#" + std::to_string(int_in(g, 0, 40));
  f.class_name = e.class_name;
  f.semantic = repmas::SemanticClass(e.kind);
  std::vector<std::string> names = e.vocab;
  std::shuffle(names.begin(), names.end(), g);
  names.resize(int_in(g, 0, static_cast<std::int64_t>(names.size())));
  for (const auto& n : names) {
    repmas::Value v = numeric_only ? repmas::Value(int_in(g, 0, 3)) : random_value(g);
    f.qualifiers.push_back({n, v});
  }
  f.location = {int_in(g, 0, 400), int_in(g, 0, 400)};
  f.time = int_in(g, 0, 200);
  return f;
}

/// Observations for routing streams: a small population of fires and
/// brigades with home positions, so that both absorption and creation happen.
struct StreamGen {
  Gen g;
  std::vector<repmas::Coord> fire_home;
  std::vector<repmas::Coord> brigade_home;

  explicit StreamGen(std::uint64_t seed) : g(seed) {
    const auto fires = int_in(g, 1, 15);
    const auto brigades = int_in(g, 1, 10);
    for (int i = 0; i < fires; ++i) fire_home.push_back({int_in(g, 0, 120), int_in(g, 0, 120)});
    for (int i = 0; i < brigades; ++i) brigade_home.push_back({int_in(g, 0, 120), int_in(g, 0, 120)});
  }

  repmas::Fsf next(std::int64_t cycle) {
    repmas::Fsf f;
    f.time = cycle;
    const bool fire = int_in(g, 0, 2) != 0;
    const auto& homes = fire ? fire_home : brigade_home;
    const auto i = int_in(g, 0, static_cast<std::int64_t>(homes.size()) - 1);
    // Mostly near home, sometimes far away.
    const std::int64_t jitter = int_in(g, 0, 9) == 0 ? 80 : 6;
    f.location = {homes[i].x + int_in(g, -jitter, jitter), homes[i].y + int_in(g, -jitter, jitter)};
    if (fire) {
      f.object_id = "fire#" + std::to_string(i);
      f.class_name = "Fire";
      f.semantic = repmas::SemanticClass(repmas::Kind::Phenomenon);
      const std::int64_t fieriness = int_in(g, 0, 30) == 0 ? 8 : int_in(g, 1, 3);
      f.qualifiers = {{"fieriness", fieriness},
                      {"inDangerNeighbours", int_in(g, 0, 4)},
                      {"burningNeighbours", int_in(g, 0, 4)}};
    } else {
      f.object_id = "brigade#" + std::to_string(i);
      f.class_name = "FireBrigade";
      f.semantic = repmas::SemanticClass(repmas::Kind::Actor);
      f.qualifiers = {{"extinguishing", int_in(g, 0, 1)}, {"water", int_in(g, 0, 3) * 10}};
    }
    return f;
  }
};

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("repmas_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
