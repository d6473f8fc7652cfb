#pragma once

#include <string>
#include <vector>

#include "repmas/trace.hpp"
#include "repmas/world.hpp"

namespace repmas::scenario {

/// Scripted fire/brigade episode on a 9 × 5 grid (spacing 40):
///
///  - nothing is observed before cycle 5, when four brigades discover the
///    first two fires;
///  - the tracked fire (fire#32 at 200|120) ignites at cycle 30 and is
///    reported twice on its first cycle;
///  - brigades stand within 10 units of it during cycles 38–46, in varying
///    numbers (1, 2, 1, 0, 1, 3, 2, 3, 2), and start extinguishing at 43;
///  - it is reported extinguished (fieriness 8) at cycle 48;
///  - two more fires appear at cycles 44 and 52 and burn until the end.
///
/// Within a cycle brigades report before fires, so brigade counts around a
/// fire use positions from the same cycle.
struct PaperlikeScenario {
  WorldSpec world;
  std::vector<TraceBatch> trace;
  std::string tracked_fire = "fire#32";
  Cycle discovery_cycle = 5;
  Cycle tracked_ignition = 30;
  Cycle brigades_arrive = 38;
  Cycle brigades_leave = 46;
  Cycle extinguished_cycle = 48;
  Cycle total_cycles = 60;
};

PaperlikeScenario build_paperlike_scenario();

}  // namespace repmas::scenario
