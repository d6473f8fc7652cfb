#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "repmas/config.hpp"
#include "repmas/mas.hpp"
#include "repmas/trace.hpp"

namespace repmas::app {

inline constexpr std::string_view kEngineVersion = "0.3.1";
inline constexpr std::string_view kBuiltinPaperlike = "builtin:paperlike";

inline constexpr std::string_view kAgentsHeader = "cycle,agent_id,kind,class,state,ai,pi,lifetime";
inline constexpr std::string_view kActivitiesHeader = "cycle,state_changes,indicator_changes,total";

/// Observations for one cycle.
using ObservationSource = std::function<std::vector<Fsf>(Cycle)>;

/// The text of every output file, built cycle by cycle.
struct RunOutputs {
  std::string agents_csv;
  std::string activities_csv;
  std::string snapshots_jsonl;
  Cycle cycles_run = 0;
  std::size_t agents_created = 0;
};

/// Accumulates CSV rows (and optionally snapshot lines) after each cycle.
class RunRecorder {
 public:
  explicit RunRecorder(bool snapshots);

  void record(const RepresentationMas& mas, const std::vector<ActivityRecord>& records);
  RunOutputs finish(const RepresentationMas& mas);

 private:
  bool snapshots_;
  RunOutputs out_;
};

/// Runs `cycles` cycles of `mas` from `source` and returns the outputs.
RunOutputs run_engine(RepresentationMas& mas, const ObservationSource& source, Cycle cycles,
                      bool snapshots);

struct SimulateOptions {
  /// World spec file, or kBuiltinPaperlike.
  std::string world;
  /// Empty means built-in defaults.
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<Cycle> cycles;
  std::filesystem::path out_dir;
  bool snapshots = false;
};

struct ReplayOptions {
  std::filesystem::path trace;
  std::filesystem::path config;
  /// Defaults to one past the last trace cycle.
  std::optional<Cycle> cycles;
  std::filesystem::path out_dir;
  bool snapshots = false;
};

struct RunSummary {
  Cycle cycles_run = 0;
  std::size_t agents_created = 0;
  std::vector<std::string> files;
};

EngineConfig load_config_or_default(const std::filesystem::path& config);

/// In-memory versions; the file-writing ones below call these.
RunOutputs simulate(const SimulateOptions& opts);
RunOutputs replay(const ReplayOptions& opts);

/// Write agents.csv, activities.csv, (snapshots.jsonl) and manifest.json.
RunSummary cmd_simulate(const SimulateOptions& opts);
RunSummary cmd_replay(const ReplayOptions& opts);

/// The observation stream of a world (or the built-in scripted trace) as
/// trace batches; empty cycles are omitted. Feeding the result to replay
/// gives the same outputs as simulate.
std::vector<scenario::TraceBatch> record_trace(const std::string& world, std::optional<std::uint64_t> seed,
                                               std::optional<Cycle> cycles);

/// Re-runs the command recorded in a manifest, writing into `out_dir`
/// (or the recorded directory when empty).
RunSummary rerun_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir);

}  // namespace repmas::app
