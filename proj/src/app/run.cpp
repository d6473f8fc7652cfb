#include "repmas/app/run.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "repmas/error.hpp"
#include "repmas/paperlike.hpp"
#include "repmas/trace.hpp"
#include "repmas/world.hpp"

namespace repmas::app {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "failed writing " + path.string());
}

std::string absolute_or_empty(const std::filesystem::path& p) {
  return p.empty() ? std::string() : std::filesystem::absolute(p).lexically_normal().string();
}

RunSummary write_outputs(const RunOutputs& outputs, const std::filesystem::path& dir, bool snapshots,
                         ojson manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create output directory " + dir.string() + ": " + ec.message());

  RunSummary summary;
  summary.cycles_run = outputs.cycles_run;
  summary.agents_created = outputs.agents_created;
  write_file(dir / "agents.csv", outputs.agents_csv);
  summary.files.push_back("agents.csv");
  write_file(dir / "activities.csv", outputs.activities_csv);
  summary.files.push_back("activities.csv");
  if (snapshots) {
    write_file(dir / "snapshots.jsonl", outputs.snapshots_jsonl);
    summary.files.push_back("snapshots.jsonl");
  }
  summary.files.push_back("manifest.json");
  manifest["engine_version"] = kEngineVersion;
  manifest["files"] = summary.files;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace

RunRecorder::RunRecorder(bool snapshots) : snapshots_(snapshots) {
  out_.agents_csv = std::string(kAgentsHeader) + "\n";
  out_.activities_csv = std::string(kActivitiesHeader) + "\n";
}

void RunRecorder::record(const RepresentationMas& mas, const std::vector<ActivityRecord>& records) {
  const Cycle cycle = mas.cycle() - 1;
  for (const auto& a : mas.agents()) {
    // Live agents, plus those that died during this cycle.
    if (a.dead() && *a.death_cycle != cycle) continue;
    out_.agents_csv += std::to_string(cycle) + "," + std::to_string(a.id) + "," +
                       std::string(to_string(a.kind)) + "," + mas.ontology().class_name(a.class_id) + "," +
                       std::to_string(a.state) + "," + fixed6(a.ai) + "," + fixed6(a.pi) + "," +
                       std::to_string(a.lifetime(cycle)) + "\n";
  }
  int state_changes = 0;
  int indicator_changes = 0;
  for (const auto& r : records) {
    (r.kind == ActivityKind::StateChange ? state_changes : indicator_changes)++;
  }
  out_.activities_csv += std::to_string(cycle) + "," + std::to_string(state_changes) + "," +
                         std::to_string(indicator_changes) + "," +
                         std::to_string(state_changes + indicator_changes) + "\n";
  if (snapshots_) out_.snapshots_jsonl += snapshot_to_json(mas.snapshot()) + "\n";
  ++out_.cycles_run;
}

RunOutputs RunRecorder::finish(const RepresentationMas& mas) {
  out_.agents_created = mas.agents().size();
  return out_;
}

RunOutputs run_engine(RepresentationMas& mas, const ObservationSource& source, Cycle cycles, bool snapshots) {
  RunRecorder recorder(snapshots);
  for (Cycle i = 0; i < cycles; ++i) {
    const std::vector<Fsf> batch = source(mas.cycle());
    const auto records = mas.run_cycle(batch);
    recorder.record(mas, records);
  }
  return recorder.finish(mas);
}

EngineConfig load_config_or_default(const std::filesystem::path& config) {
  return config.empty() ? default_engine_config() : load_engine_config(config);
}

RunOutputs simulate(const SimulateOptions& opts) {
  EngineConfig cfg = load_config_or_default(opts.config);
  if (opts.cycles && *opts.cycles < 0) throw Error(Errc::ConfigError, "--cycles must be >= 0");

  if (opts.world == kBuiltinPaperlike) {
    const scenario::PaperlikeScenario sc = scenario::build_paperlike_scenario();
    std::map<Cycle, std::vector<Fsf>> by_cycle;
    for (const auto& b : sc.trace) by_cycle[b.cycle] = b.fsfs;
    RepresentationMas mas(std::move(cfg));
    auto source = [&](Cycle c) {
      auto it = by_cycle.find(c);
      return it == by_cycle.end() ? std::vector<Fsf>{} : it->second;
    };
    return run_engine(mas, source, opts.cycles.value_or(sc.total_cycles), opts.snapshots);
  }

  scenario::WorldSpec spec = scenario::load_world_spec(opts.world);
  if (opts.seed) spec.seed = *opts.seed;
  const Cycle cycles = opts.cycles.value_or(spec.total_cycles);
  scenario::World world(spec);
  RepresentationMas mas(std::move(cfg));
  return run_engine(mas, [&](Cycle c) { return world.tick(c); }, cycles, opts.snapshots);
}

RunOutputs replay(const ReplayOptions& opts) {
  EngineConfig cfg = load_config_or_default(opts.config);
  if (opts.cycles && *opts.cycles < 0) throw Error(Errc::ConfigError, "--cycles must be >= 0");
  const auto batches = scenario::load_trace(opts.trace, cfg.ontology);
  std::map<Cycle, std::vector<Fsf>> by_cycle;
  for (const auto& b : batches) by_cycle[b.cycle] = b.fsfs;
  const Cycle cycles = opts.cycles.value_or(batches.empty() ? 0 : batches.back().cycle + 1);
  RepresentationMas mas(std::move(cfg));
  auto source = [&](Cycle c) {
    auto it = by_cycle.find(c);
    return it == by_cycle.end() ? std::vector<Fsf>{} : it->second;
  };
  return run_engine(mas, source, cycles, opts.snapshots);
}

std::vector<scenario::TraceBatch> record_trace(const std::string& world, std::optional<std::uint64_t> seed,
                                               std::optional<Cycle> cycles) {
  if (cycles && *cycles < 0) throw Error(Errc::ConfigError, "--cycles must be >= 0");
  std::vector<scenario::TraceBatch> out;
  if (world == kBuiltinPaperlike) {
    const scenario::PaperlikeScenario sc = scenario::build_paperlike_scenario();
    const Cycle limit = cycles.value_or(sc.total_cycles);
    for (const auto& b : sc.trace) {
      if (b.cycle < limit) out.push_back(b);
    }
    return out;
  }
  scenario::WorldSpec spec = scenario::load_world_spec(world);
  if (seed) spec.seed = *seed;
  const Cycle limit = cycles.value_or(spec.total_cycles);
  scenario::World w(spec);
  for (Cycle c = 0; c < limit; ++c) {
    auto fsfs = w.tick(c);
    if (!fsfs.empty()) out.push_back({c, std::move(fsfs)});
  }
  return out;
}

RunSummary cmd_simulate(const SimulateOptions& opts) {
  const RunOutputs outputs = simulate(opts);
  ojson manifest;
  manifest["command"] = "simulate";
  manifest["world"] = opts.world == kBuiltinPaperlike ? opts.world : absolute_or_empty(opts.world);
  manifest["config"] = absolute_or_empty(opts.config);
  manifest["seed"] = opts.seed ? ojson(*opts.seed) : ojson(nullptr);
  manifest["cycles"] = outputs.cycles_run;
  manifest["snapshots"] = opts.snapshots;
  manifest["out"] = absolute_or_empty(opts.out_dir);
  return write_outputs(outputs, opts.out_dir, opts.snapshots, std::move(manifest));
}

RunSummary cmd_replay(const ReplayOptions& opts) {
  const RunOutputs outputs = replay(opts);
  ojson manifest;
  manifest["command"] = "replay";
  manifest["trace"] = absolute_or_empty(opts.trace);
  manifest["config"] = absolute_or_empty(opts.config);
  manifest["cycles"] = outputs.cycles_run;
  manifest["snapshots"] = opts.snapshots;
  manifest["out"] = absolute_or_empty(opts.out_dir);
  return write_outputs(outputs, opts.out_dir, opts.snapshots, std::move(manifest));
}

RunSummary rerun_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir) {
  std::ifstream in(manifest);
  if (!in) throw Error(Errc::ConfigError, "cannot open manifest " + manifest.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    const std::string command = doc.at("command").get<std::string>();
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(doc.at("out").get<std::string>()) : out_dir;
    if (command == "simulate") {
      SimulateOptions opts;
      opts.world = doc.at("world").get<std::string>();
      opts.config = doc.at("config").get<std::string>();
      if (!doc.at("seed").is_null()) opts.seed = doc.at("seed").get<std::uint64_t>();
      opts.cycles = doc.at("cycles").get<Cycle>();
      opts.snapshots = doc.at("snapshots").get<bool>();
      opts.out_dir = dir;
      return cmd_simulate(opts);
    }
    if (command == "replay") {
      ReplayOptions opts;
      opts.trace = doc.at("trace").get<std::string>();
      opts.config = doc.at("config").get<std::string>();
      opts.cycles = doc.at("cycles").get<Cycle>();
      opts.snapshots = doc.at("snapshots").get<bool>();
      opts.out_dir = dir;
      return cmd_replay(opts);
    }
    throw Error(Errc::ConfigError, "manifest has unknown command '" + command + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, std::string("manifest: ") + e.what());
  }
}

}  // namespace repmas::app
