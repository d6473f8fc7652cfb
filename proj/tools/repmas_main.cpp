// repmas command-line front end. Every subcommand is a thin wrapper over
// repmas::app, so anything done here can also be done from the library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "repmas/app/plot.hpp"
#include "repmas/app/run.hpp"
#include "repmas/error.hpp"

namespace {

// Bad inputs exit 1, failures while running exit 2.
int exit_code_for(repmas::Errc code) {
  using repmas::Errc;
  switch (code) {
    case Errc::ConfigError:
    case Errc::IoError:
    case Errc::ParseError:
    case Errc::NonMonotoneTime:
    case Errc::SchemaError:
    case Errc::DanglingStateRef:
    case Errc::TerminalWithOutgoing:
    case Errc::MalformedTuple:
    case Errc::UnknownClassPrefix:
    case Errc::UnknownQualifier:
    case Errc::BadCoordinate:
      return 1;
    default:
      return 2;
  }
}

void print_summary(const repmas::app::RunSummary& s, const std::string& out) {
  std::cout << "ran " << s.cycles_run << " cycles, " << s.agents_created << " factual agents; wrote";
  for (const auto& f : s.files) std::cout << ' ' << f;
  std::cout << " to " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation-layer multi-agent system for situation assessment"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(repmas::app::kEngineVersion));

  repmas::app::SimulateOptions sim;
  std::optional<std::uint64_t> sim_seed;
  std::optional<long long> sim_cycles;
  std::string sim_out, sim_config;
  auto* simulate = app.add_subcommand("simulate", "Run the fire scenario generator through the MAS");
  simulate->add_option("--world", sim.world, "World spec JSON, or builtin:paperlike")->required();
  simulate->add_option("--seed", sim_seed, "Override the world seed");
  simulate->add_option("--cycles", sim_cycles, "Number of cycles (default: from the world)");
  simulate->add_option("--config", sim_config, "MAS config JSON (default: built-in)");
  simulate->add_option("--out", sim_out, "Output directory")->required();
  simulate->add_flag("--snapshots", sim.snapshots, "Also write snapshots.jsonl");

  repmas::app::ReplayOptions rep;
  std::optional<long long> rep_cycles;
  std::string rep_trace, rep_out, rep_config;
  auto* replay = app.add_subcommand("replay", "Feed a recorded FSF trace through the MAS");
  replay->add_option("--trace", rep_trace, "Trace file (tuple lines, or .jsonl)")->required();
  replay->add_option("--config", rep_config, "MAS config JSON (default: built-in)");
  replay->add_option("--cycles", rep_cycles, "Number of cycles (default: one past the last trace cycle)");
  replay->add_option("--out", rep_out, "Output directory")->required();
  replay->add_flag("--snapshots", rep.snapshots, "Also write snapshots.jsonl");

  std::string plot_in, plot_out;
  std::optional<long> plot_agent;
  bool plot_activities = false;
  auto* plot = app.add_subcommand("plot", "Render SVG charts from a run directory");
  plot->add_option("--in", plot_in, "Directory holding agents.csv / activities.csv")->required();
  auto* agent_opt = plot->add_option("--agent", plot_agent, "Agent id: AI/PI chart and ATN state chart");
  auto* act_opt = plot->add_flag("--activities", plot_activities, "Activities-per-cycle chart");
  agent_opt->excludes(act_opt);
  plot->add_option("--out", plot_out, "Where to write the SVGs (default: --in)");

  std::string rec_world, rec_out;
  std::optional<std::uint64_t> rec_seed;
  std::optional<long long> rec_cycles;
  bool rec_jsonl = false;
  auto* record = app.add_subcommand("record", "Write a world's FSF stream as a trace file");
  record->add_option("--world", rec_world, "World spec JSON, or builtin:paperlike")->required();
  record->add_option("--seed", rec_seed, "Override the world seed");
  record->add_option("--cycles", rec_cycles, "Number of cycles (default: from the world)");
  record->add_option("--out", rec_out, "Trace file to write")->required();
  record->add_flag("--jsonl", rec_jsonl, "JSON lines instead of tuples");

  std::string manifest, rerun_out;
  auto* rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest.json");
  rerun->add_option("--manifest", manifest, "manifest.json of an earlier run")->required();
  rerun->add_option("--out", rerun_out, "Output directory (default: the recorded one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      sim.seed = sim_seed;
      if (sim_cycles) sim.cycles = *sim_cycles;
      sim.config = sim_config;
      sim.out_dir = sim_out;
      print_summary(repmas::app::cmd_simulate(sim), sim_out);
    } else if (*replay) {
      rep.trace = rep_trace;
      rep.config = rep_config;
      if (rep_cycles) rep.cycles = *rep_cycles;
      rep.out_dir = rep_out;
      print_summary(repmas::app::cmd_replay(rep), rep_out);
    } else if (*plot) {
      if (!plot_agent && !plot_activities) {
        std::cerr << "error: plot needs --agent <id> or --activities\n";
        return 1;
      }
      const std::string out = plot_out.empty() ? plot_in : plot_out;
      const auto files = plot_agent ? repmas::app::plot_agent(plot_in, *plot_agent, out)
                                    : repmas::app::plot_activities(plot_in, out);
      for (const auto& f : files) std::cout << out << "/" << f << "\n";
    } else if (*record) {
      std::optional<repmas::Cycle> cycles;
      if (rec_cycles) cycles = *rec_cycles;
      const auto batches = repmas::app::record_trace(rec_world, rec_seed, cycles);
      std::ofstream out(rec_out, std::ios::binary | std::ios::trunc);
      if (!out) throw repmas::Error(repmas::Errc::IoError, "cannot write " + rec_out);
      repmas::scenario::write_trace(out, batches,
                                    rec_jsonl ? repmas::scenario::TraceFormat::Jsonl
                                              : repmas::scenario::TraceFormat::Tuple);
      std::size_t n = 0;
      for (const auto& b : batches) n += b.fsfs.size();
      std::cout << "recorded " << n << " FSFs in " << batches.size() << " cycles to " << rec_out << "\n";
    } else if (*rerun) {
      const auto summary = repmas::app::rerun_manifest(manifest, rerun_out);
      print_summary(summary, rerun_out.empty() ? "recorded directory" : rerun_out);
    }
  } catch (const repmas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
