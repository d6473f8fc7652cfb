#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace repmas::app {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

struct ChartOptions {
  std::string title;
  std::string x_label = "cycle";
  std::string y_label;
  /// Draw as a step function (for ATN states).
  bool step = false;
  int width = 720;
  int height = 360;
};

/// Standalone SVG line chart.
std::string render_line_chart(const std::vector<Series>& series, const ChartOptions& opts);

/// Renders the AI/PI chart and the ATN state chart of one agent from
/// `<in_dir>/agents.csv`. Returns the written file names.
std::vector<std::string> plot_agent(const std::filesystem::path& in_dir, long agent_id,
                                    const std::filesystem::path& out_dir);

/// Renders activities per cycle from `<in_dir>/activities.csv`.
std::vector<std::string> plot_activities(const std::filesystem::path& in_dir, const std::filesystem::path& out_dir);

}  // namespace repmas::app
