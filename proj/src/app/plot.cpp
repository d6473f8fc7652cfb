#include "repmas/app/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "repmas/error.hpp"

namespace repmas::app {

namespace {

using Row = std::vector<std::string>;

std::vector<Row> read_csv(const std::filesystem::path& path, std::string_view expected_header) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "missing " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != expected_header) {
    throw Error(Errc::ConfigError, path.string() + " does not start with '" + std::string(expected_header) + "'");
  }
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v - std::round(v)) < 1e-9) std::snprintf(buf, sizeof buf, "%.0f", v);
  else std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series, const ChartOptions& opts) {
  const double left = 64, right = 24, top = 40, bottom = 48;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  ymin = std::min(ymin, 0.0);
  if (ymax == ymin) ymax = ymin + 1;
  ymax += (ymax - ymin) * 0.05;

  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << opts.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(opts.title) << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(left + pw) << "\" y2=\""
        << num(sy(yv)) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
    svg << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 16) << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
  }
  svg << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << opts.height - 10 << "\" text-anchor=\"middle\">"
      << escape(opts.x_label) << "</text>\n";
  svg << "<text transform=\"translate(16," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(opts.y_label) << "</text>\n";

  double legend_y = top + 14;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto [x, y] = s.points[i];
      if (opts.step && i > 0) svg << num(sx(x)) << "," << num(sy(s.points[i - 1].second)) << " ";
      svg << num(sx(x)) << "," << num(sy(y)) << " ";
    }
    svg << "\"/>\n";
    svg << "<line x1=\"" << num(left + pw - 90) << "\" y1=\"" << num(legend_y - 4) << "\" x2=\"" << num(left + pw - 70)
        << "\" y2=\"" << num(legend_y - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(left + pw - 64) << "\" y=\"" << num(legend_y) << "\">" << escape(s.name) << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> plot_agent(const std::filesystem::path& in_dir, long agent_id,
                                    const std::filesystem::path& out_dir) {
  const auto rows = read_csv(in_dir / "agents.csv", "cycle,agent_id,kind,class,state,ai,pi,lifetime");
  if (rows.empty()) throw Error(Errc::ConfigError, "agents.csv has no rows");

  Series ai{"AI", "#1f77b4", {}};
  Series pi{"PI", "#d62728", {}};
  Series state{"ATN state", "#2ca02c", {}};
  std::string cls;
  for (const auto& r : rows) {
    if (r.size() != 8) throw Error(Errc::ConfigError, "agents.csv row with " + std::to_string(r.size()) + " fields");
    if (std::stol(r[1]) != agent_id) continue;
    const double cycle = std::stod(r[0]);
    cls = r[3];
    state.points.emplace_back(cycle, std::stod(r[4]));
    ai.points.emplace_back(cycle, std::stod(r[5]));
    pi.points.emplace_back(cycle, std::stod(r[6]));
  }
  if (state.points.empty()) {
    throw Error(Errc::ConfigError, "agent " + std::to_string(agent_id) + " does not appear in agents.csv");
  }

  std::filesystem::create_directories(out_dir);
  const std::string base = "agent_" + std::to_string(agent_id);
  ChartOptions ind;
  ind.title = "Indicators of agent " + std::to_string(agent_id) + " (" + cls + ")";
  ind.y_label = "value";
  write_text(out_dir / (base + "_indicators.svg"), render_line_chart({ai, pi}, ind));
  ChartOptions st;
  st.title = "ATN state of agent " + std::to_string(agent_id) + " (" + cls + ")";
  st.y_label = "state";
  st.step = true;
  write_text(out_dir / (base + "_state.svg"), render_line_chart({state}, st));
  return {base + "_indicators.svg", base + "_state.svg"};
}

std::vector<std::string> plot_activities(const std::filesystem::path& in_dir, const std::filesystem::path& out_dir) {
  const auto rows = read_csv(in_dir / "activities.csv", "cycle,state_changes,indicator_changes,total");
  if (rows.empty()) throw Error(Errc::ConfigError, "activities.csv has no rows");
  Series total{"activities", "#9467bd", {}};
  for (const auto& r : rows) {
    if (r.size() != 4) throw Error(Errc::ConfigError, "activities.csv row with " + std::to_string(r.size()) + " fields");
    total.points.emplace_back(std::stod(r[0]), std::stod(r[3]));
  }
  std::filesystem::create_directories(out_dir);
  ChartOptions opts;
  opts.title = "Factual agent activities per cycle";
  opts.y_label = "activities";
  write_text(out_dir / "activities.svg", render_line_chart({total}, opts));
  return {"activities.svg"};
}

}  // namespace repmas::app
