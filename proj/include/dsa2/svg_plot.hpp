#pragma once

// Self-contained SVG emission for the standard log-log trajectory plots.
// No renderer dependency: plain shapes, sans-serif text, fixed palette.

#include <string>
#include <vector>

namespace dsa2 {

struct PlotSeries {
  std::string label;
  std::vector<double> x;  // round numbers, must be positive to appear
  std::vector<double> y;  // values; non-finite or <= 0 points are skipped
  std::string color = "#1f77b4";
  bool dashed = false;    // bound overlays are drawn dashed
};

// Log-log plot with decade gridlines. Points that cannot be drawn on log
// axes are dropped; a series may end up empty and still gets a legend entry.
std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<PlotSeries>& series);

// Reads a trace CSV and writes the plot set for its schema into out_dir:
// objective_error.svg for primal traces, primal_error.svg and penalty.svg
// for dual traces. Bound overlays come from the bound columns when present.
// Returns the paths written. A trace with no rows is an error and writes
// nothing.
std::vector<std::string> emit_plots(const std::string& trace_csv_path, const std::string& out_dir);

}  // namespace dsa2
