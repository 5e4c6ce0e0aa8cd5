// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace phaselab::report {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (delta, rho)
};

/// Emits a self-contained SVG of the unit phase plane: one polyline per
/// series, axes with ticks every 0.1, and a text legend. No plotting
/// dependency; output is deterministic for diff-based tests.
void write_phase_plot_svg(const std::filesystem::path& path,
                          const std::vector<PlotSeries>& series,
                          const std::string& title = "");

}  // namespace phaselab::report
