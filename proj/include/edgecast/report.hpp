// Copyright 2026 The edgecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGECAST_REPORT_HPP
#define EDGECAST_REPORT_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/metrics.hpp"

namespace edgecast {

/// Metrics plotted against alpha, one figure per cache fraction.
inline constexpr std::array<std::string_view, 3> kPlotMetrics = {"g_ci", "latency_s_per_mb", "throughput_bps"};

struct PlotPoint {
  double x = 0.0;
  std::optional<double> y;  // unset: gap
  double err = 0.0;
};

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<PlotPoint> points;  // sorted by x
};

/// A standalone SVG line chart. Undefined points break the line.
std::string render_svg_plot(std::string_view title, std::string_view x_label, std::string_view y_label,
                            const std::vector<PlotSeries>& series);

/// Fixed-width table of the headline metrics, one line per row.
std::string format_summary(const std::vector<AggregateRow>& rows);

struct ReportFiles {
  std::vector<std::filesystem::path> plots;
  std::filesystem::path summary;
};

/// Parses an aggregated CSV (ParseError with a line number on bad input)
/// and writes <metric>_m<M>.svg files plus summary.txt into out_dir.
ReportFiles write_report(std::string_view aggregated_csv, const std::filesystem::path& out_dir);

}  // namespace edgecast

#endif  // EDGECAST_REPORT_HPP
