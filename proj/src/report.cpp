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

#include "edgecast/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "edgecast/textio.hpp"

namespace edgecast {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view policy_color(Policy p) {
  switch (p) {
    case Policy::Lru: return "#1f77b4";
    case Policy::Lfu: return "#ff7f0e";
    case Policy::Belady: return "#2ca02c";
    case Policy::LfuIndex: return "#d62728";
  }
  return "#000000";
}

std::pair<double, double> padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = std::abs(lo) > 0 ? std::abs(lo) * 0.1 : 0.5;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg_plot(std::string_view title, std::string_view x_label, std::string_view y_label,
                            const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      if (!p.y) continue;
      ymin = std::min(ymin, *p.y - p.err);
      ymax = std::max(ymax, *p.y + p.err);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  std::tie(xmin, xmax) = padded(xmin, xmax);
  std::tie(ymin, ymax) = padded(ymin, ymax);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  const auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
       "</text>\n";
  o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    const double x = sx(xv), y = sy(yv);
    o += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) + "\" y2=\"" + num(kTop + ph + 5) +
         "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" + tick_label(xv) +
         "</text>\n";
    o += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(y) +
         "\" stroke=\"#dddddd\"/>\n";
    o += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(yv) +
         "</text>\n";
  }
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" +
       escape(x_label) + "</text>\n";
  o += "<text transform=\"translate(18 " + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = escape(s.color);
    // Consecutive defined points form one polyline; an undefined point ends it.
    std::vector<std::vector<const PlotPoint*>> runs(1);
    for (const auto& p : s.points) {
      if (p.y) {
        runs.back().push_back(&p);
      } else if (!runs.back().empty()) {
        runs.emplace_back();
      }
    }
    for (const auto& run : runs) {
      if (run.size() < 2) continue;
      o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < run.size(); ++i) {
        o += (i ? " " : "") + num(sx(run[i]->x)) + "," + num(sy(*run[i]->y));
      }
      o += "\"/>\n";
    }
    for (const auto& p : s.points) {
      if (!p.y) continue;
      if (p.err > 0.0) {
        o += "<line x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(*p.y - p.err)) + "\" x2=\"" + num(sx(p.x)) +
             "\" y2=\"" + num(sy(*p.y + p.err)) + "\" stroke=\"" + color + "\"/>\n";
      }
      o += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(*p.y)) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    const double ly = kTop + 14 + 20.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 15;
    o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly - 4) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

std::string format_summary(const std::vector<AggregateRow>& rows) {
  const std::array<std::string_view, 5> shown = {"g_c", "g_i", "g_ci", "latency_s_per_mb", "throughput_bps"};
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %-6s %-10s %5s", "alpha", "M", "policy", "seeds");
  out += buf;
  for (auto m : shown) {
    std::snprintf(buf, sizeof buf, " %24s", std::string(m).c_str());
    out += buf;
  }
  out += '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-6s %-6s %-10s %5zu", text::format_double(r.alpha).c_str(),
                  text::format_double(r.cache_fraction).c_str(), std::string(to_string(r.policy)).c_str(), r.n_seeds);
    out += buf;
    for (auto m : shown) {
      const auto idx = static_cast<std::size_t>(std::find(kMetricColumns.begin(), kMetricColumns.end(), m) -
                                                kMetricColumns.begin());
      if (r.mean[idx]) {
        std::snprintf(buf, sizeof buf, " %13.6g +- %-9.3g", *r.mean[idx], r.sd[idx].value_or(0.0));
      } else {
        std::snprintf(buf, sizeof buf, " %24s", std::string(kNullMarker).c_str());
      }
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ReportFiles write_report(std::string_view aggregated_csv, const std::filesystem::path& out_dir) {
  const auto rows = parse_aggregate_csv(aggregated_csv);
  std::map<double, std::map<Policy, std::vector<const AggregateRow*>>> by_m;
  for (const auto& r : rows) by_m[r.cache_fraction][r.policy].push_back(&r);

  ReportFiles files;
  for (auto metric : kPlotMetrics) {
    const auto idx = static_cast<std::size_t>(std::find(kMetricColumns.begin(), kMetricColumns.end(), metric) -
                                              kMetricColumns.begin());
    for (const auto& [m, policies] : by_m) {
      std::vector<PlotSeries> series;
      for (const auto& [policy, members] : policies) {
        PlotSeries s{std::string(to_string(policy)), std::string(policy_color(policy)), {}};
        for (const auto* r : members) s.points.push_back({r->alpha, r->mean[idx], r->sd[idx].value_or(0.0)});
        std::sort(s.points.begin(), s.points.end(), [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
        series.push_back(std::move(s));
      }
      const auto mstr = text::format_double(m);
      const auto path = out_dir / (std::string(metric) + "_m" + mstr + ".svg");
      text::write_file_atomic(path, render_svg_plot(std::string(metric) + " vs alpha (M = " + mstr + ", coding on)",
                                                    "rewatch factor alpha", metric, series));
      files.plots.push_back(path);
    }
  }
  files.summary = out_dir / "summary.txt";
  text::write_file_atomic(files.summary, format_summary(rows));
  return files;
}

}  // namespace edgecast
