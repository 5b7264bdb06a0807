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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Runs the default grid twice (3 seeds) and a 10-seed grid.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "edgecast/commands.hpp"
#include "edgecast/popularity.hpp"
#include "edgecast/textio.hpp"
#include "support/oracles.hpp"

using namespace edgecast;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig default_config(const fs::path& out) {
  auto c = parse_config(default_config_yaml());
  c.output_dir = out;
  return c;
}

SweepOutcome sweep(const ExperimentConfig& c, bool write) {
  SweepOptions o;
  o.jobs = 0;
  o.resume = false;
  o.write_outputs = write;
  const auto t0 = std::chrono::steady_clock::now();
  auto out = run_sweep(c, o);
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  sweep: %zu cells x %zu policies, %zu runs, %.1f s\n", out.cells.size() / c.policies.size(),
              c.policies.size(), out.runs_executed, secs);
  return out;
}

std::size_t metric_index(std::string_view name) {
  return static_cast<std::size_t>(std::find(kMetricColumns.begin(), kMetricColumns.end(), name) -
                                  kMetricColumns.begin());
}

}  // namespace

int main() {
  const auto root = fs::temp_directory_path() / "edgecast-acceptance";
  fs::remove_all(root);

  // 1
  {
    PopularityParams p;
    p.n_files = 100;
    p.q = 10;
    p.gamma = 2.5;
    const auto d = mzipf_init(p);
    double top = 0.0;
    for (FileId i = 1; i <= 20; ++i) top += d[i];
    verdict(1, std::abs(top - 0.80) <= 0.03, "top-20 MZipf mass within 0.80 +- 0.03", fmt("mass %.4f", top));
  }

  // 7 and 8 are quick; run them before the sweeps.
  const std::size_t coding_bad = oracle::coding_mismatches(10000, 20260101);
  const std::size_t evict_bad = oracle::eviction_mismatches(10000, 20260102);

  std::printf("default grid, first execution\n");
  const auto first = sweep(default_config(root / "default-a"), true);
  std::printf("default grid, second execution\n");
  const auto second = sweep(default_config(root / "default-b"), true);
  std::printf("10-seed grid\n");
  auto ten_cfg = default_config(root / "ten");
  ten_cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto ten = sweep(ten_cfg, false);

  // 2
  {
    double worst = 0.0;
    std::size_t n = 0;
    bool defined = true;
    for (const auto* s : {&first, &ten}) {
      for (const auto& c : s->cells) {
        const auto& r = c.report;
        if (!r.gain_combined || !r.gain_caching || !r.gain_coding) {
          defined = false;
          continue;
        }
        worst = std::max(worst, std::abs(*r.gain_combined - *r.gain_caching * *r.gain_coding) / *r.gain_combined);
        ++n;
      }
    }
    verdict(2, defined && worst <= 1e-12, "G_ci = G_c * G_i within 1e-12 relative on every cell",
            std::to_string(n) + " cells, worst " + fmt("%.3g", worst));
  }

  // 3
  {
    bool ok = true;
    std::size_t n = 0;
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < ten.cells.size(); ++i) {
      const auto& c = ten.cells[i];
      if (c.alpha != 0.0) continue;
      ++n;
      hits += ten.diagnostics[i].hits_nocode;
      ok = ok && ten.diagnostics[i].hits_nocode == 0 && c.report.gain_caching && *c.report.gain_caching == 1.0;
    }
    verdict(3, ok && n > 0, "alpha = 0 without coding: zero hits and G_c = 1 exactly (10 seeds, all M)",
            std::to_string(n) + " cells, " + std::to_string(hits) + " hits");
  }

  // 4
  {
    double min_gi = 1e300;
    std::uint64_t decode = 0;
    for (std::size_t i = 0; i < first.cells.size(); ++i) {
      if (first.cells[i].report.gain_coding) min_gi = std::min(min_gi, *first.cells[i].report.gain_coding);
      else min_gi = -1;
      decode += first.diagnostics[i].decode_violations;
    }
    verdict(4, min_gi >= 1.0 && decode == 0, "G_i >= 1 on the default grid with no decode violations",
            fmt("min G_i %.6f", min_gi) + ", " + std::to_string(decode) + " decode violations");
  }

  const auto gci = metric_index("g_ci");
  // Lookup: (M, policy) -> alpha -> row.
  std::map<std::pair<double, Policy>, std::map<double, const AggregateRow*>> grid;
  for (const auto& r : ten.aggregate) grid[{r.cache_fraction, r.policy}][r.alpha] = &r;

  // 5
  {
    bool ok = true;
    std::string worst;
    for (const auto& [key, by_alpha] : grid) {
      int drops = 0;
      bool within = true;
      const AggregateRow* prev = nullptr;
      for (const auto& [alpha, row] : by_alpha) {
        if (prev && *row->mean[gci] < *prev->mean[gci]) {
          ++drops;
          const double sd = std::sqrt((*prev->sd[gci] * *prev->sd[gci] + *row->sd[gci] * *row->sd[gci]) / 2.0);
          const double drop = *prev->mean[gci] - *row->mean[gci];
          within = within && drop <= sd;
          worst += " M=" + text::format_double(key.first) + "/" + std::string(to_string(key.second)) + " a" +
                   text::format_double(prev->alpha) + "->" + text::format_double(alpha) + fmt(" drop %.4f", drop) +
                   fmt(" sd %.4f;", sd);
        }
        prev = row;
      }
      ok = ok && drops <= 1 && within;
    }
    verdict(5, ok, "mean G_ci non-decreasing in alpha (10 seeds, one drop within 1 SD allowed)",
            worst.empty() ? "no drops" : "drops:" + worst);
  }

  // 6
  {
    std::size_t checked = 0, failed = 0;
    std::string detail;
    for (const auto& [key, by_alpha] : grid) {
      if (key.second != Policy::LfuIndex) continue;
      const double m = key.first;
      for (const auto& [alpha, idx] : by_alpha) {
        const auto at = [&](Policy p) { return grid.at({m, p}).at(alpha); };
        const auto compare = [&](const AggregateRow* hi, const AggregateRow* lo) {
          const double se = std::sqrt(*hi->sd[gci] * *hi->sd[gci] / static_cast<double>(hi->n_seeds) +
                                      *lo->sd[gci] * *lo->sd[gci] / static_cast<double>(lo->n_seeds));
          ++checked;
          if (*hi->mean[gci] + se >= *lo->mean[gci]) return;
          ++failed;
          detail += " a" + text::format_double(alpha) + "/M" + text::format_double(m) + " " +
                    std::string(to_string(hi->policy)) + fmt(" %.4f", *hi->mean[gci]) + " < " +
                    std::string(to_string(lo->policy)) + fmt(" %.4f", *lo->mean[gci]) + fmt(" (se %.4f);", se);
        };
        compare(at(Policy::Belady), idx);
        compare(idx, at(Policy::Lfu));
        compare(idx, at(Policy::Lru));
      }
    }
    verdict(6, failed == 0, "Belady >= LFU-Index >= LFU and >= LRU on mean G_ci within 1 pooled SE (10 seeds)",
            std::to_string(checked - failed) + "/" + std::to_string(checked) + " comparisons hold" +
                (detail.empty() ? "" : ";" + detail));
  }

  verdict(7, coding_bad == 0, "coding placement matches the exhaustive oracle",
          std::to_string(10000 - coding_bad) + "/10000 trials");
  verdict(8, evict_bad == 0, "victim selection matches the brute-force oracle for every policy",
          std::to_string(evict_bad) + " mismatches over 10000 trials x 4 policies");

  // 9
  {
    std::uint64_t rate = 0, idle = 0;
    double max_tp = 0.0, min_lat = 1e300;
    for (const auto* s : {&first, &ten}) {
      for (const auto& d : s->diagnostics) {
        rate += d.rate_violations;
        idle += d.idle_violations;
        if (d.max_throughput_bps) max_tp = std::max(max_tp, *d.max_throughput_bps);
        if (d.min_network_latency_s_per_mb) min_lat = std::min(min_lat, *d.min_network_latency_s_per_mb);
      }
    }
    verdict(9, rate == 0 && idle == 0, "throughput <= 24 Mbps, latency >= 1/3 s/MB, channel never idle with a queue",
            std::to_string(rate) + " rate violations (exact integer check), " + std::to_string(idle) +
                " idle violations, " + fmt("max %.1f bps", max_tp) + fmt(", min %.6f s/MB", min_lat));
  }

  // 10
  {
    const auto a = text::read_file(root / "default-a" / "aggregated.csv");
    const auto b = text::read_file(root / "default-b" / "aggregated.csv");
    verdict(10, a == b && !a.empty() && first.cells == second.cells,
            "two default sweeps give byte-identical aggregated CSV",
            std::to_string(a.size()) + " bytes, fnv1a " + text::hex64(text::fnv1a(a)) + " vs " +
                text::hex64(text::fnv1a(b)));
  }

  fs::remove_all(root);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
