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

#ifndef EDGECAST_SWEEP_HPP
#define EDGECAST_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/config.hpp"
#include "edgecast/engine.hpp"
#include "edgecast/metrics.hpp"
#include "edgecast/workload.hpp"

namespace edgecast {

inline constexpr std::string_view kToolVersion = "edgecast 0.1.0";

Catalog make_catalog(const ExperimentConfig& config, std::uint64_t seed);
/// Profiles for one seed share their random streams across alpha values.
RequestProfile make_profile(const ExperimentConfig& config, const Catalog& catalog, double alpha, std::uint64_t seed);

// Paths relative to the output directory.
std::string catalog_path(std::uint64_t seed);
std::string profile_path(double alpha, std::uint64_t seed);
std::string cell_dir(double alpha, double cache_fraction, std::uint64_t seed);

/// Checks that only need the stored runs, kept next to each result row.
struct RunDiagnostics {
  std::uint64_t hits_nocode = 0;
  std::uint64_t decode_violations = 0;
  std::uint64_t idle_violations = 0;
  std::uint64_t invariant_violations = 0;
  /// Network deliveries faster than the link allows, checked in integer
  /// arithmetic (bits * 1e9 > rate * elapsed_ns).
  std::uint64_t rate_violations = 0;
  /// Extremes over every network delivery of the three runs; unset when
  /// nothing went over the network.
  std::optional<double> max_throughput_bps;
  std::optional<double> min_network_latency_s_per_mb;

  void absorb(const RunResult& r, std::uint64_t link_rate_bps);
  friend bool operator==(const RunDiagnostics&, const RunDiagnostics&) = default;
};

/// The three runs behind one result row.
struct CellRuns {
  RunResult baseline;  // no cache, no coding
  RunResult cache;     // cache, no coding
  RunResult coded;     // cache and coding
};

/// Runs the baseline once and each policy twice on one shared profile.
/// `keep` receives every policy's runs before they are dropped.
std::vector<std::pair<SweepCell, RunDiagnostics>> run_cell(
    const ExperimentConfig& config, const Catalog& catalog, const RequestProfile& profile, double alpha,
    double cache_fraction, std::uint64_t seed, bool check_invariants = false,
    const std::function<void(Policy, const CellRuns&)>& keep = {});

struct SweepOptions {
  unsigned jobs = 1;  // 0: one per hardware thread
  bool write_outputs = true;
  bool resume = true;
  bool check_invariants = false;
  std::function<void(std::string_view)> log;  // called under a lock
};

struct SweepOutcome {
  std::vector<SweepCell> cells;  // grid order: alpha, M, seed, policy
  std::vector<RunDiagnostics> diagnostics;
  std::vector<AggregateRow> aggregate;
  std::size_t runs_executed = 0;
  std::size_t cells_resumed = 0;
};

/// Writes catalogs/, profiles/, cells/<cell>/ and the top-level results.csv,
/// aggregated.csv and manifest.json under config.output_dir. A cell whose
/// stamp matches the config hash and whose results hash verifies is reused.
SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

}  // namespace edgecast

#endif  // EDGECAST_SWEEP_HPP
