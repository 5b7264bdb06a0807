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

#ifndef EDGECAST_COMMANDS_HPP
#define EDGECAST_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "edgecast/config.hpp"
#include "edgecast/metrics.hpp"
#include "edgecast/report.hpp"
#include "edgecast/sweep.hpp"

namespace edgecast {

struct GenProfileFiles {
  std::filesystem::path catalog;
  std::vector<std::filesystem::path> profiles;  // one per alpha
};

/// Writes the seed's catalog and one profile per configured alpha under
/// config.output_dir. Defaults to the first configured seed.
GenProfileFiles cmd_gen_profile(const ExperimentConfig& config, std::optional<std::uint64_t> seed = {});

struct RunRequest {
  std::filesystem::path profile;
  Policy policy = Policy::Lru;
  bool coding = false;
  std::optional<double> cache_fraction;  // default: first configured M
  std::optional<std::filesystem::path> out_dir;
};

struct RunFiles {
  std::filesystem::path dir;
  SweepCell row;
  RunDiagnostics diagnostics;
};

/// Loads the profile and the catalog it names, refuses a stale profile,
/// then writes trace.csv, transmissions.csv, cache_trace.csv, results.csv
/// and, with coding on, coding_trace.csv.
RunFiles cmd_run(const ExperimentConfig& config, const RunRequest& request);

SweepOutcome cmd_sweep(const ExperimentConfig& config, const SweepOptions& options);

ReportFiles cmd_report(const std::filesystem::path& input, const std::filesystem::path& out_dir);

}  // namespace edgecast

#endif  // EDGECAST_COMMANDS_HPP
