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

#ifndef EDGECAST_CONFIG_HPP
#define EDGECAST_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/cache.hpp"
#include "edgecast/engine.hpp"
#include "edgecast/popularity.hpp"
#include "edgecast/workload.hpp"

namespace edgecast {

/// Everything a sweep needs. Defaults reproduce the evaluation setup:
/// 10 clients, 100 files of 2-5 minutes in 4 s segments, 24 Mbit/s
/// multicast, MZipf(q = 10, gamma = 2.5), 5 s mean wait, 3 h of activity.
struct ExperimentConfig {
  CatalogParams catalog;
  double gamma = 2.5;
  double q = 10.0;

  double mean_wait_s = 5.0;
  double horizon_s = 10800.0;
  std::vector<double> alphas = {0.0, 0.25, 0.5, 0.75, 1.0};

  std::size_t n_clients = 10;
  std::uint64_t link_rate_bps = 24'000'000;
  std::vector<double> cache_fractions = {0.05, 0.10, 0.15};
  std::vector<Policy> policies = {Policy::Lru, Policy::Lfu, Policy::Belady, Policy::LfuIndex};
  double backhaul_delay_s = 0.0;
  std::optional<double> sim_horizon_s;  // unset: drain every profile

  std::vector<std::uint64_t> seeds = {1, 2, 3};

  std::filesystem::path output_dir = "edgecast-out";
  bool write_traces = true;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  PopularityParams popularity(double alpha) const;
  SimConfig sim_config(double cache_fraction, Policy policy, bool coding, std::uint64_t seed) const;

  /// Stable text form of every setting that affects results (the output
  /// section is excluded).
  std::string canonical() const;
  std::uint64_t hash() const;
};

/// Overlays a YAML document on the defaults. Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view yaml);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The defaults as a commented YAML document.
std::string default_config_yaml();

}  // namespace edgecast

#endif  // EDGECAST_CONFIG_HPP
