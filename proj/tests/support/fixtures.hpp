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

#ifndef EDGECAST_TESTS_FIXTURES_HPP
#define EDGECAST_TESTS_FIXTURES_HPP

#include <filesystem>
#include <string>

#include "edgecast/config.hpp"
#include "edgecast/engine.hpp"
#include "edgecast/random.hpp"
#include "edgecast/workload.hpp"

namespace edgecast::testing {

/// Desk-scale setup: 20 short files, 4 clients, ten minutes of activity.
inline ExperimentConfig small_config() {
  ExperimentConfig c;
  c.catalog.n_files = 20;
  c.catalog.min_duration_s = 20;
  c.catalog.max_duration_s = 40;
  c.n_clients = 4;
  c.horizon_s = 600;
  c.alphas = {0.0, 1.0};
  c.cache_fractions = {0.1};
  c.seeds = {1, 2};
  return c;
}

struct World {
  Catalog catalog;
  RequestProfile profile;
};

inline World small_world(double alpha, std::uint64_t seed, const ExperimentConfig& c = small_config()) {
  World w;
  RandomStream rng(seed, 0);
  w.catalog = build_catalog(c.catalog, rng);
  w.profile = generate_profile(w.catalog, c.n_clients, c.popularity(alpha), c.mean_wait_s, c.horizon_s, seed);
  return w;
}

/// A fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("edgecast-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace edgecast::testing

#endif  // EDGECAST_TESTS_FIXTURES_HPP
