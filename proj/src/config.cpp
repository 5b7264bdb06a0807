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

#include "edgecast/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <initializer_list>

#include "edgecast/textio.hpp"

namespace edgecast {

void ExperimentConfig::validate() const {
  catalog.validate();
  PopularityParams p;
  p.n_files = catalog.n_files;
  p.gamma = gamma;
  p.q = q;
  for (double a : alphas) {
    p.alpha = a;
    p.validate();
  }
  if (!(mean_wait_s > 0.0)) throw ConfigError("workload.mean_wait_s must be > 0");
  if (!(horizon_s > 0.0)) throw ConfigError("workload.horizon_s must be > 0");
  if (alphas.empty()) throw ConfigError("workload.alphas must not be empty");
  if (cache_fractions.empty()) throw ConfigError("system.cache_fractions must not be empty");
  if (policies.empty()) throw ConfigError("system.policies must not be empty");
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  for (double m : cache_fractions) {
    if (!(m > 0.0 && m <= 1.0)) throw ConfigError("system.cache_fractions entries must be in (0, 1]");
  }
  const auto unique = [](auto v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!unique(alphas)) throw ConfigError("workload.alphas has duplicates");
  if (!unique(cache_fractions)) throw ConfigError("system.cache_fractions has duplicates");
  if (!unique(policies)) throw ConfigError("system.policies has duplicates");
  if (!unique(seeds)) throw ConfigError("seeds has duplicates");
  sim_config(cache_fractions.front(), policies.front(), true, seeds.front()).validate();
}

PopularityParams ExperimentConfig::popularity(double alpha) const {
  PopularityParams p;
  p.n_files = catalog.n_files;
  p.gamma = gamma;
  p.q = q;
  p.alpha = alpha;
  return p;
}

SimConfig ExperimentConfig::sim_config(double cache_fraction, Policy policy, bool coding, std::uint64_t seed) const {
  SimConfig s;
  s.n_clients = n_clients;
  s.link_rate_bps = link_rate_bps;
  s.horizon_s = sim_horizon_s;
  s.cache_fraction = cache_fraction;
  s.policy = policy;
  s.coding = coding;
  s.backhaul_delay_s = backhaul_delay_s;
  s.seed = seed;
  return s;
}

std::string ExperimentConfig::canonical() const {
  using text::format_double;
  const auto list = [](const auto& v, auto fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s + "]";
  };
  const auto dbl = [](double d) { return format_double(d); };
  std::string out;
  out += "catalog.n_files=" + std::to_string(catalog.n_files) + "\n";
  out += "catalog.duration_s=" + format_double(catalog.min_duration_s) + "," + format_double(catalog.max_duration_s) + "\n";
  out += "catalog.segment_duration_s=" + format_double(catalog.segment_duration_s) + "\n";
  out += "catalog.segment_size.family=" + std::string(to_string(catalog.size_model.family)) + "\n";
  out += "catalog.segment_size.mean_bytes=" + format_double(catalog.size_model.mean_bytes) + "\n";
  out += "catalog.segment_size.sigma=" + format_double(catalog.size_model.sigma) + "\n";
  out += "catalog.segment_size.min_bytes=" + format_double(catalog.size_model.min_bytes) + "\n";
  out += "catalog.segment_size.max_bytes=" + format_double(catalog.size_model.max_bytes) + "\n";
  out += "popularity.gamma=" + format_double(gamma) + "\n";
  out += "popularity.q=" + format_double(q) + "\n";
  out += "workload.mean_wait_s=" + format_double(mean_wait_s) + "\n";
  out += "workload.horizon_s=" + format_double(horizon_s) + "\n";
  out += "workload.alphas=" + list(alphas, dbl) + "\n";
  out += "system.n_clients=" + std::to_string(n_clients) + "\n";
  out += "system.link_rate_bps=" + std::to_string(link_rate_bps) + "\n";
  out += "system.cache_fractions=" + list(cache_fractions, dbl) + "\n";
  out += "system.policies=" + list(policies, [](Policy p) { return std::string(to_string(p)); }) + "\n";
  out += "system.backhaul_delay_s=" + format_double(backhaul_delay_s) + "\n";
  out += "system.sim_horizon_s=" + (sim_horizon_s ? format_double(*sim_horizon_s) : std::string("none")) + "\n";
  out += "seeds=" + list(seeds, [](std::uint64_t s) { return std::to_string(s); }) + "\n";
  return out;
}

std::uint64_t ExperimentConfig::hash() const { return text::fnv1a(canonical()); }

namespace {

void check_keys(const YAML::Node& node, std::string_view section, std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) throw ConfigError(std::string(section) + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + (section.empty() ? key : std::string(section) + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out, std::string_view section) {
  if (!node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for '" + std::string(section) + "." + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view yaml) {
  ExperimentConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) {
    cfg.validate();
    return cfg;
  }
  check_keys(root, "", {"catalog", "popularity", "workload", "system", "seeds", "output"});

  if (const auto c = root["catalog"]) {
    check_keys(c, "catalog", {"n_files", "duration_s", "segment_duration_s", "segment_size"});
    read(c, "n_files", cfg.catalog.n_files, "catalog");
    if (c["duration_s"]) {
      std::vector<double> range;
      read(c, "duration_s", range, "catalog");
      if (range.size() != 2) throw ConfigError("catalog.duration_s must be [min, max]");
      cfg.catalog.min_duration_s = range[0];
      cfg.catalog.max_duration_s = range[1];
    }
    read(c, "segment_duration_s", cfg.catalog.segment_duration_s, "catalog");
    if (const auto s = c["segment_size"]) {
      check_keys(s, "catalog.segment_size", {"family", "mean_bytes", "sigma", "min_bytes", "max_bytes"});
      if (s["family"]) cfg.catalog.size_model.family = parse_size_family(s["family"].as<std::string>());
      auto& m = cfg.catalog.size_model;
      read(s, "mean_bytes", m.mean_bytes, "catalog.segment_size");
      read(s, "sigma", m.sigma, "catalog.segment_size");
      read(s, "min_bytes", m.min_bytes, "catalog.segment_size");
      read(s, "max_bytes", m.max_bytes, "catalog.segment_size");
    }
  }
  if (const auto p = root["popularity"]) {
    check_keys(p, "popularity", {"gamma", "q"});
    read(p, "gamma", cfg.gamma, "popularity");
    read(p, "q", cfg.q, "popularity");
  }
  if (const auto w = root["workload"]) {
    check_keys(w, "workload", {"mean_wait_s", "horizon_s", "alphas"});
    read(w, "mean_wait_s", cfg.mean_wait_s, "workload");
    read(w, "horizon_s", cfg.horizon_s, "workload");
    read(w, "alphas", cfg.alphas, "workload");
  }
  if (const auto s = root["system"]) {
    check_keys(s, "system", {"n_clients", "link_rate_bps", "cache_fractions", "policies", "backhaul_delay_s",
                             "sim_horizon_s"});
    read(s, "n_clients", cfg.n_clients, "system");
    read(s, "link_rate_bps", cfg.link_rate_bps, "system");
    read(s, "cache_fractions", cfg.cache_fractions, "system");
    if (s["policies"]) {
      std::vector<std::string> names;
      read(s, "policies", names, "system");
      cfg.policies.clear();
      for (const auto& n : names) cfg.policies.push_back(parse_policy(n));
    }
    read(s, "backhaul_delay_s", cfg.backhaul_delay_s, "system");
    if (s["sim_horizon_s"] && !s["sim_horizon_s"].IsNull()) {
      double h = 0.0;
      read(s, "sim_horizon_s", h, "system");
      cfg.sim_horizon_s = h;
    }
  }
  if (root["seeds"]) read(root, "seeds", cfg.seeds, "");
  if (const auto o = root["output"]) {
    check_keys(o, "output", {"dir", "write_traces"});
    if (o["dir"]) cfg.output_dir = o["dir"].as<std::string>();
    read(o, "write_traces", cfg.write_traces, "output");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(text::read_file(path)); }

std::string default_config_yaml() {
  return R"(# edgecast experiment configuration
catalog:
  n_files: 100
  duration_s: [120, 300]      # uniform file length range
  segment_duration_s: 4
  segment_size:
    family: lognormal         # lognormal | uniform | constant
    mean_bytes: 2500000       # 5 Mbit/s x 4 s
    sigma: 0.25               # log-space spread
    min_bytes: 500000
    max_bytes: 6000000
popularity:
  gamma: 2.5
  q: 10
workload:
  mean_wait_s: 5
  horizon_s: 10800            # client activity covered by each profile
  alphas: [0, 0.25, 0.5, 0.75, 1.0]
system:
  n_clients: 10
  link_rate_bps: 24000000
  cache_fractions: [0.05, 0.10, 0.15]
  policies: [lru, lfu, belady, lfu-index]
  backhaul_delay_s: 0
  sim_horizon_s: null         # null: serve every profile entry
seeds: [1, 2, 3]
output:
  dir: edgecast-out
  write_traces: true
)";
}

}  // namespace edgecast
