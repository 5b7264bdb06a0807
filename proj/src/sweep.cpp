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

#include "edgecast/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "edgecast/random.hpp"
#include "edgecast/textio.hpp"

namespace edgecast {

namespace fs = std::filesystem;
using nlohmann::json;

Catalog make_catalog(const ExperimentConfig& config, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return build_catalog(config.catalog, rng);
}

RequestProfile make_profile(const ExperimentConfig& config, const Catalog& catalog, double alpha, std::uint64_t seed) {
  auto p = generate_profile(catalog, config.n_clients, config.popularity(alpha), config.mean_wait_s, config.horizon_s,
                            seed);
  p.catalog_file = "../" + catalog_path(seed);
  return p;
}

std::string catalog_path(std::uint64_t seed) { return "catalogs/catalog_s" + std::to_string(seed) + ".txt"; }

std::string profile_path(double alpha, std::uint64_t seed) {
  return "profiles/profile_s" + std::to_string(seed) + "_a" + text::format_double(alpha) + ".txt";
}

std::string cell_dir(double alpha, double cache_fraction, std::uint64_t seed) {
  return "cells/a" + text::format_double(alpha) + "_m" + text::format_double(cache_fraction) + "_s" +
         std::to_string(seed);
}

void RunDiagnostics::absorb(const RunResult& r, std::uint64_t link_rate_bps) {
  decode_violations += r.decode_violations;
  idle_violations += r.idle_violations;
  invariant_violations += r.invariant_violations;
  for (const auto& d : r.deliveries) {
    if (d.source != Source::Network) continue;
    using Wide = unsigned __int128;
    const auto elapsed_ns = static_cast<Wide>(d.delivery_time - d.request_time);
    if (static_cast<Wide>(d.size) * 8 * kNanosPerSecond > elapsed_ns * link_rate_bps) ++rate_violations;
    const double elapsed = sim_to_seconds(d.delivery_time - d.request_time);
    const double lat = elapsed / (static_cast<double>(d.size) / kBytesPerMB);
    if (!min_network_latency_s_per_mb || lat < *min_network_latency_s_per_mb) min_network_latency_s_per_mb = lat;
    if (elapsed > 0.0) {
      const double tp = static_cast<double>(d.size) * 8.0 / elapsed;
      if (!max_throughput_bps || tp > *max_throughput_bps) max_throughput_bps = tp;
    }
  }
}

std::vector<std::pair<SweepCell, RunDiagnostics>> run_cell(const ExperimentConfig& config, const Catalog& catalog,
                                                           const RequestProfile& profile, double alpha,
                                                           double cache_fraction, std::uint64_t seed,
                                                           bool check_invariants,
                                                           const std::function<void(Policy, const CellRuns&)>& keep) {
  const auto sim = [&](double m, Policy p, bool coding) {
    auto c = config.sim_config(m, p, coding, seed);
    c.check_invariants = check_invariants;
    return run(c, profile, catalog);
  };
  CellRuns runs;
  runs.baseline = sim(0.0, Policy::Lru, false);
  std::vector<std::pair<SweepCell, RunDiagnostics>> out;
  for (Policy p : config.policies) {
    runs.cache = sim(cache_fraction, p, false);
    runs.coded = sim(cache_fraction, p, true);
    SweepCell cell{alpha, cache_fraction, p, seed,
                   make_report(runs.baseline.tx_bytes, runs.cache.tx_bytes, runs.coded.tx_bytes, runs.coded.hits,
                               runs.coded.misses, runs.coded.deliveries)};
    RunDiagnostics diag;
    diag.hits_nocode = runs.cache.hits;
    diag.absorb(runs.baseline, config.link_rate_bps);
    diag.absorb(runs.cache, config.link_rate_bps);
    diag.absorb(runs.coded, config.link_rate_bps);
    if (keep) keep(p, runs);
    out.emplace_back(std::move(cell), diag);
  }
  return out;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json diagnostics_json(Policy p, const RunDiagnostics& d) {
  return json{{"policy", std::string(to_string(p))},
              {"hits_nocode", d.hits_nocode},
              {"decode_violations", d.decode_violations},
              {"idle_violations", d.idle_violations},
              {"invariant_violations", d.invariant_violations},
              {"rate_violations", d.rate_violations},
              {"max_throughput_bps", optional_json(d.max_throughput_bps)},
              {"min_network_latency_s_per_mb", optional_json(d.min_network_latency_s_per_mb)}};
}

RunDiagnostics diagnostics_from(const json& j) {
  RunDiagnostics d;
  d.hits_nocode = j.at("hits_nocode").get<std::uint64_t>();
  d.decode_violations = j.at("decode_violations").get<std::uint64_t>();
  d.idle_violations = j.at("idle_violations").get<std::uint64_t>();
  d.invariant_violations = j.at("invariant_violations").get<std::uint64_t>();
  d.rate_violations = j.at("rate_violations").get<std::uint64_t>();
  d.max_throughput_bps = optional_from(j.at("max_throughput_bps"));
  d.min_network_latency_s_per_mb = optional_from(j.at("min_network_latency_s_per_mb"));
  return d;
}

struct CellTask {
  double alpha;
  double cache_fraction;
  std::uint64_t seed;
  std::size_t profile_slot;
  std::size_t catalog_slot;
};

using CellRows = std::vector<std::pair<SweepCell, RunDiagnostics>>;

// A cell is reusable when its stamp names this config and its results file
// still hashes to the stamped value.
std::optional<CellRows> try_resume(const fs::path& dir, const ExperimentConfig& config, const std::string& config_hash) {
  try {
    const auto stamp_path = dir / "stamp.json";
    if (!fs::exists(stamp_path)) return std::nullopt;
    const auto stamp = json::parse(text::read_file(stamp_path));
    if (stamp.at("config_hash").get<std::string>() != config_hash) return std::nullopt;
    std::vector<std::string> files;
    for (const auto& f : stamp.at("files")) {
      files.push_back(f.get<std::string>());
      if (!fs::exists(dir / files.back())) return std::nullopt;
    }
    if (config.write_traces) {
      for (Policy p : config.policies) {
        const auto name = "trace_" + std::string(to_string(p)) + ".csv";
        if (std::find(files.begin(), files.end(), name) == files.end()) return std::nullopt;
      }
    }
    const auto results = text::read_file(dir / "results.csv");
    if (text::hex64(text::fnv1a(results)) != stamp.at("results_hash").get<std::string>()) return std::nullopt;
    const auto cells = parse_results_csv(results);
    const auto& diags = stamp.at("diagnostics");
    if (cells.size() != config.policies.size() || diags.size() != cells.size()) return std::nullopt;
    CellRows rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].policy != config.policies[i]) return std::nullopt;
      rows.emplace_back(cells[i], diagnostics_from(diags[i]));
    }
    return rows;
  } catch (const std::exception&) {
    return std::nullopt;  // anything unreadable is simply recomputed
  }
}

void write_if_changed(const fs::path& path, std::string_view contents) {
  if (fs::exists(path)) {
    try {
      if (text::read_file(path) == contents) return;
    } catch (const IoError&) {
    }
  }
  text::write_file_atomic(path, contents);
}

}  // namespace

SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  config.validate();
  const auto root = config.output_dir;
  const auto config_hash = text::hex64(config.hash());
  std::mutex log_mutex;
  const auto log = [&](const std::string& line) {
    if (!options.log) return;
    std::lock_guard lock(log_mutex);
    options.log(line);
  };

  std::vector<Catalog> catalogs;
  for (auto seed : config.seeds) catalogs.push_back(make_catalog(config, seed));
  std::vector<RequestProfile> profiles;  // alpha-major
  for (double a : config.alphas) {
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      profiles.push_back(make_profile(config, catalogs[s], a, config.seeds[s]));
    }
  }
  if (options.write_outputs) {
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      write_if_changed(root / catalog_path(config.seeds[s]), format_catalog(catalogs[s]));
    }
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      for (std::size_t s = 0; s < config.seeds.size(); ++s) {
        write_if_changed(root / profile_path(config.alphas[a], config.seeds[s]),
                         format_profile(profiles[a * config.seeds.size() + s]));
      }
    }
  }

  std::vector<CellTask> tasks;
  for (std::size_t a = 0; a < config.alphas.size(); ++a) {
    for (double m : config.cache_fractions) {
      for (std::size_t s = 0; s < config.seeds.size(); ++s) {
        tasks.push_back({config.alphas[a], m, config.seeds[s], a * config.seeds.size() + s, s});
      }
    }
  }

  std::vector<CellRows> rows(tasks.size());
  std::vector<char> resumed(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> runs{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto& t = tasks[i];
      const auto rel = cell_dir(t.alpha, t.cache_fraction, t.seed);
      const auto dir = root / rel;
      try {
        if (options.write_outputs && options.resume) {
          if (auto r = try_resume(dir, config, config_hash)) {
            rows[i] = std::move(*r);
            resumed[i] = 1;
            log("resumed " + rel);
            continue;
          }
        }
        std::vector<std::string> files{"results.csv"};
        const bool traces = options.write_outputs && config.write_traces;
        rows[i] = run_cell(config, catalogs[t.catalog_slot], profiles[t.profile_slot], t.alpha, t.cache_fraction,
                           t.seed, options.check_invariants, [&](Policy p, const CellRuns& r) {
                             if (!traces) return;
                             const std::string name(to_string(p));
                             text::write_file_atomic(dir / ("trace_" + name + ".csv"),
                                                     format_trace(r.coded.deliveries));
                             text::write_file_atomic(dir / ("tx_" + name + ".csv"),
                                                     format_transmissions(r.coded.transmissions));
                             files.push_back("trace_" + name + ".csv");
                             files.push_back("tx_" + name + ".csv");
                           });
        runs += 1 + 2 * config.policies.size();
        if (options.write_outputs) {
          std::vector<SweepCell> cells;
          json diags = json::array();
          for (const auto& [c, d] : rows[i]) {
            cells.push_back(c);
            diags.push_back(diagnostics_json(c.policy, d));
          }
          const auto results = format_results_csv(cells);
          text::write_file_atomic(dir / "results.csv", results);
          const json stamp{{"config_hash", config_hash},
                           {"tool_version", std::string(kToolVersion)},
                           {"results_hash", text::hex64(text::fnv1a(results))},
                           {"files", files},
                           {"diagnostics", diags}};
          text::write_file_atomic(dir / "stamp.json", stamp.dump(2) + "\n");  // written last: marks completion
        }
        log("done " + rel);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepOutcome out;
  out.runs_executed = runs.load();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out.cells_resumed += resumed[i];
    for (auto& [c, d] : rows[i]) {
      out.cells.push_back(c);
      out.diagnostics.push_back(d);
    }
  }
  out.aggregate = aggregate_sweep(out.cells);

  if (options.write_outputs) {
    text::write_file_atomic(root / "results.csv", format_results_csv(out.cells));
    text::write_file_atomic(root / "aggregated.csv", format_aggregate_csv(out.aggregate));
    json cells = json::array();
    for (const auto& t : tasks) {
      const auto rel = cell_dir(t.alpha, t.cache_fraction, t.seed);
      json traces = json::array();
      if (config.write_traces) {
        for (Policy p : config.policies) {
          const std::string name(to_string(p));
          traces.push_back(rel + "/trace_" + name + ".csv");
          traces.push_back(rel + "/tx_" + name + ".csv");
        }
      }
      cells.push_back({{"alpha", t.alpha},
                       {"cache_fraction", t.cache_fraction},
                       {"seed", t.seed},
                       {"profile", profile_path(t.alpha, t.seed)},
                       {"catalog", catalog_path(t.seed)},
                       {"results", rel + "/results.csv"},
                       {"traces", traces}});
    }
    const json manifest{{"tool_version", std::string(kToolVersion)},
                        {"config_hash", config_hash},
                        {"results", "results.csv"},
                        {"aggregated", "aggregated.csv"},
                        {"cells", cells}};
    text::write_file_atomic(root / "manifest.json", manifest.dump(2) + "\n");
  }
  return out;
}

}  // namespace edgecast
