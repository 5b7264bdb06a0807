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

#include "edgecast/commands.hpp"

#include <sstream>

#include "edgecast/textio.hpp"

namespace edgecast {

namespace fs = std::filesystem;

GenProfileFiles cmd_gen_profile(const ExperimentConfig& config, std::optional<std::uint64_t> seed) {
  config.validate();
  const auto s = seed.value_or(config.seeds.front());
  const auto catalog = make_catalog(config, s);
  GenProfileFiles files;
  files.catalog = config.output_dir / catalog_path(s);
  text::write_file_atomic(files.catalog, format_catalog(catalog));
  for (double a : config.alphas) {
    const auto path = config.output_dir / profile_path(a, s);
    text::write_file_atomic(path, format_profile(make_profile(config, catalog, a, s)));
    files.profiles.push_back(path);
  }
  return files;
}

RunFiles cmd_run(const ExperimentConfig& config, const RunRequest& request) {
  config.validate();
  const auto profile = parse_profile(text::read_file(request.profile));
  if (profile.catalog_file.empty()) throw ConfigError("profile " + request.profile.string() + " names no catalog file");
  const auto catalog_file = request.profile.parent_path() / profile.catalog_file;
  const auto catalog = parse_catalog(text::read_file(catalog_file));
  if (catalog_hash(catalog) != profile.catalog_hash) {
    throw ConfigError("stale profile " + request.profile.string() + ": catalog hash does not match " +
                      catalog_file.string());
  }
  const double m = request.cache_fraction.value_or(config.cache_fractions.front());
  auto sim = [&](double fraction, bool coding) {
    return config.sim_config(fraction, request.policy, coding, profile.seed);
  };

  const auto name = request.profile.stem().string() + "_" + std::string(to_string(request.policy)) + "_m" +
                    text::format_double(m) + (request.coding ? "_coded" : "_uncoded");
  RunFiles files;
  files.dir = request.out_dir.value_or(config.output_dir / "runs" / name);

  std::ostringstream cache_trace, coding_trace;
  TraceSinks sinks{&cache_trace, request.coding ? &coding_trace : nullptr};
  const auto baseline = run(sim(0.0, false), profile, catalog);
  // The requested run carries the traces; its counterpart only supplies TX bytes.
  const auto main = run(sim(m, request.coding), profile, catalog, sinks);
  const auto other = run(sim(m, !request.coding), profile, catalog);
  const auto& uncoded = request.coding ? other : main;
  const auto& coded = request.coding ? main : other;

  files.row = SweepCell{profile.params.alpha, m, request.policy, profile.seed,
                        make_report(baseline.tx_bytes, uncoded.tx_bytes, coded.tx_bytes, main.hits, main.misses,
                                    main.deliveries)};
  files.diagnostics.hits_nocode = uncoded.hits;
  files.diagnostics.absorb(main, config.link_rate_bps);

  text::write_file_atomic(files.dir / "trace.csv", format_trace(main.deliveries));
  text::write_file_atomic(files.dir / "transmissions.csv", format_transmissions(main.transmissions));
  text::write_file_atomic(files.dir / "cache_trace.csv", cache_trace.str());
  if (request.coding) {
    text::write_file_atomic(files.dir / "coding_trace.csv", coding_trace.str());
  } else {
    std::error_code ec;
    fs::remove(files.dir / "coding_trace.csv", ec);  // never leave a stale one behind
  }
  const SweepCell rows[] = {files.row};
  text::write_file_atomic(files.dir / "results.csv", format_results_csv(rows));
  return files;
}

SweepOutcome cmd_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  return run_sweep(config, options);
}

ReportFiles cmd_report(const fs::path& input, const fs::path& out_dir) {
  return write_report(text::read_file(input), out_dir);
}

}  // namespace edgecast
