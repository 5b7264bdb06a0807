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

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "edgecast/commands.hpp"
#include "edgecast/textio.hpp"

namespace {

using namespace edgecast;

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string profile;
  std::string policy;
  bool coding = false;
  std::optional<double> cache_fraction;
  std::string out;
  unsigned jobs = 1;
  bool no_resume = false;
  bool quiet = false;
  std::string input;
};

ExperimentConfig load(const Args& a) {
  auto c = load_config(a.config);
  if (!a.out.empty()) c.output_dir = a.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgecast: cached, index-coded video delivery simulator"};
  app.require_subcommand(1);
  Args a;

  auto* gen = app.add_subcommand("gen-profile", "Write the catalog and per-alpha request profiles for one seed");
  gen->add_option("--config", a.config, "Experiment YAML")->required();
  gen->add_option("--seed", a.seed, "Seed (default: first configured seed)");
  gen->add_option("--out", a.out, "Output directory (overrides output.dir)");

  auto* runc = app.add_subcommand("run", "Simulate one profile under one policy");
  runc->add_option("--config", a.config, "Experiment YAML")->required();
  runc->add_option("--profile", a.profile, "Profile file written by gen-profile")->required();
  runc->add_option("--policy", a.policy, "Eviction policy")
      ->required()
      ->check(CLI::IsMember({"lru", "lfu", "belady", "lfu-index"}));
  runc->add_flag("--coding", a.coding, "Enable index coding");
  runc->add_option("--cache-fraction", a.cache_fraction, "Cache size as a fraction of the catalog");
  runc->add_option("--out", a.out, "Run directory");

  auto* sweep = app.add_subcommand("sweep", "Run the full alpha x M x policy x seed grid");
  sweep->add_option("--config", a.config, "Experiment YAML")->required();
  sweep->add_option("--jobs", a.jobs, "Parallel cells (0: all cores)");
  sweep->add_option("--out", a.out, "Output directory (overrides output.dir)");
  sweep->add_flag("--no-resume", a.no_resume, "Recompute cells that already have verified outputs");
  sweep->add_flag("--quiet", a.quiet, "No per-cell progress lines");

  auto* report = app.add_subcommand("report", "Plot an aggregated CSV");
  report->add_option("--input", a.input, "aggregated.csv from a sweep")->required();
  report->add_option("--out", a.out, "Plot directory")->required();

  auto* defaults = app.add_subcommand("default-config", "Print the default configuration");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto files = cmd_gen_profile(load(a), a.seed);
      std::cout << files.catalog.string() << '\n';
      for (const auto& p : files.profiles) std::cout << p.string() << '\n';
    } else if (*runc) {
      const auto config = load_config(a.config);
      RunRequest req;
      req.profile = a.profile;
      req.policy = parse_policy(a.policy);
      req.coding = a.coding;
      req.cache_fraction = a.cache_fraction;
      if (!a.out.empty()) req.out_dir = a.out;
      const auto r = cmd_run(config, req);
      std::cout << r.dir.string() << '\n';
      std::cout << "g_c=" << format_metric(r.row.report.gain_caching) << " g_i=" << format_metric(r.row.report.gain_coding)
                << " g_ci=" << format_metric(r.row.report.gain_combined) << '\n';
    } else if (*sweep) {
      SweepOptions opts;
      opts.jobs = a.jobs;
      opts.resume = !a.no_resume;
      if (!a.quiet) opts.log = [](std::string_view line) { std::cerr << line << '\n'; };
      const auto config = load(a);
      const auto out = cmd_sweep(config, opts);
      std::cout << (config.output_dir / "aggregated.csv").string() << '\n';
      std::cerr << out.runs_executed << " runs, " << out.cells_resumed << " cells resumed\n";
    } else if (*report) {
      const auto files = cmd_report(a.input, a.out);
      for (const auto& p : files.plots) std::cout << p.string() << '\n';
      std::cout << files.summary.string() << '\n';
    } else if (*defaults) {
      std::cout << default_config_yaml();
    }
  } catch (const ParseError& e) {
    std::cerr << "edgecast: parse error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "edgecast: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "edgecast: I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "edgecast: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
