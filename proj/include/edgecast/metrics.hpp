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

#ifndef EDGECAST_METRICS_HPP
#define EDGECAST_METRICS_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/cache.hpp"
#include "edgecast/engine.hpp"

namespace edgecast {

/// nullopt marks an undefined value (zero denominator, nothing to average).
using Metric = std::optional<double>;

inline constexpr std::string_view kNullMarker = "null";

/// TX with no cache / TX with cache, both without coding.
Metric gain_caching(Bytes tx_nocache, Bytes tx_cache);
/// TX with cache, no coding / TX with cache and coding.
Metric gain_coding(Bytes tx_cache_nocode, Bytes tx_cache_code);
/// TX with neither / TX with both.
Metric gain_combined(Bytes tx_nocache_nocode, Bytes tx_cache_code);

/// Mean of elapsed seconds per MB over every delivery; hits contribute 0.
Metric latency_per_mb(std::span<const DeliveryRecord> trace);
/// Mean of wanted bits per elapsed second over network deliveries.
Metric perceived_throughput(std::span<const DeliveryRecord> trace);

struct MetricsReport {
  Metric gain_caching;
  Metric gain_coding;
  Metric gain_combined;
  Metric latency_per_mb;
  Metric perceived_throughput;
  Bytes tx_bytes_nocache = 0;
  Bytes tx_bytes_cache = 0;
  Bytes tx_bytes_cache_coded = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t requests_completed = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Combines the TX totals of a shared-profile triple with the trace of the
/// run whose latency and throughput are reported.
MetricsReport make_report(Bytes tx_nocache, Bytes tx_cache, Bytes tx_cache_coded, std::uint64_t hits,
                          std::uint64_t misses, std::span<const DeliveryRecord> trace);

struct SweepCell {
  double alpha = 0.0;
  double cache_fraction = 0.0;
  Policy policy = Policy::Lru;
  std::uint64_t seed = 0;
  MetricsReport report;

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

/// Column stems shared by the per-run and aggregated CSVs.
inline constexpr std::array<std::string_view, 11> kMetricColumns = {
    "g_c",           "g_i",           "g_ci",  "latency_s_per_mb",
    "throughput_bps", "tx_bytes_nocache", "tx_bytes_cache", "tx_bytes_cache_coded",
    "hits",          "misses",        "requests_completed"};

/// Metric values in kMetricColumns order.
std::array<Metric, kMetricColumns.size()> metric_values(const MetricsReport& r);

struct AggregateRow {
  double alpha = 0.0;
  double cache_fraction = 0.0;
  Policy policy = Policy::Lru;
  std::size_t n_seeds = 0;
  std::array<Metric, kMetricColumns.size()> mean;
  std::array<Metric, kMetricColumns.size()> sd;  // sample standard deviation
};

/// Groups cells by (alpha, M, policy) and summarizes each metric over seeds.
/// Undefined values are skipped; a metric with no defined values stays
/// undefined. Rows come out sorted by alpha, M, then policy.
std::vector<AggregateRow> aggregate_sweep(std::span<const SweepCell> cells);

std::string format_metric(const Metric& m);

std::string format_results_csv(std::span<const SweepCell> cells);
std::vector<SweepCell> parse_results_csv(std::string_view text);
std::string format_aggregate_csv(std::span<const AggregateRow> rows);
/// Throws ParseError naming the offending line.
std::vector<AggregateRow> parse_aggregate_csv(std::string_view text);

}  // namespace edgecast

#endif  // EDGECAST_METRICS_HPP
