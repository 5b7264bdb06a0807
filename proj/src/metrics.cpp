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

#include "edgecast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "edgecast/textio.hpp"

namespace edgecast {

namespace {

Metric ratio(Bytes numer, Bytes denom) {
  if (denom == 0) return std::nullopt;
  return static_cast<double>(numer) / static_cast<double>(denom);
}

}  // namespace

Metric gain_caching(Bytes tx_nocache, Bytes tx_cache) { return ratio(tx_nocache, tx_cache); }
Metric gain_coding(Bytes tx_cache_nocode, Bytes tx_cache_code) { return ratio(tx_cache_nocode, tx_cache_code); }
Metric gain_combined(Bytes tx_nocache_nocode, Bytes tx_cache_code) { return ratio(tx_nocache_nocode, tx_cache_code); }

Metric latency_per_mb(std::span<const DeliveryRecord> trace) {
  if (trace.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& r : trace) {
    const double elapsed = sim_to_seconds(r.delivery_time - r.request_time);
    sum += elapsed / (static_cast<double>(r.size) / kBytesPerMB);
  }
  return sum / static_cast<double>(trace.size());
}

Metric perceived_throughput(std::span<const DeliveryRecord> trace) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : trace) {
    if (r.source != Source::Network) continue;
    const double elapsed = sim_to_seconds(r.delivery_time - r.request_time);
    if (!(elapsed > 0.0)) continue;  // unreachable at a finite link rate
    sum += static_cast<double>(r.size) * 8.0 / elapsed;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

MetricsReport make_report(Bytes tx_nocache, Bytes tx_cache, Bytes tx_cache_coded, std::uint64_t hits,
                          std::uint64_t misses, std::span<const DeliveryRecord> trace) {
  MetricsReport r;
  r.gain_caching = gain_caching(tx_nocache, tx_cache);
  r.gain_coding = gain_coding(tx_cache, tx_cache_coded);
  r.gain_combined = gain_combined(tx_nocache, tx_cache_coded);
  r.latency_per_mb = latency_per_mb(trace);
  r.perceived_throughput = perceived_throughput(trace);
  r.tx_bytes_nocache = tx_nocache;
  r.tx_bytes_cache = tx_cache;
  r.tx_bytes_cache_coded = tx_cache_coded;
  r.hits = hits;
  r.misses = misses;
  r.requests_completed = trace.size();
  return r;
}

std::array<Metric, kMetricColumns.size()> metric_values(const MetricsReport& r) {
  const auto d = [](auto v) { return Metric(static_cast<double>(v)); };
  return {r.gain_caching,     r.gain_coding,        r.gain_combined,          r.latency_per_mb,
          r.perceived_throughput, d(r.tx_bytes_nocache), d(r.tx_bytes_cache), d(r.tx_bytes_cache_coded),
          d(r.hits),          d(r.misses),          d(r.requests_completed)};
}

std::vector<AggregateRow> aggregate_sweep(std::span<const SweepCell> cells) {
  using Key = std::tuple<double, double, int>;
  std::map<Key, std::vector<const SweepCell*>> groups;
  for (const auto& c : cells) groups[{c.alpha, c.cache_fraction, static_cast<int>(c.policy)}].push_back(&c);

  std::vector<AggregateRow> rows;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(), [](const SweepCell* a, const SweepCell* b) { return a->seed < b->seed; });
    AggregateRow row;
    row.alpha = std::get<0>(key);
    row.cache_fraction = std::get<1>(key);
    row.policy = static_cast<Policy>(std::get<2>(key));
    row.n_seeds = members.size();
    for (std::size_t m = 0; m < kMetricColumns.size(); ++m) {
      std::vector<double> xs;
      for (const auto* c : members) {
        if (auto v = metric_values(c->report)[m]) xs.push_back(*v);
      }
      if (xs.empty()) continue;
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double ss = 0.0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      row.mean[m] = mean;
      row.sd[m] = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_metric(const Metric& m) { return m ? text::format_double(*m) : std::string(kNullMarker); }

namespace {

constexpr std::string_view kKeyColumns = "alpha,cache_fraction,policy,seed";
constexpr std::string_view kAggregateKeyColumns = "alpha,cache_fraction,policy,n_seeds";

std::string results_header() {
  std::string h(kKeyColumns);
  for (auto c : kMetricColumns) {
    h += ',';
    h += c;
  }
  return h;
}

std::string aggregate_header() {
  std::string h(kAggregateKeyColumns);
  for (auto c : kMetricColumns) {
    h += ',';
    h += c;
    h += "_mean,";
    h += c;
    h += "_sd";
  }
  return h;
}

Metric parse_metric(std::string_view s, std::size_t line) {
  s = text::trim(s);
  if (s == kNullMarker) return std::nullopt;
  return text::parse_double(s, line);
}

std::uint64_t count_or_zero(const Metric& m) { return m ? static_cast<std::uint64_t>(std::llround(*m)) : 0; }

}  // namespace

std::string format_results_csv(std::span<const SweepCell> cells) {
  std::string out = results_header() + '\n';
  for (const auto& c : cells) {
    out += text::format_double(c.alpha) + ',' + text::format_double(c.cache_fraction) + ',';
    out += to_string(c.policy);
    out += ',' + std::to_string(c.seed);
    for (const auto& v : metric_values(c.report)) out += ',' + format_metric(v);
    out += '\n';
  }
  return out;
}

std::vector<SweepCell> parse_results_csv(std::string_view contents) {
  text::LineReader reader(contents);
  std::string_view line;
  if (!reader.next(line) || line != results_header()) throw ParseError(reader.line_number(), "unexpected results header");
  std::vector<SweepCell> cells;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto ln = reader.line_number();
    const auto f = text::split(line, ',');
    if (f.size() != 4 + kMetricColumns.size()) throw ParseError(ln, "wrong number of results columns");
    SweepCell c;
    c.alpha = text::parse_double(f[0], ln);
    c.cache_fraction = text::parse_double(f[1], ln);
    try {
      c.policy = parse_policy(text::trim(f[2]));
    } catch (const ConfigError& e) {
      throw ParseError(ln, e.what());
    }
    c.seed = text::parse_u64(f[3], ln);
    std::array<Metric, kMetricColumns.size()> v;
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = parse_metric(f[4 + m], ln);
    auto& r = c.report;
    r.gain_caching = v[0];
    r.gain_coding = v[1];
    r.gain_combined = v[2];
    r.latency_per_mb = v[3];
    r.perceived_throughput = v[4];
    r.tx_bytes_nocache = count_or_zero(v[5]);
    r.tx_bytes_cache = count_or_zero(v[6]);
    r.tx_bytes_cache_coded = count_or_zero(v[7]);
    r.hits = count_or_zero(v[8]);
    r.misses = count_or_zero(v[9]);
    r.requests_completed = count_or_zero(v[10]);
    cells.push_back(c);
  }
  return cells;
}

std::string format_aggregate_csv(std::span<const AggregateRow> rows) {
  std::string out = aggregate_header() + '\n';
  for (const auto& r : rows) {
    out += text::format_double(r.alpha) + ',' + text::format_double(r.cache_fraction) + ',';
    out += to_string(r.policy);
    out += ',' + std::to_string(r.n_seeds);
    for (std::size_t m = 0; m < kMetricColumns.size(); ++m) {
      out += ',' + format_metric(r.mean[m]) + ',' + format_metric(r.sd[m]);
    }
    out += '\n';
  }
  return out;
}

std::vector<AggregateRow> parse_aggregate_csv(std::string_view contents) {
  text::LineReader reader(contents);
  std::string_view line;
  if (!reader.next(line) || text::trim(line) != aggregate_header()) {
    throw ParseError(reader.line_number(), "unexpected aggregated CSV header");
  }
  std::vector<AggregateRow> rows;
  while (reader.next(line)) {
    if (text::trim(line).empty()) continue;
    const auto ln = reader.line_number();
    const auto f = text::split(line, ',');
    if (f.size() != 4 + 2 * kMetricColumns.size()) throw ParseError(ln, "wrong number of aggregated columns");
    AggregateRow r;
    r.alpha = text::parse_double(f[0], ln);
    r.cache_fraction = text::parse_double(f[1], ln);
    try {
      r.policy = parse_policy(text::trim(f[2]));
    } catch (const ConfigError& e) {
      throw ParseError(ln, e.what());
    }
    r.n_seeds = text::parse_u64(f[3], ln);
    for (std::size_t m = 0; m < kMetricColumns.size(); ++m) {
      r.mean[m] = parse_metric(f[4 + 2 * m], ln);
      r.sd[m] = parse_metric(f[5 + 2 * m], ln);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace edgecast
