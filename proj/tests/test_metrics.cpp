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

#include <doctest.h>

#include <cmath>

#include "edgecast/metrics.hpp"
#include "support/fixtures.hpp"

using namespace edgecast;

namespace {

DeliveryRecord rec(double req_s, double deliv_s, Bytes size, Source src) {
  DeliveryRecord r;
  r.request_time = seconds_to_sim(req_s);
  r.delivery_time = seconds_to_sim(deliv_s);
  r.size = size;
  r.source = src;
  r.payload = src == Source::Network ? size : 0;
  r.group_size = src == Source::Network ? 1 : 0;
  return r;
}

SweepCell cell(double alpha, Policy p, std::uint64_t seed, double gci) {
  SweepCell c;
  c.alpha = alpha;
  c.cache_fraction = 0.05;
  c.policy = p;
  c.seed = seed;
  c.report.gain_combined = gci;
  return c;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("gain arithmetic") {
    CHECK(*gain_caching(7, 7) == 1.0);
    CHECK(*gain_caching(10'000'000'000ull, 5'000'000'000ull) == 2.0);
    CHECK(*gain_combined(12'000'000'000ull, 4'000'000'000ull) == 3.0);
    CHECK_FALSE(gain_coding(5, 0).has_value());
    CHECK(*gain_coding(0, 5) == 0.0);
  }

  TEST_CASE("latency per MB") {
    const std::vector<DeliveryRecord> hits = {rec(1, 1, 2'000'000, Source::Cache), rec(2, 2, 1'000'000, Source::Cache)};
    CHECK(*latency_per_mb(hits) == 0.0);
    const std::vector<DeliveryRecord> one = {rec(0, 0.7, 2'000'000, Source::Network)};
    CHECK(*latency_per_mb(one) == doctest::Approx(0.35).epsilon(1e-12));
    CHECK_FALSE(latency_per_mb({}).has_value());
  }

  TEST_CASE("throughput ignores hits and is undefined without network records") {
    const std::vector<DeliveryRecord> mixed = {rec(0, 1, 3'000'000, Source::Network), rec(5, 5, 1, Source::Cache)};
    CHECK(*perceived_throughput(mixed) == doctest::Approx(24e6).epsilon(1e-12));
    const std::vector<DeliveryRecord> hits = {rec(5, 5, 1, Source::Cache)};
    CHECK_FALSE(perceived_throughput(hits).has_value());
  }

  TEST_CASE("combined gain factors exactly on shared profiles") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      for (double alpha : {0.0, 0.5, 1.0}) {
        const auto w = testing::small_world(alpha, seed);
        const auto cfg = testing::small_config();
        const auto base = run(cfg.sim_config(0.0, Policy::Lru, false, seed), w.profile, w.catalog);
        const auto off = run(cfg.sim_config(0.1, Policy::Lfu, false, seed), w.profile, w.catalog);
        const auto on = run(cfg.sim_config(0.1, Policy::Lfu, true, seed), w.profile, w.catalog);
        const auto r = make_report(base.tx_bytes, off.tx_bytes, on.tx_bytes, on.hits, on.misses, on.deliveries);
        CHECK(std::abs(*r.gain_combined - *r.gain_caching * *r.gain_coding) / *r.gain_combined <= 1e-12);
        if (alpha == 0.0) {
          CHECK(*r.gain_caching == 1.0);
          CHECK(*r.gain_coding >= 1.0);
        }
      }
    }
  }

  TEST_CASE("aggregation") {
    const std::vector<SweepCell> one = {cell(0.5, Policy::Lru, 1, 1.5)};
    auto rows = aggregate_sweep(one);
    REQUIRE(rows.size() == 1);
    CHECK(*rows[0].mean[2] == 1.5);
    CHECK(*rows[0].sd[2] == 0.0);
    CHECK_FALSE(rows[0].mean[3].has_value());  // never defined

    const std::vector<SweepCell> dup = {cell(0.5, Policy::Lru, 1, 1.5), cell(0.5, Policy::Lru, 2, 1.5)};
    CHECK(*aggregate_sweep(dup)[0].sd[2] == 0.0);

    const std::vector<SweepCell> spread = {cell(0.5, Policy::Lru, 2, 3.0), cell(0.5, Policy::Lru, 1, 1.0),
                                           cell(0.0, Policy::Lfu, 1, 2.0)};
    rows = aggregate_sweep(spread);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].alpha == 0.0);
    CHECK(*rows[1].mean[2] == 2.0);
    CHECK(*rows[1].sd[2] == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("CSV round trips keep null markers") {
    std::vector<SweepCell> cells = {cell(0.25, Policy::LfuIndex, 3, 1.25), cell(1, Policy::Belady, 1, 2)};
    cells[0].report.tx_bytes_nocache = 123456789012ull;
    cells[0].report.latency_per_mb = 0.1 + 0.2;
    const auto text = format_results_csv(cells);
    CHECK(text.find(",null,") != std::string::npos);
    CHECK(parse_results_csv(text) == cells);
    const auto rows = aggregate_sweep(cells);
    const auto agg = format_aggregate_csv(rows);
    CHECK(format_aggregate_csv(parse_aggregate_csv(agg)) == agg);
  }

  TEST_CASE("malformed aggregated CSV names the line") {
    const std::vector<SweepCell> cells = {cell(0.25, Policy::Lru, 3, 1.25)};
    auto agg = format_aggregate_csv(aggregate_sweep(cells));
    agg += "0.5,0.05,lru,1,oops\n";
    try {
      parse_aggregate_csv(agg);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("metrics recomputed from a stored trace match exactly") {
    const auto w = testing::small_world(1.0, 3);
    const auto r = run(testing::small_config().sim_config(0.1, Policy::LfuIndex, true, 3), w.profile, w.catalog);
    const auto back = parse_trace(format_trace(r.deliveries));
    CHECK(format_metric(latency_per_mb(back)) == format_metric(latency_per_mb(r.deliveries)));
    CHECK(format_metric(perceived_throughput(back)) == format_metric(perceived_throughput(r.deliveries)));
  }
}
