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

#include <map>
#include <random>

#include "edgecast/cache.hpp"
#include "support/oracles.hpp"

using namespace edgecast;

namespace {

const SegmentId A{1, 1}, B{1, 2}, C{2, 1}, D{3, 1};

struct Fixture {
  std::vector<GlobalRecord> g;
  std::vector<LocalRecord> l;
  std::vector<ResidentSegment> r;

  Fixture(std::initializer_list<std::tuple<SegmentId, SimTime, std::uint64_t, std::uint32_t, SimTime>> rows) {
    g.reserve(rows.size());
    l.reserve(rows.size());
    for (const auto& [id, bg, cg, tau, bl] : rows) {
      g.push_back({bg, cg, tau});
      l.push_back({bl, 1});
      r.push_back({id, 1, &g.back(), &l.back(), kNoNextUse});
    }
  }
};

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("lookup") {
    GlobalStats stats(1);
    ClientCache cache(0, 10, Policy::Lru);
    CHECK_FALSE(cache.lookup(A));
    cache.insert(A, 1, stats);
    CHECK(cache.lookup(A));
    CHECK_FALSE(cache.lookup(B));
  }

  TEST_CASE("request statistics") {
    GlobalStats s(2);
    s.record_request(0, A, 3);
    auto r = s.record(0, A);
    CHECK(r.global_count == 1);
    CHECK(r.last_global_request == 3);
    CHECK(r.local_count == 1);
    CHECK(r.last_local_request == 3);

    GlobalStats t(2);
    t.record_request(0, A, 1);
    t.record_request(1, A, 2);
    CHECK(t.record(0, A).global_count == 2);
    CHECK(t.record(0, A).last_global_request == 2);
    CHECK(t.record(0, A).last_local_request == 1);

    GlobalStats u(1);
    u.record_request(0, A, 1);
    u.record_request(0, A, 1);
    CHECK(u.record(0, A).local_count == 2);
    CHECK(u.record(0, A).global_count == 2);
    CHECK_THROWS_AS(u.record_request(0, A, 0), InternalFault);
  }

  TEST_CASE("insert and capacity") {
    GlobalStats stats(1);
    ClientCache cache(0, 2, Policy::Lru);
    CHECK(cache.insert(A, 1, stats).evicted.empty());
    CHECK(cache.insert(B, 1, stats).evicted.empty());
    const auto r = cache.insert(C, 1, stats);
    CHECK(r.cached);
    CHECK(r.evicted.size() == 1);
    CHECK(cache.used() == 2);

    ClientCache big(0, 3, Policy::Lfu);
    GlobalStats s2(1);
    big.insert(A, 1, s2);
    big.insert(B, 1, s2);
    big.insert(C, 1, s2);
    const auto all = big.insert(D, 3, s2);
    CHECK(all.evicted.size() == 3);
    CHECK(big.residents().size() == 1);
    CHECK(s2.global(A).holders == 0);
    CHECK(s2.global(D).holders == 1);

    const auto over = big.insert({9, 9}, 4, s2);
    CHECK_FALSE(over.cached);
    CHECK(over.evicted.empty());
    CHECK(big.lookup(D));
    CHECK_THROWS_AS(big.insert(D, 3, s2), InternalFault);
  }

  TEST_CASE("LRU examples") {
    Fixture f{{A, 5, 0, 1, 0}, {B, 9, 0, 1, 0}};
    CHECK(select_victim_lru(f.r) == A);
    Fixture tie{{A, 5, 0, 1, 0}, {B, 5, 0, 1, 0}};
    CHECK(select_victim_lru(tie.r) == A);
    Fixture one{{C, 1, 0, 1, 0}};
    CHECK(select_victim_lru(one.r) == C);
    CHECK_THROWS_AS(select_victim_lru({}), InternalFault);
  }

  TEST_CASE("LFU examples") {
    Fixture f{{A, 9, 1, 1, 0}, {B, 1, 4, 1, 0}};
    CHECK(select_victim_lfu(f.r) == A);
    Fixture tie{{A, 2, 3, 1, 0}, {B, 7, 3, 1, 0}};
    CHECK(select_victim_lfu(tie.r) == A);
    Fixture eq{{A, 2, 3, 1, 0}, {B, 2, 3, 1, 0}, {C, 2, 3, 1, 0}};
    CHECK(select_victim_lfu(eq.r) == A);
  }

  TEST_CASE("LFU-Index examples") {
    Fixture f{{A, 0, 1, 3, 0}, {B, 0, 1, 1, 0}, {C, 0, 5, 9, 0}};
    CHECK(select_victim_lfu_index(f.r) == A);
    Fixture tie{{A, 0, 1, 2, 2}, {B, 0, 1, 2, 8}};
    CHECK(select_victim_lfu_index(tie.r) == A);
    Fixture unique{{A, 0, 3, 9, 0}, {B, 0, 1, 1, 0}};
    CHECK(select_victim_lfu_index(unique.r) == B);
  }

  TEST_CASE("Belady examples") {
    Fixture f{{A, 0, 0, 1, 0}, {B, 0, 0, 1, 0}};
    CHECK(select_victim_belady(f.r, std::vector<SegmentId>{B, A, B}) == A);
    CHECK(select_victim_belady(f.r, std::vector<SegmentId>{A}) == B);
    CHECK(select_victim_belady(f.r, std::vector<SegmentId>{}) == A);
  }

  TEST_CASE("Belady through the cache's future index") {
    const std::vector<SegmentId> seq = {A, B, C, A, B, D, A};
    FutureIndex idx(seq);
    CHECK(idx.next_after(0) == 3);
    CHECK(idx.next_after(5) == kNoNextUse);
    GlobalStats stats(1);
    ClientCache cache(0, 2, Policy::Belady, &idx);
    cache.insert(A, 1, stats, 0);
    cache.insert(B, 1, stats, 1);
    // At C (position 2): A recurs at 3, B at 4, so B goes.
    const auto r = cache.insert(C, 1, stats, 2);
    REQUIRE(r.evicted.size() == 1);
    CHECK(r.evicted[0] == B);
    CHECK_THROWS(ClientCache(0, 2, Policy::Belady));
  }

  TEST_CASE("eviction never removes the incoming segment and keeps holder counts") {
    std::mt19937_64 rng(99);
    for (Policy p : {Policy::Lru, Policy::Lfu, Policy::LfuIndex}) {
      GlobalStats stats(3);
      std::vector<ClientCache> caches;
      for (ClientId c = 0; c < 3; ++c) caches.emplace_back(c, 12, p);
      SimTime now = 0;
      for (int step = 0; step < 3000; ++step) {
        const ClientId c = rng() % 3;
        const SegmentId s{1 + static_cast<FileId>(rng() % 5), 1 + static_cast<std::uint32_t>(rng() % 4)};
        stats.record_request(c, s, ++now);
        if (caches[c].lookup(s)) continue;
        const auto r = caches[c].insert(s, 1 + rng() % 4, stats);
        for (auto e : r.evicted) CHECK(e != s);
        CHECK(caches[c].used() <= caches[c].capacity());
        Bytes used = 0;
        for (const auto& rs : caches[c].residents()) used += rs.size;
        CHECK(used == caches[c].used());
        std::map<std::uint64_t, std::uint32_t> holders;
        for (const auto& cache : caches) {
          for (const auto& rs : cache.residents()) ++holders[rs.id.key()];
        }
        for (const auto& [k, n] : holders) CHECK(stats.global(SegmentId::from_key(k)).holders == n);
      }
    }
  }

  TEST_CASE("victim selection matches the brute-force oracle") {
    CHECK(oracle::eviction_mismatches(5000, 1234) == 0);
  }
}
