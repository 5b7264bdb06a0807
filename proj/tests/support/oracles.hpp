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

// Brute-force reference implementations, written from the definitions and
// sharing no selection code with the library.

#ifndef EDGECAST_TESTS_ORACLES_HPP
#define EDGECAST_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "edgecast/cache.hpp"
#include "edgecast/coding.hpp"

namespace edgecast::oracle {

// ---- eviction ----

/// Position of the first request for s in future, or kNoNextUse.
inline std::uint64_t first_use(SegmentId s, const std::vector<SegmentId>& future) {
  for (std::size_t i = 0; i < future.size(); ++i) {
    if (future[i] == s) return i;
  }
  return kNoNextUse;
}

/// Sorts every resident by the policy's full ordering key and returns the
/// smallest, i.e. the victim by definition.
inline SegmentId victim(Policy policy, const std::vector<ResidentSegment>& residents,
                        const std::vector<SegmentId>& future) {
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, SegmentId>;
  std::vector<Key> keys;
  for (const auto& r : residents) {
    const auto bg = r.global->last_request;
    const auto cg = static_cast<std::int64_t>(r.global->count);
    switch (policy) {
      case Policy::Lru: keys.emplace_back(bg, 0, 0, r.id); break;
      case Policy::Lfu: keys.emplace_back(cg, bg, 0, r.id); break;
      case Policy::LfuIndex:
        keys.emplace_back(cg, -static_cast<std::int64_t>(r.global->holders), r.local->last_request, r.id);
        break;
      case Policy::Belady: {
        const auto nu = first_use(r.id, future);
        // Furthest first: never-used sorts before everything.
        const std::int64_t rank = nu == kNoNextUse ? std::numeric_limits<std::int64_t>::min()
                                                   : -static_cast<std::int64_t>(nu);
        keys.emplace_back(rank, 0, 0, r.id);
        break;
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  return std::get<3>(keys.front());
}

struct EvictionTrial {
  std::vector<GlobalRecord> globals;
  std::vector<LocalRecord> locals;
  std::vector<ResidentSegment> residents;  // sorted by id, like ClientCache keeps them
  std::vector<SegmentId> future;
};

/// A random cache of 1..max_size residents with deliberately narrow value
/// ranges so every tie-break path is exercised.
inline EvictionTrial random_eviction_trial(std::mt19937_64& rng, std::size_t max_size = 10) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  EvictionTrial t;
  const auto n = static_cast<std::size_t>(pick(1, static_cast<std::int64_t>(max_size)));
  std::set<SegmentId> ids;
  while (ids.size() < n) ids.insert({static_cast<FileId>(pick(1, 4)), static_cast<std::uint32_t>(pick(1, 5))});
  t.globals.resize(n);
  t.locals.resize(n);
  std::size_t i = 0;
  for (const auto& id : ids) {
    auto& g = t.globals[i];
    auto& l = t.locals[i];
    g.last_request = pick(0, 9) == 0 ? kNeverRequested : pick(0, 4);
    g.count = static_cast<std::uint64_t>(pick(0, 3));
    g.holders = static_cast<std::uint32_t>(pick(1, 3));
    l.last_request = pick(0, 9) == 0 ? kNeverRequested : pick(0, 4);
    l.count = static_cast<std::uint64_t>(pick(0, 2));
    t.residents.push_back({id, static_cast<Bytes>(pick(1, 5)), &g, &l, kNoNextUse});
    ++i;
  }
  const auto flen = pick(0, 12);
  for (std::int64_t k = 0; k < flen; ++k) {
    t.future.push_back({static_cast<FileId>(pick(1, 4)), static_cast<std::uint32_t>(pick(1, 5))});
  }
  for (auto& r : t.residents) r.next_use = first_use(r.id, t.future);
  return t;
}

/// Number of trials (over all four policies) where the library disagrees.
inline std::size_t eviction_mismatches(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto t = random_eviction_trial(rng);
    const std::span<const ResidentSegment> rs(t.residents);
    bad += select_victim_lru(rs) != victim(Policy::Lru, t.residents, t.future);
    bad += select_victim_lfu(rs) != victim(Policy::Lfu, t.residents, t.future);
    bad += select_victim_lfu_index(rs) != victim(Policy::LfuIndex, t.residents, t.future);
    const auto b = victim(Policy::Belady, t.residents, t.future);
    bad += select_victim_belady(rs) != b || select_victim_belady(rs, t.future) != b;
  }
  return bad;
}

// ---- coding placement ----

struct ExpectedPlacement {
  bool merged = false;
  std::size_t position = 0;
  std::set<SegmentId> wants;
  std::set<SegmentId> has;
};

inline std::set<SegmentId> as_set(const SegmentSet& v) { return {v.begin(), v.end()}; }

/// Exhaustive evaluation over every codeable queue entry:
/// max merged DOF, then min merged DOE, then earliest position.
inline ExpectedPlacement best_placement(const std::deque<PendingRequest>& queue, const PendingRequest& in) {
  const auto win = as_set(in.wants);
  const auto hin = as_set(*in.has);
  std::optional<std::tuple<std::int64_t, std::size_t, std::size_t>> best;  // (-dof, doe, pos)
  ExpectedPlacement out;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto w = as_set(queue[i].wants);
    const auto h = as_set(*queue[i].has);
    const bool ok = std::includes(hin.begin(), hin.end(), w.begin(), w.end()) &&
                    std::includes(h.begin(), h.end(), win.begin(), win.end());
    if (!ok) continue;
    std::set<SegmentId> mh, mw;
    std::set_intersection(h.begin(), h.end(), hin.begin(), hin.end(), std::inserter(mh, mh.end()));
    std::set_union(w.begin(), w.end(), win.begin(), win.end(), std::inserter(mw, mw.end()));
    const std::tuple<std::int64_t, std::size_t, std::size_t> key{-static_cast<std::int64_t>(mh.size()), mw.size(), i};
    if (!best || key < *best) {
      best = key;
      out = {true, i, mw, mh};
    }
  }
  if (!best) out = {false, queue.size(), win, hin};
  return out;
}

inline SegmentSet random_subset(std::mt19937_64& rng, std::size_t universe, double density, SegmentId exclude) {
  std::bernoulli_distribution in(density);
  SegmentSet s;
  for (std::uint32_t u = 1; u <= universe; ++u) {
    const SegmentId id{1 + (u - 1) / 4, 1 + (u - 1) % 4};
    if (id != exclude && in(rng)) s.push_back(id);
  }
  return s;
}

inline SegmentId random_segment(std::mt19937_64& rng, std::size_t universe) {
  const auto u = std::uniform_int_distribution<std::uint32_t>(1, static_cast<std::uint32_t>(universe))(rng);
  return {1 + (u - 1) / 4, 1 + (u - 1) % 4};
}

struct CodingTrial {
  RequestQueue queue;
  PendingRequest incoming;
};

/// A queue of 0..max_queue entries (some already merged) plus an incoming
/// singleton from a client not in the queue, all over a small universe.
inline CodingTrial random_coding_trial(std::mt19937_64& rng, std::size_t max_queue = 8, std::size_t universe = 12) {
  std::uniform_real_distribution<double> dens(0.3, 0.95);
  ClientId next_client = 0;
  auto fresh = [&] {
    const auto w = random_segment(rng, universe);
    return PendingRequest::single(next_client++, w, random_subset(rng, universe, dens(rng), w), 0);
  };
  CodingTrial t;
  const auto n = std::uniform_int_distribution<std::size_t>(0, max_queue)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = fresh();
    for (int extra = 0; extra < 2; ++extra) {
      if (!std::bernoulli_distribution(0.5)(rng)) break;
      auto partner = fresh();
      if (codeable(r, partner)) r = merge(r, partner);
    }
    t.queue.append(std::move(r));
  }
  t.incoming = fresh();
  return t;
}

inline bool placement_matches(CodingTrial& t) {
  const auto expected = best_placement(t.queue.entries(), t.incoming);
  const auto before = t.queue.size();
  const auto p = t.queue.try_code_or_enqueue(t.incoming);
  const bool merged = p.action == PlacementAction::Merged;
  if (merged != expected.merged || p.position != expected.position) return false;
  if (t.queue.size() != (merged ? before : before + 1)) return false;
  const auto& e = t.queue.at(p.position);
  return as_set(e.wants) == expected.wants && as_set(*e.has) == expected.has && p.dof == expected.has.size() &&
         p.doe == expected.wants.size();
}

inline std::size_t coding_mismatches(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    auto t = random_coding_trial(rng);
    bad += !placement_matches(t);
  }
  return bad;
}

}  // namespace edgecast::oracle

#endif  // EDGECAST_TESTS_ORACLES_HPP
