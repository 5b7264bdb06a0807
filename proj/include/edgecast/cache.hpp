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

// Per-client segment caches and the station-wide request statistics their
// replacement policies read.

#ifndef EDGECAST_CACHE_HPP
#define EDGECAST_CACHE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "edgecast/common.hpp"

namespace edgecast {

enum class Policy { Lru, Lfu, Belady, LfuIndex };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view s);

/// Timestamp of a segment that has never been requested.
inline constexpr SimTime kNeverRequested = std::numeric_limits<SimTime>::min();
/// Future position of a segment that is never requested again.
inline constexpr std::uint64_t kNoNextUse = std::numeric_limits<std::uint64_t>::max();

struct GlobalRecord {
  SimTime last_request = kNeverRequested;  // beta^g
  std::uint64_t count = 0;                 // Gamma^g
  std::uint32_t holders = 0;               // tau, including the evicting client
};

struct LocalRecord {
  SimTime last_request = kNeverRequested;  // beta^l
  std::uint64_t count = 0;                 // Gamma^l
};

/// The per-segment 6-tuple as seen by one client.
struct SegmentRecord {
  SegmentId segment;
  SimTime last_local_request = kNeverRequested;
  std::uint64_t local_count = 0;
  SimTime last_global_request = kNeverRequested;
  std::uint64_t global_count = 0;
  std::uint32_t holders = 0;
};

/// Station registry of request recency/frequency and replica counts.
///
/// Record addresses are stable for the registry's lifetime, so caches keep
/// pointers to them instead of re-hashing on every victim scan.
class GlobalStats {
 public:
  explicit GlobalStats(std::size_t n_clients) : local_(n_clients) {}

  /// Throws InternalFault if `now` precedes a previously recorded time.
  void record_request(ClientId client, SegmentId s, SimTime now);

  GlobalRecord& global(SegmentId s) { return global_[s.key()]; }
  LocalRecord& local(ClientId client, SegmentId s) { return local_.at(client)[s.key()]; }
  const GlobalRecord* find_global(SegmentId s) const;
  const LocalRecord* find_local(ClientId client, SegmentId s) const;

  SegmentRecord record(ClientId client, SegmentId s) const;

  void add_holder(SegmentId s) { ++global(s).holders; }
  void remove_holder(SegmentId s);

  std::size_t n_clients() const { return local_.size(); }
  SimTime last_time() const { return last_time_; }

 private:
  std::unordered_map<std::uint64_t, GlobalRecord> global_;
  std::vector<std::unordered_map<std::uint64_t, LocalRecord>> local_;
  SimTime last_time_ = kNeverRequested;
};

/// next[p] is the next position after p holding the same segment, or
/// kNoNextUse. Built once per client from its full request sequence.
class FutureIndex {
 public:
  FutureIndex() = default;
  explicit FutureIndex(std::span<const SegmentId> sequence);

  std::uint64_t next_after(std::uint64_t position) const {
    return position < next_.size() ? next_[position] : kNoNextUse;
  }
  std::size_t size() const { return next_.size(); }

 private:
  std::vector<std::uint64_t> next_;
};

struct ResidentSegment {
  SegmentId id;
  Bytes size = 0;
  const GlobalRecord* global = nullptr;
  const LocalRecord* local = nullptr;
  std::uint64_t next_use = kNoNextUse;  // Belady bookkeeping
};

// Victim rules. All scan `residents` in canonical order and only replace the
// running choice on a strict improvement, which makes the canonical order the
// final tie-break. Each throws InternalFault on an empty span.

/// Least beta^g.
SegmentId select_victim_lru(std::span<const ResidentSegment> residents);
/// Least Gamma^g, then least beta^g.
SegmentId select_victim_lfu(std::span<const ResidentSegment> residents);
/// Among least Gamma^g: most holders tau, then least beta^l.
SegmentId select_victim_lfu_index(std::span<const ResidentSegment> residents);
/// Latest next use according to each resident's `next_use`.
SegmentId select_victim_belady(std::span<const ResidentSegment> residents);
/// Latest first occurrence in `future`; absent segments count as never.
SegmentId select_victim_belady(std::span<const ResidentSegment> residents, std::span<const SegmentId> future);

struct InsertResult {
  bool cached = false;  // false on the oversize path
  std::vector<SegmentId> evicted;
};

class ClientCache {
 public:
  /// `future` is required for Belady and ignored otherwise; it must outlive
  /// the cache.
  ClientCache(ClientId owner, Bytes capacity, Policy policy, const FutureIndex* future = nullptr);

  bool lookup(SegmentId s) const;
  /// Hit bookkeeping: refreshes the Belady next-use of a resident requested
  /// at `position` of the owner's sequence.
  void touch(SegmentId s, std::uint64_t position);

  /// Makes room by repeated single-victim eviction, then stores `s`.
  /// Segments larger than the whole capacity are not cached.
  InsertResult insert(SegmentId s, Bytes size, GlobalStats& stats, std::uint64_t position = 0);

  SegmentId select_victim() const;

  std::span<const ResidentSegment> residents() const { return residents_; }
  std::vector<SegmentId> snapshot() const;
  Bytes used() const { return used_; }
  Bytes capacity() const { return capacity_; }
  Policy policy() const { return policy_; }
  ClientId owner() const { return owner_; }

 private:
  ClientId owner_;
  Bytes capacity_;
  Policy policy_;
  const FutureIndex* future_;
  Bytes used_ = 0;
  std::vector<ResidentSegment> residents_;  // sorted by id
};

}  // namespace edgecast

#endif  // EDGECAST_CACHE_HPP
