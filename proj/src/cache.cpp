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

#include "edgecast/cache.hpp"

#include <algorithm>
#include <string>

namespace edgecast {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Lru: return "lru";
    case Policy::Lfu: return "lfu";
    case Policy::Belady: return "belady";
    case Policy::LfuIndex: return "lfu-index";
  }
  return "unknown";
}

Policy parse_policy(std::string_view s) {
  if (s == "lru") return Policy::Lru;
  if (s == "lfu") return Policy::Lfu;
  if (s == "belady") return Policy::Belady;
  if (s == "lfu-index") return Policy::LfuIndex;
  throw ConfigError("unknown cache policy '" + std::string(s) + "'");
}

void GlobalStats::record_request(ClientId client, SegmentId s, SimTime now) {
  if (now < last_time_) throw InternalFault("request statistics recorded out of time order");
  last_time_ = now;
  auto& g = global(s);
  g.last_request = now;
  ++g.count;
  auto& l = local(client, s);
  l.last_request = now;
  ++l.count;
}

const GlobalRecord* GlobalStats::find_global(SegmentId s) const {
  auto it = global_.find(s.key());
  return it == global_.end() ? nullptr : &it->second;
}

const LocalRecord* GlobalStats::find_local(ClientId client, SegmentId s) const {
  const auto& m = local_.at(client);
  auto it = m.find(s.key());
  return it == m.end() ? nullptr : &it->second;
}

SegmentRecord GlobalStats::record(ClientId client, SegmentId s) const {
  SegmentRecord r;
  r.segment = s;
  if (const auto* g = find_global(s)) {
    r.last_global_request = g->last_request;
    r.global_count = g->count;
    r.holders = g->holders;
  }
  if (const auto* l = find_local(client, s)) {
    r.last_local_request = l->last_request;
    r.local_count = l->count;
  }
  return r;
}

void GlobalStats::remove_holder(SegmentId s) {
  auto& g = global(s);
  if (g.holders == 0) throw InternalFault("holder count underflow");
  --g.holders;
}

FutureIndex::FutureIndex(std::span<const SegmentId> sequence) : next_(sequence.size(), kNoNextUse) {
  std::unordered_map<std::uint64_t, std::uint64_t> last_seen;
  for (std::size_t p = sequence.size(); p-- > 0;) {
    const auto key = sequence[p].key();
    if (auto it = last_seen.find(key); it != last_seen.end()) {
      next_[p] = it->second;
      it->second = p;
    } else {
      last_seen.emplace(key, p);
    }
  }
}

namespace {

void require_nonempty(std::span<const ResidentSegment> residents) {
  if (residents.empty()) throw InternalFault("victim selection on an empty cache");
}

}  // namespace

SegmentId select_victim_lru(std::span<const ResidentSegment> residents) {
  require_nonempty(residents);
  const ResidentSegment* best = &residents.front();
  for (const auto& r : residents.subspan(1)) {
    if (r.global->last_request < best->global->last_request) best = &r;
  }
  return best->id;
}

SegmentId select_victim_lfu(std::span<const ResidentSegment> residents) {
  require_nonempty(residents);
  const ResidentSegment* best = &residents.front();
  for (const auto& r : residents.subspan(1)) {
    const auto& g = *r.global;
    const auto& b = *best->global;
    if (g.count < b.count || (g.count == b.count && g.last_request < b.last_request)) best = &r;
  }
  return best->id;
}

SegmentId select_victim_lfu_index(std::span<const ResidentSegment> residents) {
  require_nonempty(residents);
  const ResidentSegment* best = &residents.front();
  for (const auto& r : residents.subspan(1)) {
    const auto& g = *r.global;
    const auto& b = *best->global;
    if (g.count != b.count) {
      if (g.count < b.count) best = &r;
    } else if (g.holders != b.holders) {
      if (g.holders > b.holders) best = &r;
    } else if (r.local->last_request < best->local->last_request) {
      best = &r;
    }
  }
  return best->id;
}

SegmentId select_victim_belady(std::span<const ResidentSegment> residents) {
  require_nonempty(residents);
  const ResidentSegment* best = &residents.front();
  for (const auto& r : residents.subspan(1)) {
    if (r.next_use > best->next_use) best = &r;
  }
  return best->id;
}

SegmentId select_victim_belady(std::span<const ResidentSegment> residents, std::span<const SegmentId> future) {
  require_nonempty(residents);
  std::unordered_map<std::uint64_t, std::uint64_t> first_use;
  for (std::size_t p = 0; p < future.size(); ++p) first_use.emplace(future[p].key(), p);
  const auto next_use = [&](SegmentId s) {
    auto it = first_use.find(s.key());
    return it == first_use.end() ? kNoNextUse : it->second;
  };
  SegmentId best = residents.front().id;
  std::uint64_t best_use = next_use(best);
  for (const auto& r : residents.subspan(1)) {
    const auto use = next_use(r.id);
    if (use > best_use) {
      best = r.id;
      best_use = use;
    }
  }
  return best;
}

ClientCache::ClientCache(ClientId owner, Bytes capacity, Policy policy, const FutureIndex* future)
    : owner_(owner), capacity_(capacity), policy_(policy), future_(future) {
  if (policy_ == Policy::Belady && future_ == nullptr) {
    throw ConfigError("belady cache needs the client's future request sequence");
  }
}

namespace {

auto find_resident(std::vector<ResidentSegment>& v, SegmentId s) {
  return std::lower_bound(v.begin(), v.end(), s, [](const ResidentSegment& r, SegmentId id) { return r.id < id; });
}

}  // namespace

bool ClientCache::lookup(SegmentId s) const {
  auto it = std::lower_bound(residents_.begin(), residents_.end(), s,
                             [](const ResidentSegment& r, SegmentId id) { return r.id < id; });
  return it != residents_.end() && it->id == s;
}

void ClientCache::touch(SegmentId s, std::uint64_t position) {
  auto it = find_resident(residents_, s);
  if (it == residents_.end() || it->id != s) throw InternalFault("touch on a segment that is not resident");
  if (future_ != nullptr) it->next_use = future_->next_after(position);
}

SegmentId ClientCache::select_victim() const {
  switch (policy_) {
    case Policy::Lru: return select_victim_lru(residents_);
    case Policy::Lfu: return select_victim_lfu(residents_);
    case Policy::Belady: return select_victim_belady(residents_);
    case Policy::LfuIndex: return select_victim_lfu_index(residents_);
  }
  throw InternalFault("unknown policy");
}

InsertResult ClientCache::insert(SegmentId s, Bytes size, GlobalStats& stats, std::uint64_t position) {
  InsertResult result;
  if (lookup(s)) throw InternalFault("insert of a segment that is already resident");
  if (size > capacity_) return result;

  while (capacity_ - used_ < size) {
    const SegmentId victim = select_victim();
    auto it = find_resident(residents_, victim);
    used_ -= it->size;
    residents_.erase(it);
    stats.remove_holder(victim);
    result.evicted.push_back(victim);
  }

  ResidentSegment r;
  r.id = s;
  r.size = size;
  r.global = &stats.global(s);
  r.local = &stats.local(owner_, s);
  r.next_use = future_ != nullptr ? future_->next_after(position) : kNoNextUse;
  residents_.insert(find_resident(residents_, s), r);
  used_ += size;
  stats.add_holder(s);
  result.cached = true;
  return result;
}

std::vector<SegmentId> ClientCache::snapshot() const {
  std::vector<SegmentId> out;
  out.reserve(residents_.size());
  for (const auto& r : residents_) out.push_back(r.id);
  return out;
}

}  // namespace edgecast
