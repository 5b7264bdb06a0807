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

#ifndef EDGECAST_ENGINE_HPP
#define EDGECAST_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/cache.hpp"
#include "edgecast/coding.hpp"
#include "edgecast/common.hpp"
#include "edgecast/workload.hpp"

namespace edgecast {

struct SimConfig {
  std::size_t n_clients = 10;
  std::uint64_t link_rate_bps = 24'000'000;  // multicast rate
  /// Hard stop. Without one the run continues until every profile entry
  /// has been served.
  std::optional<double> horizon_s;
  double cache_fraction = 0.05;  // of total catalog bytes, per client
  Policy policy = Policy::Lru;
  bool coding = true;
  double backhaul_delay_s = 0.0;  // per transmission
  std::uint64_t seed = 0;
  /// Enables the O(total cache size) per-event consistency checks.
  bool check_invariants = false;

  void validate() const;
};

enum class Source { Cache, Network };

std::string_view to_string(Source s);

struct DeliveryRecord {
  SimTime request_time = 0;
  SimTime delivery_time = 0;
  ClientId client = 0;
  SegmentId segment;
  Bytes size = 0;
  Source source = Source::Network;
  Bytes payload = 0;             // transmission payload, 0 for cache hits
  std::uint32_t group_size = 0;  // members sharing the transmission

  friend bool operator==(const DeliveryRecord&, const DeliveryRecord&) = default;
};

struct TransmissionRecord {
  SimTime start = 0;
  SimTime end = 0;
  Bytes payload = 0;
  std::vector<RequestMember> members;
};

struct RunResult {
  std::vector<DeliveryRecord> deliveries;
  std::vector<TransmissionRecord> transmissions;
  Bytes tx_bytes = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t merges = 0;
  std::uint64_t oversize = 0;  // delivered but too large to cache
  std::uint64_t decode_violations = 0;
  /// Event boundaries at which the channel idled with a non-empty queue.
  std::uint64_t idle_violations = 0;
  /// Failed consistency checks; only counted with check_invariants.
  std::uint64_t invariant_violations = 0;
  SimTime end_time = 0;
};

/// Optional per-event text traces.
struct TraceSinks {
  std::ostream* cache = nullptr;   // time_ms,client,op,segment,policy keys
  std::ostream* coding = nullptr;  // time_ms,action,members,merged_dof,merged_doe
};

/// XOR of unequal segments zero-pads to the longest member.
Bytes coded_payload_size(const PendingRequest& r, const Catalog& catalog);

/// ceil(payload bits / rate) in nanoseconds.
SimTime transmission_time(Bytes payload, std::uint64_t link_rate_bps);

/// Runs one configuration over a profile. Deterministic for fixed inputs.
///
/// Clients request one segment at a time; a hit is served instantly, a miss
/// joins the station queue (merged by the coding placement when enabled).
/// The station multicasts the queue head whenever the channel is free, and
/// every member of a transmission caches its segment on completion.
RunResult run(const SimConfig& config, const RequestProfile& profile, const Catalog& catalog,
              const TraceSinks& sinks = {});

std::string format_trace(std::span<const DeliveryRecord> records);
std::vector<DeliveryRecord> parse_trace(std::string_view text);
std::string format_transmissions(std::span<const TransmissionRecord> log);

}  // namespace edgecast

#endif  // EDGECAST_ENGINE_HPP
