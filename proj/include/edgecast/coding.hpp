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

// XOR index coding at the edge station: pending requests carry the wanted
// segments (W) and the intersected side information of their members (H).

#ifndef EDGECAST_CODING_HPP
#define EDGECAST_CODING_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "edgecast/common.hpp"

namespace edgecast {

using SegmentSet = std::vector<SegmentId>;  // sorted, unique

struct RequestMember {
  ClientId client = 0;
  SegmentId wanted;
  SimTime requested_at = 0;
  /// The member's own cache snapshot, kept for the decode check.
  std::shared_ptr<const SegmentSet> has;
};

struct PendingRequest {
  SegmentSet wants;
  std::shared_ptr<const SegmentSet> has;
  std::vector<RequestMember> members;
  SimTime enqueue_time = 0;

  /// A one-client request; `has` must be sorted and must not contain `wanted`.
  static PendingRequest single(ClientId client, SegmentId wanted, SegmentSet has, SimTime now);
};

/// |H(r)|
inline std::size_t dof(const PendingRequest& r) { return r.has->size(); }
/// |W(r)|
inline std::size_t doe(const PendingRequest& r) { return r.wants.size(); }

/// W(a) is contained in H(b) and W(b) in H(a) (non-strict containment).
bool codeable(const PendingRequest& a, const PendingRequest& b);

/// H = H(a) n H(b), W = W(a) u W(b), members concatenated (a's first),
/// enqueue time the earlier of the two. Throws InternalFault when the pair
/// is not codeable.
PendingRequest merge(const PendingRequest& a, const PendingRequest& b);

/// Every member holds every wanted segment except its own, so it can strip
/// the others out of the XOR.
bool decode_feasible(const PendingRequest& r);

enum class PlacementAction { Merged, Appended };

struct Placement {
  PlacementAction action = PlacementAction::Appended;
  std::size_t position = 0;  // queue index of the resulting entry
  std::size_t dof = 0;       // of the resulting entry
  std::size_t doe = 0;
};

/// The station's FIFO of pending, possibly merged, requests.
class RequestQueue {
 public:
  /// Greedy coding placement: among codeable queued entries pick the one
  /// whose merge with `incoming` keeps the most side information (largest
  /// merged DOF), then the smallest merged DOE, then the earliest position,
  /// and merge in place. Without a candidate, append at the tail.
  Placement try_code_or_enqueue(PendingRequest incoming);
  Placement append(PendingRequest incoming);

  /// Removes the head; nullopt when the queue is empty.
  std::optional<PendingRequest> dequeue();

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const PendingRequest& at(std::size_t i) const { return entries_.at(i); }
  const std::deque<PendingRequest>& entries() const { return entries_; }

  /// Merges or dequeues that failed decode_feasible. Zero in a correct run.
  std::uint64_t decode_violations() const { return decode_violations_; }

 private:
  void check_disjoint_members(const PendingRequest& incoming) const;

  std::deque<PendingRequest> entries_;
  std::uint64_t decode_violations_ = 0;
};

}  // namespace edgecast

#endif  // EDGECAST_CODING_HPP
