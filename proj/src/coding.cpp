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

#include "edgecast/coding.hpp"

#include <algorithm>
#include <iterator>

namespace edgecast {

namespace {

bool subset_of(const SegmentSet& small, const SegmentSet& big) {
  if (small.size() > big.size()) return false;
  for (const auto& s : small) {
    if (!std::binary_search(big.begin(), big.end(), s)) return false;
  }
  return true;
}

std::size_t intersection_size(const SegmentSet& a, const SegmentSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::size_t union_size(const SegmentSet& a, const SegmentSet& b) { return a.size() + b.size() - intersection_size(a, b); }

}  // namespace

PendingRequest PendingRequest::single(ClientId client, SegmentId wanted, SegmentSet has, SimTime now) {
  if (std::binary_search(has.begin(), has.end(), wanted)) {
    throw InternalFault("a client requested a segment it already caches");
  }
  PendingRequest r;
  r.wants = {wanted};
  r.has = std::make_shared<const SegmentSet>(std::move(has));
  r.members.push_back({client, wanted, now, r.has});
  r.enqueue_time = now;
  return r;
}

bool codeable(const PendingRequest& a, const PendingRequest& b) {
  return subset_of(a.wants, *b.has) && subset_of(b.wants, *a.has);
}

PendingRequest merge(const PendingRequest& a, const PendingRequest& b) {
  if (!codeable(a, b)) throw InternalFault("merge of a non-codeable request pair");
  PendingRequest m;
  SegmentSet has;
  std::set_intersection(a.has->begin(), a.has->end(), b.has->begin(), b.has->end(), std::back_inserter(has));
  m.has = std::make_shared<const SegmentSet>(std::move(has));
  std::set_union(a.wants.begin(), a.wants.end(), b.wants.begin(), b.wants.end(), std::back_inserter(m.wants));
  m.members = a.members;
  m.members.insert(m.members.end(), b.members.begin(), b.members.end());
  m.enqueue_time = std::min(a.enqueue_time, b.enqueue_time);
  return m;
}

bool decode_feasible(const PendingRequest& r) {
  for (const auto& member : r.members) {
    for (const auto& w : r.wants) {
      if (w == member.wanted) continue;
      if (!std::binary_search(member.has->begin(), member.has->end(), w)) return false;
    }
  }
  return true;
}

void RequestQueue::check_disjoint_members(const PendingRequest& incoming) const {
  for (const auto& entry : entries_) {
    for (const auto& m : entry.members) {
      for (const auto& n : incoming.members) {
        if (m.client == n.client) throw InternalFault("client already has a queued request");
      }
    }
  }
}

Placement RequestQueue::try_code_or_enqueue(PendingRequest incoming) {
  check_disjoint_members(incoming);

  std::optional<std::size_t> selected;
  std::size_t best_dof = 0;
  std::size_t best_doe = 0;
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const auto& queued = entries_[j];
    if (!codeable(incoming, queued)) continue;
    const auto merged_dof = intersection_size(*incoming.has, *queued.has);
    const auto merged_doe = union_size(incoming.wants, queued.wants);
    if (!selected || merged_dof > best_dof || (merged_dof == best_dof && merged_doe < best_doe)) {
      selected = j;
      best_dof = merged_dof;
      best_doe = merged_doe;
    }
  }

  if (!selected) return append(std::move(incoming));

  auto& target = entries_[*selected];
  target = merge(target, incoming);
  if (!decode_feasible(target)) ++decode_violations_;
  return {PlacementAction::Merged, *selected, dof(target), doe(target)};
}

Placement RequestQueue::append(PendingRequest incoming) {
  check_disjoint_members(incoming);
  entries_.push_back(std::move(incoming));
  const auto& back = entries_.back();
  return {PlacementAction::Appended, entries_.size() - 1, dof(back), doe(back)};
}

std::optional<PendingRequest> RequestQueue::dequeue() {
  if (entries_.empty()) return std::nullopt;
  PendingRequest head = std::move(entries_.front());
  entries_.pop_front();
  if (!decode_feasible(head)) ++decode_violations_;
  return head;
}

}  // namespace edgecast
