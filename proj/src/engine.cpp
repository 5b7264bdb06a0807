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

#include "edgecast/engine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "edgecast/textio.hpp"

namespace edgecast {

void SimConfig::validate() const {
  if (n_clients < 1) throw ConfigError("sim: n_clients must be >= 1");
  if (link_rate_bps == 0) throw ConfigError("sim: link_rate_bps must be > 0");
  if (horizon_s && !(*horizon_s > 0.0)) throw ConfigError("sim: horizon must be > 0");
  if (!(cache_fraction >= 0.0) || !std::isfinite(cache_fraction)) throw ConfigError("sim: cache_fraction must be >= 0");
  if (!(backhaul_delay_s >= 0.0)) throw ConfigError("sim: backhaul_delay_s must be >= 0");
}

std::string_view to_string(Source s) { return s == Source::Cache ? "cache" : "network"; }

Bytes coded_payload_size(const PendingRequest& r, const Catalog& catalog) {
  Bytes payload = 0;
  for (const auto& s : r.wants) payload = std::max(payload, catalog.segment_size(s));
  return payload;
}

SimTime transmission_time(Bytes payload, std::uint64_t link_rate_bps) {
  const auto numer = static_cast<unsigned __int128>(payload) * 8u * static_cast<unsigned __int128>(kNanosPerSecond);
  return static_cast<SimTime>((numer + link_rate_bps - 1) / link_rate_bps);
}

namespace {

// Lower rank runs first at equal timestamps.
enum class EventKind : int { TxComplete = 0, SegmentRequest = 1, WaitExpired = 2 };

struct Event {
  SimTime time;
  EventKind kind;
  ClientId client;
  std::uint64_t seq;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    if (a.client != b.client) return a.client > b.client;
    return a.seq > b.seq;
  }
};

enum class Mode { Waiting, Requesting, Receiving, Done };

struct ClientState {
  std::vector<SegmentId> sequence;
  FutureIndex future;
  std::optional<ClientCache> cache;
  std::size_t entry = 0;          // current profile entry
  std::uint32_t segment = 1;      // next segment index within the entry's file
  std::uint64_t position = 0;     // index into `sequence` of the current request
  Mode mode = Mode::Waiting;
};

struct InFlight {
  PendingRequest request;
  SimTime start = 0;
  SimTime end = 0;
  Bytes payload = 0;
};

std::string segment_text(SegmentId s) { return std::to_string(s.file) + ":" + std::to_string(s.index); }

std::string time_or_never(SimTime t) { return t == kNeverRequested ? "never" : text::format_millis(t); }

class Simulation {
 public:
  Simulation(const SimConfig& config, const RequestProfile& profile, const Catalog& catalog, const TraceSinks& sinks)
      : config_(config), profile_(profile), catalog_(catalog), sinks_(sinks), stats_(config.n_clients) {
    config_.validate();
    if (profile_.n_clients() < config_.n_clients) throw ConfigError("profile has fewer clients than the configuration");
    if (profile_.catalog_hash != 0 && profile_.catalog_hash != catalog_hash(catalog_)) {
      throw ConfigError("profile was generated for a different catalog");
    }
    capacity_ = static_cast<Bytes>(std::floor(static_cast<long double>(catalog_.total_bytes()) *
                                              static_cast<long double>(config_.cache_fraction)));
    backhaul_ = seconds_to_sim(config_.backhaul_delay_s);
    if (config_.horizon_s) horizon_ = seconds_to_sim(*config_.horizon_s);

    clients_.resize(config_.n_clients);
    for (ClientId c = 0; c < config_.n_clients; ++c) {
      auto& st = clients_[c];
      st.sequence = future_segment_sequence(profile_, catalog_, c);
      if (config_.policy == Policy::Belady) st.future = FutureIndex(st.sequence);
      st.cache.emplace(c, capacity_, config_.policy, &st.future);
      const auto& entries = profile_.clients[c];
      if (entries.empty()) {
        st.mode = Mode::Done;
      } else {
        schedule(entries.front().wait_ms * kNanosPerMilli, EventKind::WaitExpired, c);
      }
    }
  }

  RunResult run() {
    while (!events_.empty()) {
      const Event ev = events_.top();
      if (horizon_ && ev.time > *horizon_) break;
      events_.pop();
      now_ = ev.time;
      switch (ev.kind) {
        case EventKind::WaitExpired: on_wait_expired(ev.client); break;
        case EventKind::SegmentRequest: on_segment_request(ev.client); break;
        case EventKind::TxComplete: on_tx_complete(); break;
      }
      if (!in_flight_ && !queue_.empty()) ++result_.idle_violations;
      if (config_.check_invariants) check_invariants();
    }
    result_.end_time = now_;
    result_.decode_violations = queue_.decode_violations();
    return std::move(result_);
  }

 private:
  void schedule(SimTime t, EventKind kind, ClientId c) { events_.push({t, kind, c, next_seq_++}); }

  void on_wait_expired(ClientId c) {
    auto& st = clients_[c];
    st.mode = Mode::Requesting;
    st.segment = 1;
    schedule(now_, EventKind::SegmentRequest, c);
  }

  void on_segment_request(ClientId c) {
    auto& st = clients_[c];
    const FileId file = profile_.clients[c][st.entry].file;
    const SegmentId s{file, st.segment};
    stats_.record_request(c, s, now_);

    if (st.cache->lookup(s)) {
      st.cache->touch(s, st.position);
      ++result_.hits;
      trace_cache(c, "hit", s);
      result_.deliveries.push_back({now_, now_, c, s, catalog_.segment_size(s), Source::Cache, 0, 0});
      advance(c);
      return;
    }

    ++result_.misses;
    trace_cache(c, "miss", s);
    st.mode = Mode::Receiving;
    auto request = PendingRequest::single(c, s, st.cache->snapshot(), now_);
    const Placement placed = config_.coding ? queue_.try_code_or_enqueue(std::move(request))
                                            : queue_.append(std::move(request));
    if (placed.action == PlacementAction::Merged) ++result_.merges;
    trace_coding(placed);
    if (!in_flight_) start_transmission();
  }

  void start_transmission() {
    auto head = queue_.dequeue();
    if (!head) return;
    if (config_.check_invariants) check_snapshots(*head);
    const Bytes payload = coded_payload_size(*head, catalog_);
    // The slot is busy from now; bits go on air once the backhaul fetch is done.
    const SimTime on_air = now_ + backhaul_;
    const SimTime end = on_air + transmission_time(payload, config_.link_rate_bps);
    in_flight_ = InFlight{std::move(*head), on_air, end, payload};
    schedule(end, EventKind::TxComplete, 0);
  }

  void on_tx_complete() {
    InFlight done = std::move(*in_flight_);
    in_flight_.reset();
    result_.tx_bytes += done.payload;
    const auto group = static_cast<std::uint32_t>(done.request.members.size());

    for (const auto& m : done.request.members) {
      auto& st = clients_[m.client];
      const Bytes size = catalog_.segment_size(m.wanted);
      result_.deliveries.push_back({m.requested_at, now_, m.client, m.wanted, size, Source::Network, done.payload, group});
      const auto inserted = st.cache->insert(m.wanted, size, stats_, st.position);
      for (const auto& v : inserted.evicted) trace_cache(m.client, "evict", v);
      if (inserted.cached) {
        trace_cache(m.client, "insert", m.wanted);
      } else {
        ++result_.oversize;
      }
      advance(m.client);
    }
    result_.transmissions.push_back({done.start, done.end, done.payload, std::move(done.request.members)});

    if (!queue_.empty()) start_transmission();
  }

  // Moves the client past its current segment: next segment now, or the
  // next file after its recorded wait.
  void advance(ClientId c) {
    auto& st = clients_[c];
    ++st.position;
    const auto& entries = profile_.clients[c];
    const auto n_segments = catalog_.file(entries[st.entry].file).segment_count();
    if (st.segment < n_segments) {
      ++st.segment;
      st.mode = Mode::Requesting;
      schedule(now_, EventKind::SegmentRequest, c);
      return;
    }
    ++st.entry;
    if (st.entry < entries.size()) {
      st.mode = Mode::Waiting;
      schedule(now_ + entries[st.entry].wait_ms * kNanosPerMilli, EventKind::WaitExpired, c);
    } else {
      st.mode = Mode::Done;
    }
  }

  // Queued side information must still be present when the request is served.
  void check_snapshots(const PendingRequest& r) {
    for (const auto& m : r.members) {
      const auto current = clients_[m.client].cache->snapshot();
      if (!std::includes(current.begin(), current.end(), m.has->begin(), m.has->end())) {
        ++result_.invariant_violations;
      }
    }
  }

  void check_invariants() {
    std::unordered_map<std::uint64_t, std::uint32_t> holders;
    for (const auto& st : clients_) {
      Bytes used = 0;
      for (const auto& r : st.cache->residents()) {
        used += r.size;
        ++holders[r.id.key()];
      }
      if (used != st.cache->used() || used > st.cache->capacity()) ++result_.invariant_violations;
    }
    for (const auto& [key, count] : holders) {
      const auto* g = stats_.find_global(SegmentId::from_key(key));
      if (g == nullptr || g->holders != count) ++result_.invariant_violations;
    }
  }

  void trace_cache(ClientId c, std::string_view op, SegmentId s) {
    if (sinks_.cache == nullptr) return;
    const auto rec = stats_.record(c, s);
    *sinks_.cache << text::format_millis(now_) << ',' << c << ',' << op << ',' << segment_text(s)
                  << ",bg=" << time_or_never(rec.last_global_request) << ";cg=" << rec.global_count
                  << ";tau=" << rec.holders << ";bl=" << time_or_never(rec.last_local_request)
                  << ";cl=" << rec.local_count << '\n';
  }

  void trace_coding(const Placement& placed) {
    if (sinks_.coding == nullptr) return;
    const auto& entry = queue_.at(placed.position);
    *sinks_.coding << text::format_millis(now_) << ','
                   << (placed.action == PlacementAction::Merged ? "merge" : "append") << ',';
    for (std::size_t i = 0; i < entry.members.size(); ++i) {
      if (i > 0) *sinks_.coding << '|';
      *sinks_.coding << entry.members[i].client << ':' << segment_text(entry.members[i].wanted);
    }
    *sinks_.coding << ',' << placed.dof << ',' << placed.doe << '\n';
  }

  SimConfig config_;
  const RequestProfile& profile_;
  const Catalog& catalog_;
  TraceSinks sinks_;

  GlobalStats stats_;
  std::vector<ClientState> clients_;
  RequestQueue queue_;
  std::optional<InFlight> in_flight_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_seq_ = 0;
  SimTime now_ = 0;
  std::optional<SimTime> horizon_;
  SimTime backhaul_ = 0;
  Bytes capacity_ = 0;
  RunResult result_;
};

constexpr std::string_view kTraceColumns =
    "req_time_ms,deliv_time_ms,client,file,seg_index,seg_bytes,source,payload_bytes,group_size";

}  // namespace

RunResult run(const SimConfig& config, const RequestProfile& profile, const Catalog& catalog, const TraceSinks& sinks) {
  Simulation sim(config, profile, catalog, sinks);
  return sim.run();
}

std::string format_trace(std::span<const DeliveryRecord> records) {
  std::string out(kTraceColumns);
  out += '\n';
  for (const auto& r : records) {
    out += text::format_millis(r.request_time);
    out += ',';
    out += text::format_millis(r.delivery_time);
    out += ',' + std::to_string(r.client) + ',' + std::to_string(r.segment.file) + ',' +
           std::to_string(r.segment.index) + ',' + std::to_string(r.size) + ',';
    out += to_string(r.source);
    out += ',' + std::to_string(r.payload) + ',' + std::to_string(r.group_size) + '\n';
  }
  return out;
}

std::vector<DeliveryRecord> parse_trace(std::string_view contents) {
  text::LineReader reader(contents);
  std::string_view line;
  if (!reader.next(line) || line != kTraceColumns) throw ParseError(reader.line_number(), "missing trace column line");
  std::vector<DeliveryRecord> out;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto ln = reader.line_number();
    const auto f = text::split(line, ',');
    if (f.size() != 9) throw ParseError(ln, "trace record needs 9 fields");
    DeliveryRecord r;
    r.request_time = text::parse_millis(f[0], ln);
    r.delivery_time = text::parse_millis(f[1], ln);
    r.client = static_cast<ClientId>(text::parse_u64(f[2], ln));
    r.segment = {static_cast<FileId>(text::parse_u64(f[3], ln)), static_cast<std::uint32_t>(text::parse_u64(f[4], ln))};
    r.size = text::parse_u64(f[5], ln);
    if (f[6] == "cache") {
      r.source = Source::Cache;
    } else if (f[6] == "network") {
      r.source = Source::Network;
    } else {
      throw ParseError(ln, "unknown source '" + std::string(f[6]) + "'");
    }
    r.payload = text::parse_u64(f[7], ln);
    r.group_size = static_cast<std::uint32_t>(text::parse_u64(f[8], ln));
    out.push_back(r);
  }
  return out;
}

std::string format_transmissions(std::span<const TransmissionRecord> log) {
  std::string out = "start_ms,end_ms,payload_bytes,members\n";
  for (const auto& t : log) {
    out += text::format_millis(t.start);
    out += ',';
    out += text::format_millis(t.end);
    out += ',' + std::to_string(t.payload) + ',';
    for (std::size_t i = 0; i < t.members.size(); ++i) {
      if (i > 0) out += '|';
      out += std::to_string(t.members[i].client) + ':' + segment_text(t.members[i].wanted);
    }
    out += '\n';
  }
  return out;
}

}  // namespace edgecast
