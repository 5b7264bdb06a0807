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

#ifndef EDGECAST_WORKLOAD_HPP
#define EDGECAST_WORKLOAD_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/common.hpp"
#include "edgecast/popularity.hpp"
#include "edgecast/random.hpp"

namespace edgecast {

enum class SizeFamily { LogNormal, Uniform, Constant };

std::string_view to_string(SizeFamily f);
SizeFamily parse_size_family(std::string_view s);

/// Synthetic per-segment size model. Draws are truncated to
/// [min_bytes, max_bytes] by rejection.
struct SegmentSizeModel {
  SizeFamily family = SizeFamily::LogNormal;
  double mean_bytes = 2.5e6;  // 5 Mbit/s x 4 s
  double sigma = 0.25;        // log-space spread (LogNormal only)
  double min_bytes = 0.5e6;
  double max_bytes = 6.0e6;

  void validate() const;
  Bytes draw(RandomStream& rng) const;
};

struct CatalogParams {
  std::size_t n_files = 100;
  double min_duration_s = 120.0;
  double max_duration_s = 300.0;
  double segment_duration_s = 4.0;
  SegmentSizeModel size_model;

  void validate() const;
};

struct FileSpec {
  FileId id = 0;
  std::int64_t duration_ms = 0;
  std::vector<Bytes> segments;

  std::uint32_t segment_count() const { return static_cast<std::uint32_t>(segments.size()); }
  double duration_s() const { return static_cast<double>(duration_ms) / 1e3; }
};

class Catalog {
 public:
  Catalog() = default;
  Catalog(std::vector<FileSpec> files, std::int64_t segment_duration_ms);

  std::size_t size() const { return files_.size(); }
  const FileSpec& file(FileId id) const { return files_.at(id - 1); }
  std::span<const FileSpec> files() const { return files_; }
  Bytes segment_size(SegmentId s) const { return file(s.file).segments.at(s.index - 1); }
  std::int64_t segment_duration_ms() const { return segment_duration_ms_; }
  Bytes total_bytes() const { return total_bytes_; }

  friend bool operator==(const Catalog& a, const Catalog& b) {
    return a.segment_duration_ms_ == b.segment_duration_ms_ && a.files_.size() == b.files_.size() &&
           std::equal(a.files_.begin(), a.files_.end(), b.files_.begin(), [](const FileSpec& x, const FileSpec& y) {
             return x.id == y.id && x.duration_ms == y.duration_ms && x.segments == y.segments;
           });
  }

 private:
  std::vector<FileSpec> files_;
  std::int64_t segment_duration_ms_ = 4000;
  Bytes total_bytes_ = 0;
};

/// Files get durations uniform over the configured range (millisecond
/// resolution) and ceil(duration / P) segments with model-drawn sizes.
Catalog build_catalog(const CatalogParams& params, RandomStream& rng);

std::string format_catalog(const Catalog& catalog);
Catalog parse_catalog(std::string_view text);
std::uint64_t catalog_hash(const Catalog& catalog);

/// Client c draws from stream kClientStreamBase + c; lower stream ids are
/// reserved for catalog construction.
inline constexpr std::uint64_t kClientStreamBase = 1000;

struct ProfileEntry {
  FileId file = 0;
  std::int64_t wait_ms = 0;  ///< idle time before this file is requested

  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

struct RequestProfile {
  std::uint64_t seed = 0;
  PopularityParams params;
  double mean_wait_s = 5.0;
  double horizon_s = 10800.0;
  std::uint64_t catalog_hash = 0;
  std::string catalog_file;
  std::vector<std::vector<ProfileEntry>> clients;

  std::size_t n_clients() const { return clients.size(); }
  std::size_t total_requests() const;

  friend bool operator==(const RequestProfile&, const RequestProfile&) = default;
};

/// Pregenerates every client's (wait, file) sequence.
///
/// Each client starts from the shared MZipf distribution; an entry draws an
/// exponential wait, samples a file from the client's current distribution
/// and applies the rewatch update. A client's sequence ends once its
/// accumulated activity time (waits plus playback durations) reaches
/// `horizon_s`, or, under alpha = 0, once every file has been requested.
RequestProfile generate_profile(const Catalog& catalog, std::size_t n_clients, const PopularityParams& params,
                                double mean_wait_s, double horizon_s, std::uint64_t seed);

/// The client's whole segment request order: each profile file's segments
/// in index order, concatenated in profile order.
std::vector<SegmentId> future_segment_sequence(const RequestProfile& profile, const Catalog& catalog,
                                               std::size_t client);

std::string format_profile(const RequestProfile& profile);
RequestProfile parse_profile(std::string_view text);

}  // namespace edgecast

#endif  // EDGECAST_WORKLOAD_HPP
