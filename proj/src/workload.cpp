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

#include "edgecast/workload.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "edgecast/textio.hpp"

namespace edgecast {

namespace {

constexpr std::string_view kCatalogMagic = "# edgecast catalog v1";
constexpr std::string_view kProfileMagic = "# edgecast profile v1";
constexpr std::string_view kCatalogColumns = "file_id,duration_s,segment_sizes_bytes";
constexpr std::string_view kProfileColumns = "client_id,seq_no,file_id,wait_ms";

constexpr int kMaxSizeRejections = 10'000;

std::string format_ms_as_seconds(std::int64_t ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%03lld", static_cast<long long>(ms / 1000), static_cast<long long>(ms % 1000));
  return buf;
}

}  // namespace

std::string_view to_string(SizeFamily f) {
  switch (f) {
    case SizeFamily::LogNormal: return "lognormal";
    case SizeFamily::Uniform: return "uniform";
    case SizeFamily::Constant: return "constant";
  }
  return "unknown";
}

SizeFamily parse_size_family(std::string_view s) {
  if (s == "lognormal") return SizeFamily::LogNormal;
  if (s == "uniform") return SizeFamily::Uniform;
  if (s == "constant") return SizeFamily::Constant;
  throw ConfigError("unknown segment size family '" + std::string(s) + "'");
}

void SegmentSizeModel::validate() const {
  if (!(min_bytes > 0.0)) throw ConfigError("segment size: min_bytes must be > 0");
  if (!(min_bytes <= mean_bytes && mean_bytes <= max_bytes)) {
    throw ConfigError("segment size: require min_bytes <= mean_bytes <= max_bytes");
  }
  if (family == SizeFamily::LogNormal && !(sigma >= 0.0)) throw ConfigError("segment size: sigma must be >= 0");
}

Bytes SegmentSizeModel::draw(RandomStream& rng) const {
  const auto round = [](double b) { return static_cast<Bytes>(std::llround(b)); };
  if (min_bytes == max_bytes || family == SizeFamily::Constant) return round(mean_bytes);

  for (int attempt = 0; attempt < kMaxSizeRejections; ++attempt) {
    double b = 0.0;
    if (family == SizeFamily::Uniform) {
      b = rng.uniform(min_bytes, max_bytes);
    } else {
      // parameterized so that E[size] = mean_bytes before truncation
      const double mu = std::log(mean_bytes) - 0.5 * sigma * sigma;
      b = std::exp(mu + sigma * rng.normal());
    }
    if (b >= min_bytes && b <= max_bytes) return round(b);
  }
  return round(mean_bytes);
}

void CatalogParams::validate() const {
  if (n_files < 1) throw ConfigError("catalog: n_files must be >= 1");
  if (!(segment_duration_s > 0.0)) throw ConfigError("catalog: segment_duration_s must be > 0");
  if (!(min_duration_s > 0.0 && min_duration_s <= max_duration_s)) {
    throw ConfigError("catalog: duration range must satisfy 0 < min <= max");
  }
  size_model.validate();
}

Catalog::Catalog(std::vector<FileSpec> files, std::int64_t segment_duration_ms)
    : files_(std::move(files)), segment_duration_ms_(segment_duration_ms) {
  if (segment_duration_ms_ <= 0) throw ConfigError("catalog: segment duration must be > 0");
  for (std::size_t i = 0; i < files_.size(); ++i) {
    const auto& f = files_[i];
    if (f.id != i + 1) throw ConfigError("catalog: file ids must be 1..N in order");
    if (f.segments.empty()) throw ConfigError("catalog: file " + std::to_string(f.id) + " has no segments");
    for (Bytes b : f.segments) {
      if (b == 0) throw ConfigError("catalog: file " + std::to_string(f.id) + " has an empty segment");
      total_bytes_ += b;
    }
  }
}

Catalog build_catalog(const CatalogParams& params, RandomStream& rng) {
  params.validate();
  const auto min_ms = static_cast<std::int64_t>(std::llround(params.min_duration_s * 1e3));
  const auto max_ms = static_cast<std::int64_t>(std::llround(params.max_duration_s * 1e3));
  const auto seg_ms = static_cast<std::int64_t>(std::llround(params.segment_duration_s * 1e3));

  std::vector<FileSpec> files;
  files.reserve(params.n_files);
  for (std::size_t i = 0; i < params.n_files; ++i) {
    FileSpec f;
    f.id = static_cast<FileId>(i + 1);
    f.duration_ms = min_ms == max_ms ? min_ms
                                     : static_cast<std::int64_t>(std::llround(
                                           rng.uniform(static_cast<double>(min_ms), static_cast<double>(max_ms))));
    const auto n_segments = (f.duration_ms + seg_ms - 1) / seg_ms;
    f.segments.reserve(static_cast<std::size_t>(n_segments));
    for (std::int64_t k = 0; k < n_segments; ++k) f.segments.push_back(params.size_model.draw(rng));
    files.push_back(std::move(f));
  }
  return Catalog(std::move(files), seg_ms);
}

std::string format_catalog(const Catalog& catalog) {
  std::string out;
  out += kCatalogMagic;
  out += "\nsegment_duration_ms " + std::to_string(catalog.segment_duration_ms());
  out += "\nn_files " + std::to_string(catalog.size());
  out += "\n";
  out += kCatalogColumns;
  out += "\n";
  for (const auto& f : catalog.files()) {
    out += std::to_string(f.id);
    out += ',';
    out += format_ms_as_seconds(f.duration_ms);
    for (Bytes b : f.segments) {
      out += ',';
      out += std::to_string(b);
    }
    out += '\n';
  }
  return out;
}

namespace {

// Reads "key value" header lines until the column line is reached.
std::map<std::string, std::string, std::less<>> read_header(text::LineReader& reader, std::string_view magic,
                                                            std::string_view columns) {
  std::string_view line;
  if (!reader.next(line) || line != magic) throw ParseError(reader.line_number(), "missing '" + std::string(magic) + "'");
  std::map<std::string, std::string, std::less<>> header;
  while (reader.next(line)) {
    if (line == columns) return header;
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw ParseError(reader.line_number(), "malformed header line");
    header.emplace(std::string(line.substr(0, sp)), std::string(text::trim(line.substr(sp + 1))));
  }
  throw ParseError(reader.line_number(), "missing column line '" + std::string(columns) + "'");
}

const std::string& header_value(const std::map<std::string, std::string, std::less<>>& header, std::string_view key) {
  auto it = header.find(key);
  if (it == header.end()) throw ParseError(0, "header is missing '" + std::string(key) + "'");
  return it->second;
}

std::int64_t parse_seconds_as_ms(std::string_view s, std::size_t line) {
  // same fixed-point layout as milliseconds-with-decimals, one unit up
  const SimTime scaled = text::parse_millis(s, line);
  if (scaled % 1000 != 0) throw ParseError(line, "duration has more than 3 decimals");
  return scaled / 1000;
}

}  // namespace

Catalog parse_catalog(std::string_view contents) {
  text::LineReader reader(contents);
  const auto header = read_header(reader, kCatalogMagic, kCatalogColumns);
  const auto seg_ms = static_cast<std::int64_t>(text::parse_u64(header_value(header, "segment_duration_ms"), 0));
  const auto n_files = text::parse_u64(header_value(header, "n_files"), 0);

  std::vector<FileSpec> files;
  std::string_view line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = text::split(line, ',');
    if (fields.size() < 3) throw ParseError(reader.line_number(), "catalog record needs id, duration and sizes");
    FileSpec f;
    f.id = static_cast<FileId>(text::parse_u64(fields[0], reader.line_number()));
    f.duration_ms = parse_seconds_as_ms(fields[1], reader.line_number());
    for (std::size_t k = 2; k < fields.size(); ++k) f.segments.push_back(text::parse_u64(fields[k], reader.line_number()));
    files.push_back(std::move(f));
  }
  if (files.size() != n_files) throw ParseError(reader.line_number(), "catalog record count does not match n_files");
  return Catalog(std::move(files), seg_ms);
}

std::uint64_t catalog_hash(const Catalog& catalog) { return text::fnv1a(format_catalog(catalog)); }

std::size_t RequestProfile::total_requests() const {
  std::size_t n = 0;
  for (const auto& c : clients) n += c.size();
  return n;
}

RequestProfile generate_profile(const Catalog& catalog, std::size_t n_clients, const PopularityParams& params,
                                double mean_wait_s, double horizon_s, std::uint64_t seed) {
  params.validate();
  if (params.n_files != catalog.size()) throw ConfigError("profile: popularity n_files differs from catalog size");
  if (!(mean_wait_s > 0.0)) throw ConfigError("profile: mean_wait_s must be > 0");
  if (!(horizon_s > 0.0)) throw ConfigError("profile: horizon_s must be > 0");
  if (n_clients < 1) throw ConfigError("profile: n_clients must be >= 1");

  RequestProfile profile;
  profile.seed = seed;
  profile.params = params;
  profile.mean_wait_s = mean_wait_s;
  profile.horizon_s = horizon_s;
  profile.catalog_hash = catalog_hash(catalog);
  profile.clients.resize(n_clients);

  const auto initial = mzipf_init(params);
  const auto horizon_ms = static_cast<std::int64_t>(std::llround(horizon_s * 1e3));

  for (std::size_t c = 0; c < n_clients; ++c) {
    RandomStream rng(seed, kClientStreamBase + c);
    auto dist = initial;
    std::vector<bool> watched(catalog.size(), false);
    std::size_t distinct = 0;
    std::int64_t activity_ms = 0;
    auto& entries = profile.clients[c];

    while (true) {
      const auto wait_ms = static_cast<std::int64_t>(std::llround(rng.exponential(mean_wait_s) * 1e3));
      if (activity_ms + wait_ms >= horizon_ms) break;
      activity_ms += wait_ms;
      const FileId file = sample_file(dist, rng);
      entries.push_back({file, wait_ms});
      dist = apply_rewatch_update(dist, file, params.alpha);
      activity_ms += catalog.file(file).duration_ms;
      if (!watched[file - 1]) {
        watched[file - 1] = true;
        ++distinct;
      }
      if (params.alpha == 0.0 && distinct == catalog.size()) break;
    }
  }
  return profile;
}

std::vector<SegmentId> future_segment_sequence(const RequestProfile& profile, const Catalog& catalog,
                                               std::size_t client) {
  std::vector<SegmentId> seq;
  for (const auto& e : profile.clients.at(client)) {
    const auto n = catalog.file(e.file).segment_count();
    for (std::uint32_t k = 1; k <= n; ++k) seq.push_back({e.file, k});
  }
  return seq;
}

std::string format_profile(const RequestProfile& profile) {
  using text::format_double;
  std::string out;
  out += kProfileMagic;
  out += "\nseed " + std::to_string(profile.seed);
  out += "\nalpha " + format_double(profile.params.alpha);
  out += "\nn_files " + std::to_string(profile.params.n_files);
  out += "\ngamma " + format_double(profile.params.gamma);
  out += "\nq " + format_double(profile.params.q);
  out += "\nmean_wait_s " + format_double(profile.mean_wait_s);
  out += "\nhorizon_s " + format_double(profile.horizon_s);
  out += "\nn_clients " + std::to_string(profile.clients.size());
  out += "\ncatalog_hash " + text::hex64(profile.catalog_hash);
  if (!profile.catalog_file.empty()) out += "\ncatalog_file " + profile.catalog_file;
  out += "\n";
  out += kProfileColumns;
  out += "\n";
  for (std::size_t c = 0; c < profile.clients.size(); ++c) {
    const auto& entries = profile.clients[c];
    for (std::size_t i = 0; i < entries.size(); ++i) {
      out += std::to_string(c) + ',' + std::to_string(i) + ',' + std::to_string(entries[i].file) + ',' +
             std::to_string(entries[i].wait_ms) + '\n';
    }
  }
  return out;
}

RequestProfile parse_profile(std::string_view contents) {
  text::LineReader reader(contents);
  const auto header = read_header(reader, kProfileMagic, kProfileColumns);

  RequestProfile p;
  p.seed = text::parse_u64(header_value(header, "seed"), 0);
  p.params.alpha = text::parse_double(header_value(header, "alpha"), 0);
  p.params.n_files = text::parse_u64(header_value(header, "n_files"), 0);
  p.params.gamma = text::parse_double(header_value(header, "gamma"), 0);
  p.params.q = text::parse_double(header_value(header, "q"), 0);
  p.mean_wait_s = text::parse_double(header_value(header, "mean_wait_s"), 0);
  p.horizon_s = text::parse_double(header_value(header, "horizon_s"), 0);
  const auto hash_text = header_value(header, "catalog_hash");
  p.catalog_hash = std::stoull(hash_text, nullptr, 16);
  if (auto it = header.find("catalog_file"); it != header.end()) p.catalog_file = it->second;
  p.clients.resize(text::parse_u64(header_value(header, "n_clients"), 0));

  std::string_view line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = text::split(line, ',');
    const auto ln = reader.line_number();
    if (fields.size() != 4) throw ParseError(ln, "profile record needs 4 fields");
    const auto client = text::parse_u64(fields[0], ln);
    const auto seq = text::parse_u64(fields[1], ln);
    if (client >= p.clients.size()) throw ParseError(ln, "client id out of range");
    auto& entries = p.clients[client];
    if (seq != entries.size()) throw ParseError(ln, "sequence numbers must be consecutive per client");
    ProfileEntry e;
    e.file = static_cast<FileId>(text::parse_u64(fields[2], ln));
    e.wait_ms = text::parse_i64(fields[3], ln);
    if (e.file < 1 || e.file > p.params.n_files) throw ParseError(ln, "file id out of range");
    if (e.wait_ms < 0) throw ParseError(ln, "negative wait");
    entries.push_back(e);
  }
  return p;
}

}  // namespace edgecast
