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

#ifndef EDGECAST_COMMON_HPP
#define EDGECAST_COMMON_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edgecast {

/// Simulation clock in integer nanoseconds.
using SimTime = std::int64_t;
using Bytes = std::uint64_t;
using ClientId = std::uint32_t;
/// 1-based popularity rank; doubles as the file's identity.
using FileId = std::uint32_t;

inline constexpr SimTime kNanosPerSecond = 1'000'000'000;
inline constexpr SimTime kNanosPerMilli = 1'000'000;
inline constexpr double kBytesPerMB = 1e6;

constexpr SimTime seconds_to_sim(double s) { return static_cast<SimTime>(s * 1e9 + (s >= 0 ? 0.5 : -0.5)); }
constexpr double sim_to_seconds(SimTime t) { return static_cast<double>(t) / 1e9; }

/// A segment is named by its file and its 1-based position in that file.
/// The defaulted ordering is the canonical (file, index) order used for
/// every deterministic tie-break.
struct SegmentId {
  FileId file = 0;
  std::uint32_t index = 0;

  constexpr auto operator<=>(const SegmentId&) const = default;

  constexpr std::uint64_t key() const { return (static_cast<std::uint64_t>(file) << 32) | index; }
  static constexpr SegmentId from_key(std::uint64_t k) {
    return {static_cast<FileId>(k >> 32), static_cast<std::uint32_t>(k & 0xffffffffu)};
  }
};

struct SegmentIdHash {
  std::size_t operator()(const SegmentId& s) const noexcept { return std::hash<std::uint64_t>{}(s.key()); }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken simulator invariant (event ordering, empty-cache eviction, ...).
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace edgecast

#endif  // EDGECAST_COMMON_HPP
