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

// Locale-independent formatting and file helpers shared by every on-disk
// format.

#ifndef EDGECAST_TEXTIO_HPP
#define EDGECAST_TEXTIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edgecast/common.hpp"

namespace edgecast::text {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
/// Nanosecond time as milliseconds with exactly six decimals.
std::string format_millis(SimTime t);

double parse_double(std::string_view s, std::size_t line);
std::uint64_t parse_u64(std::string_view s, std::size_t line);
std::int64_t parse_i64(std::string_view s, std::size_t line);
/// Inverse of format_millis; exact for its output.
SimTime parse_millis(std::string_view s, std::size_t line);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t v);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Iterates the lines of a text buffer, tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}
  bool next(std::string_view& line);
  std::size_t line_number() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace edgecast::text

#endif  // EDGECAST_TEXTIO_HPP
