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

#ifndef EDGECAST_POPULARITY_HPP
#define EDGECAST_POPULARITY_HPP

#include <span>
#include <vector>

#include "edgecast/common.hpp"
#include "edgecast/random.hpp"

namespace edgecast {

inline constexpr double kNormalizationTolerance = 1e-9;

struct PopularityParams {
  std::size_t n_files = 100;
  double gamma = 2.5;  ///< Zipf exponent
  double q = 10.0;     ///< plateau factor
  double alpha = 1.0;  ///< rewatch factor

  /// Throws ConfigError when any field is out of range.
  void validate() const;

  friend bool operator==(const PopularityParams&, const PopularityParams&) = default;
};

/// Per-client request probabilities over the catalog, indexed by rank.
class PopularityDistribution {
 public:
  /// Takes ownership of `probs`; throws ConfigError unless the entries are
  /// non-negative and sum to 1 within kNormalizationTolerance.
  explicit PopularityDistribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  /// Probability of the file at 1-based `rank`.
  double operator[](FileId rank) const { return probs_.at(rank - 1); }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const PopularityDistribution&, const PopularityDistribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Mandelbrot-Zipf law: P(i) proportional to (i + q)^-gamma, i = 1..N.
PopularityDistribution mzipf_init(const PopularityParams& params);

/// Scales the requested file's probability by alpha and hands the released
/// mass to every other file in proportion to its current probability.
///
/// When the requested file holds all of the mass there is nothing to be
/// proportional to; the released mass is then spread uniformly over the
/// other files. A single-file catalog is returned unchanged.
PopularityDistribution apply_rewatch_update(const PopularityDistribution& dist, FileId requested, double alpha);

/// Draws a rank by inverse-CDF; zero-probability files are never returned.
FileId sample_file(const PopularityDistribution& dist, RandomStream& rng);

}  // namespace edgecast

#endif  // EDGECAST_POPULARITY_HPP
