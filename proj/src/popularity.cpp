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

#include "edgecast/popularity.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace edgecast {

void PopularityParams::validate() const {
  if (n_files < 1) throw ConfigError("popularity: n_files must be >= 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("popularity: gamma must be > 0");
  if (!(q >= 0.0) || !std::isfinite(q)) throw ConfigError("popularity: q must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("popularity: alpha must be in [0, 1]");
}

PopularityDistribution::PopularityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ConfigError("popularity distribution is empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("popularity distribution has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw ConfigError("popularity distribution sums to " + std::to_string(sum));
  }
}

namespace {

void renormalize(std::vector<double>& p) {
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= sum;
}

}  // namespace

PopularityDistribution mzipf_init(const PopularityParams& params) {
  params.validate();
  std::vector<double> p(params.n_files);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::pow(static_cast<double>(i + 1) + params.q, -params.gamma);
  }
  renormalize(p);
  return PopularityDistribution(std::move(p));
}

PopularityDistribution apply_rewatch_update(const PopularityDistribution& dist, FileId requested, double alpha) {
  if (requested < 1 || requested > dist.size()) throw ConfigError("rewatch update: file rank out of range");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("rewatch update: alpha must be in [0, 1]");
  if (alpha == 1.0 || dist.size() == 1) return dist;

  std::vector<double> p(dist.probs().begin(), dist.probs().end());
  const std::size_t j = requested - 1;
  const double released = p[j] - alpha * p[j];

  double others = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k != j) others += p[k];
  }

  if (others > 0.0) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k != j) p[k] += p[k] / others * released;
    }
  } else {
    const double share = released / static_cast<double>(p.size() - 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k != j) p[k] = share;
    }
  }
  p[j] = alpha * p[j];
  renormalize(p);
  return PopularityDistribution(std::move(p));
}

FileId sample_file(const PopularityDistribution& dist, RandomStream& rng) {
  const double u = rng.uniform01();
  const auto probs = dist.probs();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = i;
    if (u < cumulative) return static_cast<FileId>(i + 1);
  }
  // u landed in the rounding gap above the final cumulative sum
  return static_cast<FileId>(last_positive + 1);
}

}  // namespace edgecast
