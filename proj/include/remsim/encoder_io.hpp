/*
 * Copyright 2026 The remsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "remsim/network.hpp"
#include "remsim/spikes.hpp"

namespace remsim {

struct RateCodeParams {
  double fp = 1.0;  // spike probability of a full-intensity pixel per time-step
  std::size_t timesteps = 35;
  std::uint64_t seed = 1;

  /// Throws ConfigError unless 0 < fp <= 1 and timesteps > 0.
  void validate() const;
};

/// Images normalized to [0, 1], HWC, stored back to back.
struct Dataset {
  Shape3 shape;
  std::vector<double> pixels;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> image(std::size_t i) const {
    return std::span<const double>(pixels).subspan(i * shape.size(), shape.size());
  }
};

/// True when pixel `pixel` of image `image` spikes at time-step `t`: a
/// Bernoulli draw with probability fp * value, keyed on (seed, image, pixel, t).
bool rate_spike(const RateCodeParams& p, std::uint64_t image, std::uint64_t pixel, std::uint64_t t, double value);

/// One time-step of spikes. Throws InputError for pixels outside [0, 1].
BitVector encode_step(std::span<const double> image, const RateCodeParams& p, std::uint64_t image_index,
                      std::uint64_t t);
/// All time-steps of one image.
std::vector<BitVector> encode(std::span<const double> image, const RateCodeParams& p, std::uint64_t image_index);

/// IDX (big-endian) parsers. Throw FormatError with the failing byte offset.
Dataset parse_mnist(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels);
Dataset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels);
/// Binary CIFAR-10 batch: 3073-byte records, label then channel-planar 32x32x3.
Dataset parse_cifar10(std::span<const std::uint8_t> batch);
Dataset load_cifar10(const std::filesystem::path& batch);

/// Deterministic stand-in data: about 20% of pixels lit with intensity in
/// [0.5, 1], the rest 0; labels cycle 0..9.
Dataset synthetic_dataset(const Shape3& shape, std::size_t count, std::uint64_t seed);

}  // namespace remsim
