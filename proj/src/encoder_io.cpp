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

#include "remsim/encoder_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "remsim/error.hpp"
#include "remsim/rng.hpp"

namespace remsim {

namespace {

constexpr std::uint32_t kIdxImages = 0x00000803;
constexpr std::uint32_t kIdxLabels = 0x00000801;
constexpr std::size_t kCifarSide = 32;
constexpr std::size_t kCifarRecord = 1 + kCifarSide * kCifarSide * 3;

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t off, const char* what) {
  if (off + 4 > b.size()) {
    throw FormatError(fmt::format("{}: truncated header", what), b.size());
  }
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) | (std::uint32_t{b[off + 2]} << 8) |
         std::uint32_t{b[off + 3]};
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void RateCodeParams::validate() const {
  if (!(fp > 0.0 && fp <= 1.0)) throw ConfigError(fmt::format("fp = {} outside (0, 1]", fp));
  if (timesteps == 0) throw ConfigError("timesteps must be > 0");
}

bool rate_spike(const RateCodeParams& p, std::uint64_t image, std::uint64_t pixel, std::uint64_t t, double value) {
  const double prob = p.fp * value;
  if (prob <= 0.0) return false;
  return to_unit(counter_hash({p.seed, image, pixel, t})) < prob;
}

BitVector encode_step(std::span<const double> image, const RateCodeParams& p, std::uint64_t image_index,
                      std::uint64_t t) {
  BitVector out(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double v = image[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError(fmt::format("image {} pixel {} = {} outside [0, 1]", image_index, i, v));
    }
    if (rate_spike(p, image_index, i, t, v)) out.set(i);
  }
  return out;
}

std::vector<BitVector> encode(std::span<const double> image, const RateCodeParams& p, std::uint64_t image_index) {
  std::vector<BitVector> out;
  out.reserve(p.timesteps);
  for (std::size_t t = 0; t < p.timesteps; ++t) out.push_back(encode_step(image, p, image_index, t));
  return out;
}

Dataset parse_mnist(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels) {
  if (read_be32(images, 0, "IDX images") != kIdxImages) {
    throw FormatError("IDX images: bad magic (expected 0x00000803)", 0);
  }
  const std::size_t n = read_be32(images, 4, "IDX images");
  const std::size_t rows = read_be32(images, 8, "IDX images");
  const std::size_t cols = read_be32(images, 12, "IDX images");
  const std::size_t need = 16 + n * rows * cols;
  if (images.size() < need) {
    throw FormatError(fmt::format("IDX images: {} images of {}x{} need {} bytes", n, rows, cols, need), images.size());
  }
  if (read_be32(labels, 0, "IDX labels") != kIdxLabels) {
    throw FormatError("IDX labels: bad magic (expected 0x00000801)", 0);
  }
  const std::size_t nl = read_be32(labels, 4, "IDX labels");
  if (nl != n) throw FormatError(fmt::format("IDX labels: {} labels for {} images", nl, n), 4);
  if (labels.size() < 8 + n) {
    throw FormatError(fmt::format("IDX labels: {} labels need {} bytes", n, 8 + n), labels.size());
  }
  Dataset d;
  d.shape = {rows, cols, 1};
  d.pixels.reserve(n * rows * cols);
  for (std::size_t i = 0; i < n * rows * cols; ++i) d.pixels.push_back(images[16 + i] / 255.0);
  for (std::size_t i = 0; i < n; ++i) d.labels.push_back(labels[8 + i]);
  return d;
}

Dataset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const std::vector<std::uint8_t> a = read_file(images);
  const std::vector<std::uint8_t> b = read_file(labels);
  return parse_mnist(a, b);
}

Dataset parse_cifar10(std::span<const std::uint8_t> batch) {
  if (batch.empty() || batch.size() % kCifarRecord != 0) {
    throw FormatError(fmt::format("CIFAR-10 batch of {} bytes is not a whole number of {}-byte records",
                                  batch.size(), kCifarRecord),
                      batch.size() - batch.size() % kCifarRecord);
  }
  const std::size_t n = batch.size() / kCifarRecord;
  const std::size_t plane = kCifarSide * kCifarSide;
  Dataset d;
  d.shape = {kCifarSide, kCifarSide, 3};
  d.pixels.resize(n * plane * 3);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = i * kCifarRecord;
    d.labels.push_back(batch[base]);
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t yx = 0; yx < plane; ++yx) {
        d.pixels[i * plane * 3 + yx * 3 + c] = batch[base + 1 + c * plane + yx] / 255.0;
      }
    }
  }
  return d;
}

Dataset load_cifar10(const std::filesystem::path& batch) { return parse_cifar10(read_file(batch)); }

Dataset synthetic_dataset(const Shape3& shape, std::size_t count, std::uint64_t seed) {
  Dataset d;
  d.shape = shape;
  d.pixels.resize(count * shape.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const std::uint64_t h = counter_hash({seed, 0x5eedu, i, k});
      const bool lit = to_unit(h) < 0.2;
      d.pixels[i * shape.size() + k] = lit ? 0.5 + 0.5 * to_unit(mix64(h)) : 0.0;
    }
    d.labels.push_back(static_cast<int>(i % 10));
  }
  return d;
}

}  // namespace remsim
