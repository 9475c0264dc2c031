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

#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "oracles.hpp"
#include "remsim/encoder_io.hpp"
#include "remsim/error.hpp"

using namespace remsim;

namespace {

void put_be32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(v >> s));
}

std::vector<std::uint8_t> idx_images(std::uint32_t n, std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint8_t> b;
  put_be32(b, 0x803);
  put_be32(b, n);
  put_be32(b, rows);
  put_be32(b, cols);
  for (std::uint32_t i = 0; i < n * rows * cols; ++i) b.push_back(static_cast<std::uint8_t>(i * 37));
  return b;
}

std::vector<std::uint8_t> idx_labels(std::uint32_t n) {
  std::vector<std::uint8_t> b;
  put_be32(b, 0x801);
  put_be32(b, n);
  for (std::uint32_t i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(i % 10));
  return b;
}

}  // namespace

TEST(RateCode, ParameterValidation) {
  EXPECT_NO_THROW((RateCodeParams{1.0, 35, 1}.validate()));
  EXPECT_THROW((RateCodeParams{0.0, 35, 1}.validate()), ConfigError);
  EXPECT_THROW((RateCodeParams{1.01, 35, 1}.validate()), ConfigError);
  EXPECT_THROW((RateCodeParams{0.5, 0, 1}.validate()), ConfigError);
}

TEST(RateCode, EmpiricalRateWithinBinomialBound) {
  const std::size_t pixels = 2000;
  const std::size_t steps = 50;
  for (double fp : {0.4, 1.0}) {
    for (double value : {0.25, 0.5, 1.0}) {
      const std::vector<double> image(pixels, value);
      const RateCodeParams p{fp, steps, 17};
      std::size_t ones = 0;
      for (const BitVector& b : encode(image, p, 3)) ones += b.count();
      const double n = static_cast<double>(pixels * steps);
      const double prob = fp * value;
      if (prob >= 1.0) {
        EXPECT_EQ(ones, pixels * steps);
      } else {
        EXPECT_LE(std::abs(ones / n - prob), oracle::binomial_halfwidth(prob, n, 5.0)) << fp << " " << value;
      }
    }
  }
}

TEST(RateCode, DarkPixelsNeverSpikeAndDrawsAreKeyed) {
  std::vector<double> image(100, 0.0);
  image[7] = 0.8;
  const RateCodeParams p{1.0, 40, 5};
  std::size_t lit = 0;
  for (std::size_t t = 0; t < 40; ++t) {
    const BitVector b = encode_step(image, p, 2, t);
    EXPECT_EQ(b.count(), b.get(7) ? 1u : 0u);
    lit += b.get(7);
    EXPECT_EQ(b, encode_step(image, p, 2, t));
  }
  EXPECT_GT(lit, 20u);
  EXPECT_NE(encode(image, p, 2), encode(image, p, 3));
  EXPECT_NE(encode(image, p, 2), encode(image, RateCodeParams{1.0, 40, 6}, 2));
  EXPECT_EQ(encode(image, p, 2).size(), 40u);
}

TEST(RateCode, RejectsPixelsOutsideUnitRange) {
  const std::vector<double> bad = {0.0, 1.5};
  EXPECT_THROW(encode_step(bad, RateCodeParams{}, 0, 0), InputError);
}

TEST(Mnist, ParsesIdx) {
  const Dataset d = parse_mnist(idx_images(3, 4, 5), idx_labels(3));
  EXPECT_EQ(d.shape, (Shape3{4, 5, 1}));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.labels[2], 2);
  EXPECT_DOUBLE_EQ(d.image(1)[0], static_cast<std::uint8_t>(20 * 37) / 255.0);
}

TEST(Mnist, FormatErrorsCarryOffsets) {
  auto images = idx_images(3, 4, 5);
  auto labels = idx_labels(3);
  try {
    parse_mnist(std::span(images).first(10), labels);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 10u);
  }
  try {
    parse_mnist(std::span(images).first(50), labels);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 50u);
  }
  auto bad = images;
  bad[3] = 0x01;
  EXPECT_THROW(parse_mnist(bad, labels), FormatError);
  EXPECT_THROW(parse_mnist(images, idx_labels(2)), FormatError);
  EXPECT_THROW(parse_mnist(images, std::span(labels).first(9)), FormatError);
}

TEST(Mnist, LoadFromFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto img = dir / "remsim_idx_images", lab = dir / "remsim_idx_labels";
  const auto a = idx_images(2, 3, 3);
  const auto b = idx_labels(2);
  std::ofstream(img, std::ios::binary).write(reinterpret_cast<const char*>(a.data()), static_cast<long>(a.size()));
  std::ofstream(lab, std::ios::binary).write(reinterpret_cast<const char*>(b.data()), static_cast<long>(b.size()));
  EXPECT_EQ(load_mnist(img, lab).size(), 2u);
  std::filesystem::remove(img);
  std::filesystem::remove(lab);
  EXPECT_THROW(load_mnist(img, lab), InputError);
}

TEST(Cifar10, PlanarToHwc) {
  std::vector<std::uint8_t> batch(2 * 3073, 0);
  batch[0] = 4;
  batch[3073] = 9;
  batch[1 + 0 * 1024 + 33] = 255;  // red at (1, 1) of image 0
  batch[3073 + 1 + 2 * 1024 + 5] = 51;  // blue at (0, 5) of image 1
  const Dataset d = parse_cifar10(batch);
  EXPECT_EQ(d.shape, (Shape3{32, 32, 3}));
  EXPECT_EQ(d.labels, (std::vector<int>{4, 9}));
  EXPECT_DOUBLE_EQ(d.image(0)[(1 * 32 + 1) * 3 + 0], 1.0);
  EXPECT_DOUBLE_EQ(d.image(1)[5 * 3 + 2], 0.2);
  try {
    parse_cifar10(std::span(batch).first(3073 + 100));
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), 3073u);
  }
  EXPECT_THROW(parse_cifar10({}), FormatError);
}

TEST(Synthetic, DensityAndDeterminism) {
  const Dataset a = synthetic_dataset(Shape3{28, 28, 1}, 20, 3);
  const Dataset b = synthetic_dataset(Shape3{28, 28, 1}, 20, 3);
  EXPECT_EQ(a.pixels, b.pixels);
  std::size_t lit = 0;
  for (double v : a.pixels) {
    if (v > 0.0) {
      ++lit;
      EXPECT_GE(v, 0.5);
      EXPECT_LE(v, 1.0);
    }
  }
  const double n = static_cast<double>(a.pixels.size());
  EXPECT_LE(std::abs(lit / n - 0.2), oracle::binomial_halfwidth(0.2, n, 5.0));
  EXPECT_EQ(a.labels[13], 3);
  EXPECT_NE(synthetic_dataset(Shape3{28, 28, 1}, 20, 4).pixels, a.pixels);
}
