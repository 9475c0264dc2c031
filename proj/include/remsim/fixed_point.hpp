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

#include <compare>
#include <cstdint>
#include <string>

namespace remsim {

/// Signed fixed-point layout: one sign bit, `int_bits` integer bits and
/// `frac_bits` fractional bits. Representable range is
/// [-2^int_bits, 2^int_bits - 2^-frac_bits].
struct QFormat {
  int int_bits = 15;
  int frac_bits = 16;

  constexpr int magnitude_bits() const noexcept { return int_bits + frac_bits; }
  constexpr std::int64_t max_raw() const noexcept {
    return (std::int64_t{1} << magnitude_bits()) - 1;
  }
  constexpr std::int64_t min_raw() const noexcept {
    return -(std::int64_t{1} << magnitude_bits());
  }
  /// True when a value fits a 32-bit memory word.
  constexpr bool fits_word() const noexcept { return magnitude_bits() <= 31; }

  double lsb() const noexcept;
  double max_value() const noexcept;
  double min_value() const noexcept;
  std::string to_string() const;  // "Q15.16"

  /// Throws ConfigError for negative widths or layouts wider than 62 bits.
  void validate() const;

  friend constexpr bool operator==(const QFormat&, const QFormat&) = default;
};

/// Membrane potentials, currents, weights: one 32-bit word.
inline constexpr QFormat kStateFormat{15, 16};
/// HH gating variables m, n, h in [0, 1].
inline constexpr QFormat kGatingFormat{1, 30};
/// Rate-function and polynomial-coefficient LUT words.
inline constexpr QFormat kCoeffFormat{11, 20};
/// Core datapath accumulator (double-width register).
inline constexpr QFormat kAccFormat{22, 40};

/// Sticky saturation flag. Arithmetic clips instead of throwing and records
/// that it did so here.
class FixedStatus {
 public:
  void flag() noexcept {
    saturated_ = true;
    ++events_;
  }
  bool saturated() const noexcept { return saturated_; }
  std::uint64_t events() const noexcept { return events_; }
  void merge(const FixedStatus& other) noexcept {
    saturated_ = saturated_ || other.saturated_;
    events_ += other.events_;
  }
  void clear() noexcept { *this = FixedStatus{}; }

 private:
  bool saturated_ = false;
  std::uint64_t events_ = 0;
};

class FixedPoint {
 public:
  constexpr FixedPoint() = default;

  /// Throws RangeError when `raw` lies outside the format.
  static FixedPoint from_raw(std::int64_t raw, QFormat format);
  /// Round-to-nearest-even. Throws RangeError when out of range or non-finite.
  static FixedPoint from_real(double value, QFormat format);
  /// Round-to-nearest-even, clipping to the format range (and flagging) instead of throwing.
  static FixedPoint saturating(double value, QFormat format, FixedStatus& status);
  /// Decodes a two's-complement 32-bit memory word.
  static FixedPoint from_word(std::uint32_t word, QFormat format);

  static FixedPoint zero(QFormat format) { return from_raw(0, format); }
  static FixedPoint one(QFormat format) { return from_raw(std::int64_t{1} << format.frac_bits, format); }

  constexpr std::int64_t raw() const noexcept { return raw_; }
  constexpr QFormat format() const noexcept { return format_; }
  double to_double() const noexcept;
  /// Requires a word-sized format.
  std::uint32_t to_word() const;

  /// Re-quantizes into `out` (RNE, saturating).
  FixedPoint to(QFormat out, FixedStatus& status) const;

 private:
  constexpr FixedPoint(std::int64_t raw, QFormat format) : raw_(raw), format_(format) {}

  std::int64_t raw_ = 0;
  QFormat format_{};

  friend FixedPoint make_unchecked(std::int64_t raw, QFormat format) noexcept;
};

/// Value comparison across formats.
std::strong_ordering operator<=>(const FixedPoint& a, const FixedPoint& b);
bool operator==(const FixedPoint& a, const FixedPoint& b);

// Each operation is computed exactly at full width and rounded once into
// `out` (round-to-nearest-even), saturating with a flag on overflow.
FixedPoint add(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status);
FixedPoint sub(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status);
FixedPoint mul(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status);
FixedPoint clamp(const FixedPoint& v, const FixedPoint& lo, const FixedPoint& hi);

namespace fixed_detail {

__extension__ using int128 = __int128;

/// v * 2^-shift with round-to-nearest-even; negative shift is an exact left shift.
int128 round_shift(int128 v, int shift) noexcept;
/// Clips `v` into the raw range of `format`, flagging `status` if it had to.
std::int64_t saturate(int128 v, QFormat format, FixedStatus& status) noexcept;

}  // namespace fixed_detail

/// Builds a FixedPoint from a raw value already known to be in range.
FixedPoint make_unchecked(std::int64_t raw, QFormat format) noexcept;

}  // namespace remsim
