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

#include "remsim/fixed_point.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "remsim/error.hpp"

namespace remsim {

using fixed_detail::int128;

double QFormat::lsb() const noexcept { return std::ldexp(1.0, -frac_bits); }
double QFormat::max_value() const noexcept { return std::ldexp(static_cast<double>(max_raw()), -frac_bits); }
double QFormat::min_value() const noexcept { return std::ldexp(static_cast<double>(min_raw()), -frac_bits); }

std::string QFormat::to_string() const { return fmt::format("Q{}.{}", int_bits, frac_bits); }

void QFormat::validate() const {
  if (int_bits < 0 || frac_bits < 0 || magnitude_bits() > 62) {
    throw ConfigError(fmt::format("invalid fixed-point format {}", to_string()));
  }
}

namespace fixed_detail {

int128 round_shift(int128 v, int shift) noexcept {
  if (shift <= 0) {
    return v * (int128{1} << std::min(-shift, 120));
  }
  if (shift >= 126) {
    // |v| < 2^126 always, so the quotient rounds to zero.
    return 0;
  }
  const int128 q = v >> shift;  // floor
  const int128 rem = v - (q << shift);
  const int128 half = int128{1} << (shift - 1);
  if (rem > half || (rem == half && (q & 1) != 0)) {
    return q + 1;
  }
  return q;
}

std::int64_t saturate(int128 v, QFormat format, FixedStatus& status) noexcept {
  if (v > format.max_raw()) {
    status.flag();
    return format.max_raw();
  }
  if (v < format.min_raw()) {
    status.flag();
    return format.min_raw();
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace fixed_detail

FixedPoint make_unchecked(std::int64_t raw, QFormat format) noexcept { return FixedPoint(raw, format); }

FixedPoint FixedPoint::from_raw(std::int64_t raw, QFormat format) {
  format.validate();
  if (raw > format.max_raw() || raw < format.min_raw()) {
    throw RangeError(fmt::format("raw value {} outside {}", raw, format.to_string()));
  }
  return FixedPoint(raw, format);
}

FixedPoint FixedPoint::from_real(double value, QFormat format) {
  format.validate();
  if (!std::isfinite(value)) {
    throw RangeError("non-finite value cannot be converted to fixed point");
  }
  const double scaled = std::nearbyint(std::ldexp(value, format.frac_bits));
  if (scaled > static_cast<double>(format.max_raw()) || scaled < static_cast<double>(format.min_raw())) {
    throw RangeError(fmt::format("value {} outside representable range of {} [{}, {}]", value,
                                 format.to_string(), format.min_value(), format.max_value()));
  }
  return FixedPoint(static_cast<std::int64_t>(scaled), format);
}

FixedPoint FixedPoint::saturating(double value, QFormat format, FixedStatus& status) {
  format.validate();
  if (std::isnan(value)) {
    status.flag();
    return FixedPoint(0, format);
  }
  const double scaled = std::nearbyint(std::ldexp(value, format.frac_bits));
  if (scaled >= static_cast<double>(format.max_raw())) {
    if (scaled > static_cast<double>(format.max_raw())) status.flag();
    return FixedPoint(format.max_raw(), format);
  }
  if (scaled <= static_cast<double>(format.min_raw())) {
    if (scaled < static_cast<double>(format.min_raw())) status.flag();
    return FixedPoint(format.min_raw(), format);
  }
  return FixedPoint(static_cast<std::int64_t>(scaled), format);
}

FixedPoint FixedPoint::from_word(std::uint32_t word, QFormat format) {
  if (!format.fits_word()) {
    throw ConfigError(fmt::format("format {} does not fit a 32-bit word", format.to_string()));
  }
  return from_raw(static_cast<std::int32_t>(word), format);
}

double FixedPoint::to_double() const noexcept {
  return std::ldexp(static_cast<double>(raw_), -format_.frac_bits);
}

std::uint32_t FixedPoint::to_word() const {
  if (!format_.fits_word()) {
    throw ConfigError(fmt::format("format {} does not fit a 32-bit word", format_.to_string()));
  }
  return static_cast<std::uint32_t>(static_cast<std::int32_t>(raw_));
}

FixedPoint FixedPoint::to(QFormat out, FixedStatus& status) const {
  const int128 v = fixed_detail::round_shift(raw_, format_.frac_bits - out.frac_bits);
  return FixedPoint(fixed_detail::saturate(v, out, status), out);
}

namespace {

// Both operands widened to a common fractional width (exact).
struct Aligned {
  int128 a;
  int128 b;
  int frac;
};

Aligned align(const FixedPoint& a, const FixedPoint& b, int min_frac) {
  const int frac = std::max({a.format().frac_bits, b.format().frac_bits, min_frac});
  return {int128{a.raw()} << (frac - a.format().frac_bits), int128{b.raw()} << (frac - b.format().frac_bits),
          frac};
}

}  // namespace

std::strong_ordering operator<=>(const FixedPoint& a, const FixedPoint& b) {
  const Aligned x = align(a, b, 0);
  if (x.a < x.b) return std::strong_ordering::less;
  if (x.a > x.b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const FixedPoint& a, const FixedPoint& b) { return (a <=> b) == std::strong_ordering::equal; }

FixedPoint add(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status) {
  const Aligned x = align(a, b, out.frac_bits);
  const int128 sum = fixed_detail::round_shift(x.a + x.b, x.frac - out.frac_bits);
  return make_unchecked(fixed_detail::saturate(sum, out, status), out);
}

FixedPoint sub(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status) {
  const Aligned x = align(a, b, out.frac_bits);
  const int128 diff = fixed_detail::round_shift(x.a - x.b, x.frac - out.frac_bits);
  return make_unchecked(fixed_detail::saturate(diff, out, status), out);
}

FixedPoint mul(const FixedPoint& a, const FixedPoint& b, QFormat out, FixedStatus& status) {
  const int128 product = int128{a.raw()} * int128{b.raw()};
  const int shift = a.format().frac_bits + b.format().frac_bits - out.frac_bits;
  return make_unchecked(fixed_detail::saturate(fixed_detail::round_shift(product, shift), out, status), out);
}

FixedPoint clamp(const FixedPoint& v, const FixedPoint& lo, const FixedPoint& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

}  // namespace remsim
