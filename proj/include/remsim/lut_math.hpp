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

/**
 * @file lut_math.hpp
 * @brief Fixed-point transcendental evaluation backed by ROM lookup tables.
 *
 * The exponential is evaluated as
 *
 *   t = N * ln2 / 2^K + r,    N = M * 2^K + d,  0 <= d < 2^K
 *   e^t = 2^M * LUT(d) * P(r),  LUT(d) = 2^(d / 2^K),  P(r) = 1 + r + r^2/2
 *
 * N is rounded to nearest so |r| <= ln2 / 2^(K+1). The only memory traffic
 * is one ROM fetch of LUT(d); the 2^M factor is a shift.
 *
 * The remainder and the result are held at double fractional width (the
 * width of the LUT x polynomial product), so small results keep their
 * relative precision instead of collapsing to a few LSBs of the input format.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "remsim/fixed_point.hpp"
#include "remsim/lut_directory.hpp"
#include "remsim/memory_model.hpp"

namespace remsim {

inline constexpr int kMaxExpK = 12;
inline constexpr int kMinLutFracBits = 8;

struct RangeReduction {
  std::int64_t big_m = 0;        // M
  std::uint32_t index_d = 0;     // d in [0, 2^K)
  FixedPoint remainder_r;        // r, in remainder_format(t)
  std::int64_t n_steps = 0;      // N = M * 2^K + d
};

/// Format of the remainder for an argument of format `in`: twice the fractional bits.
QFormat remainder_format(QFormat in);
/// Format of eval_exp results for an argument of format `in`.
QFormat exp_result_format(QFormat in);

/// Exponential LUT: row d holds 2^(d / 2^K) rounded to nearest at `q_frac` bits.
/// Throws ConfigError unless 0 <= k_param <= 12 and 8 <= q_frac <= 30.
LutTable build_exp_lut(int k_param, int q_frac);

/// Total on word-sized arguments. Throws ArgumentError for K outside [0, 12]
/// or a non word-sized format.
RangeReduction range_reduce(const FixedPoint& t, int k_param);

struct ExpResult {
  FixedPoint value;
  bool saturated = false;
};

/// e^t through the ROM-resident table `lut` (one ROM read on `rom`).
/// `t` must use the table's fractional width.
ExpResult eval_exp(const FixedPoint& t, const LutTable& lut, MemArray& rom);

/// Reads LUT row `offset` of `kind`: one ROM-row retrieval on `rom`.
/// Throws DirectoryError for unregistered kinds and BoundsError for bad offsets.
std::span<const std::uint32_t> fetch_lut(MemArray& rom, LutKind kind, std::size_t offset);

/// Samples `f` on `rows` evenly spaced points of [v_min, v_max]; lookups use
/// the nearest row. Throws BuildError naming the first grid point where `f`
/// is not finite or not representable.
LutTable build_rate_lut(LutKind kind, const std::function<double(double)>& f, double v_min, double v_max,
                        std::size_t rows, QFormat format = kCoeffFormat);

/// Nearest-row index of `v` in a rate LUT, clamped to the table.
std::size_t rate_lut_index(const LutTable& table, const FixedPoint& v);

/// Single-row coefficient table (polynomial or ionic-current constants).
/// Rows are padded to a power of two words.
LutTable build_coeff_lut(LutKind kind, std::span<const double> coefficients, QFormat format = kCoeffFormat);

}  // namespace remsim
