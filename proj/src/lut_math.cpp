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

#include "remsim/lut_math.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "remsim/error.hpp"

namespace remsim {

using fixed_detail::int128;

namespace {

// ln(2) * 2^62, rounded to nearest.
constexpr std::int64_t kLn2Q62 = 3196577161300663915LL;

int128 floor_div(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::string_view to_string(LutKind kind) noexcept {
  switch (kind) {
    case LutKind::Exp: return "exp";
    case LutKind::HhAlphaM: return "hh_alpha_m";
    case LutKind::HhBetaM: return "hh_beta_m";
    case LutKind::HhAlphaN: return "hh_alpha_n";
    case LutKind::HhBetaN: return "hh_beta_n";
    case LutKind::HhAlphaH: return "hh_alpha_h";
    case LutKind::HhBetaH: return "hh_beta_h";
    case LutKind::IonNa: return "ion_na";
    case LutKind::IonK: return "ion_k";
    case LutKind::IonLeak: return "ion_leak";
    case LutKind::IzhMembrane: return "izh_membrane";
    case LutKind::IzhRecovery: return "izh_recovery";
  }
  return "?";
}

FixedPoint LutTable::value(std::size_t row, std::size_t word) const {
  const std::size_t idx = row * row_words + word;
  if (word >= row_words || idx >= words.size()) {
    throw BoundsError(fmt::format("LUT {} row {} word {} out of range", to_string(kind), row, word));
  }
  return FixedPoint::from_word(words[idx], format);
}

// ---------------------------------------------------------------------------
// LutDirectory

LutDirectory::LutDirectory(std::size_t rom_words, std::size_t array_row_words)
    : rom_words_(rom_words), array_row_words_(array_row_words == 0 ? 1 : array_row_words) {}

const LutEntry& LutDirectory::add(LutKind kind, std::size_t row_count, std::size_t row_words, int k_param,
                                  QFormat format) {
  if (contains(kind)) {
    throw ConfigError(fmt::format("LUT {} registered twice", to_string(kind)));
  }
  if (row_count == 0 || row_words == 0 || array_row_words_ % row_words != 0) {
    throw ConfigError(fmt::format("LUT {}: {} rows of {} words do not tile {}-word array rows", to_string(kind),
                                  row_count, row_words, array_row_words_));
  }
  const std::size_t start = (next_free_ + array_row_words_ - 1) / array_row_words_ * array_row_words_;
  const std::size_t end = start + row_count * row_words;
  if (end > rom_words_) {
    throw CapacityError(fmt::format("LUT {} needs ROM words [{}, {}) but the ROM plane holds {}", to_string(kind),
                                    start, end, rom_words_));
  }
  entries_.push_back(LutEntry{kind, start, row_count, row_words, k_param, format});
  next_free_ = end;
  return entries_.back();
}

bool LutDirectory::contains(LutKind kind) const noexcept {
  return std::any_of(entries_.begin(), entries_.end(), [kind](const LutEntry& e) { return e.kind == kind; });
}

const LutEntry& LutDirectory::find(LutKind kind) const {
  for (const LutEntry& e : entries_) {
    if (e.kind == kind) return e;
  }
  throw DirectoryError(fmt::format("LUT {} is not registered in this ROM", to_string(kind)));
}

bool LutDirectory::consistent() const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].end_address() > rom_words_) return false;
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      const bool disjoint = entries_[i].end_address() <= entries_[j].start_address ||
                            entries_[j].end_address() <= entries_[i].start_address;
      if (!disjoint) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exponential

QFormat remainder_format(QFormat in) { return QFormat{1, std::min(2 * in.frac_bits, 60)}; }

QFormat exp_result_format(QFormat in) { return QFormat{in.int_bits, std::min(2 * in.frac_bits, 62 - in.int_bits)}; }

LutTable build_exp_lut(int k_param, int q_frac) {
  if (k_param < 0 || k_param > kMaxExpK) {
    throw ConfigError(fmt::format("exp LUT K={} outside [0, {}]", k_param, kMaxExpK));
  }
  if (q_frac < kMinLutFracBits || q_frac > 30) {
    throw ConfigError(fmt::format("exp LUT q_frac={} outside [{}, 30]", q_frac, kMinLutFracBits));
  }
  LutTable t;
  t.kind = LutKind::Exp;
  t.k_param = k_param;
  t.format = QFormat{std::min(15, 31 - q_frac), q_frac};
  t.row_words = 1;
  const std::size_t rows = std::size_t{1} << k_param;
  t.words.reserve(rows);
  for (std::size_t d = 0; d < rows; ++d) {
    const long double v = std::exp2(static_cast<long double>(d) / static_cast<long double>(rows));
    const auto raw = static_cast<std::int64_t>(std::nearbyint(std::ldexp(v, q_frac)));
    t.words.push_back(FixedPoint::from_raw(raw, t.format).to_word());
  }
  return t;
}

RangeReduction range_reduce(const FixedPoint& t, int k_param) {
  if (k_param < 0 || k_param > kMaxExpK) {
    throw ArgumentError(fmt::format("range reduction K={} outside [0, {}]", k_param, kMaxExpK));
  }
  const QFormat in = t.format();
  if (!in.fits_word()) {
    throw ArgumentError("range reduction needs a word-sized argument");
  }
  const int f = in.frac_bits;
  // Work in units of 2^-(f + K + 62): t -> t_raw << (K + 62), ln2/2^K -> ln2_q62 << f.
  const int128 num = int128{t.raw()} << (k_param + 62);
  const int128 step = int128{kLn2Q62} << f;
  const int128 n = floor_div(2 * num + step, 2 * step);  // round half up
  const int128 rem_hp = num - n * step;

  const QFormat rfmt = remainder_format(in);
  const int128 r_raw = fixed_detail::round_shift(rem_hp, f + k_param + 62 - rfmt.frac_bits);

  RangeReduction out;
  out.n_steps = static_cast<std::int64_t>(n);
  out.big_m = out.n_steps >> k_param;  // floor toward -inf
  out.index_d = static_cast<std::uint32_t>(out.n_steps & ((std::int64_t{1} << k_param) - 1));
  out.remainder_r = make_unchecked(static_cast<std::int64_t>(r_raw), rfmt);
  return out;
}

ExpResult eval_exp(const FixedPoint& t, const LutTable& lut, MemArray& rom) {
  if (lut.kind != LutKind::Exp) {
    throw ArgumentError("eval_exp needs an exponential LUT");
  }
  const int f = lut.format.frac_bits;
  if (t.format().frac_bits != f) {
    throw ArgumentError(fmt::format("eval_exp argument {} does not match LUT format {}", t.format().to_string(),
                                    lut.format.to_string()));
  }
  const RangeReduction rr = range_reduce(t, lut.k_param);
  const std::span<const std::uint32_t> row = fetch_lut(rom, LutKind::Exp, rr.index_d);
  const int128 lut_raw = static_cast<std::int32_t>(row[0]);

  const int rf = rr.remainder_r.format().frac_bits;
  const int128 r = rr.remainder_r.raw();
  const int128 poly = (int128{1} << rf) + r + fixed_detail::round_shift(r * r, rf + 1);
  const int128 mantissa = lut_raw * poly;  // fractional bits: f + rf

  const QFormat out = exp_result_format(t.format());
  const std::int64_t shift = static_cast<std::int64_t>(f + rf - out.frac_bits) - rr.big_m;
  ExpResult result;
  FixedStatus status;
  int128 value;
  if (shift < -(out.magnitude_bits() + 1)) {
    value = int128{out.max_raw()} + 1;  // certain overflow
  } else if (shift > 126) {
    value = 0;
  } else {
    value = fixed_detail::round_shift(mantissa, static_cast<int>(shift));
  }
  result.value = make_unchecked(fixed_detail::saturate(value, out, status), out);
  result.saturated = status.saturated();
  return result;
}

std::span<const std::uint32_t> fetch_lut(MemArray& rom, LutKind kind, std::size_t offset) {
  const LutEntry& e = rom.lut_directory().find(kind);
  if (offset >= e.row_count) {
    throw BoundsError(fmt::format("LUT {} offset {} outside {} rows", to_string(kind), offset, e.row_count));
  }
  const std::size_t addr = e.start_address + offset * e.row_words;
  const std::size_t row_width = rom.geometry().row_words;
  const std::span<const std::uint32_t> row = rom.rom_read(addr / row_width);
  return row.subspan(addr % row_width, e.row_words);
}

// ---------------------------------------------------------------------------
// Rate and coefficient tables

LutTable build_rate_lut(LutKind kind, const std::function<double(double)>& f, double v_min, double v_max,
                        std::size_t rows, QFormat format) {
  if (rows < 2) {
    throw ArgumentError(fmt::format("rate LUT {} needs at least 2 rows", to_string(kind)));
  }
  if (!(v_min < v_max)) {
    throw ArgumentError(fmt::format("rate LUT {} needs v_min < v_max", to_string(kind)));
  }
  if (!format.fits_word()) {
    throw ArgumentError("rate LUT format must fit a memory word");
  }
  LutTable t;
  t.kind = kind;
  t.format = format;
  t.row_words = 1;
  t.v_min = v_min;
  t.v_max = v_max;
  t.words.reserve(rows);
  const double step = (v_max - v_min) / static_cast<double>(rows - 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const double v = v_min + static_cast<double>(i) * step;
    const double y = f(v);
    if (!std::isfinite(y)) {
      throw BuildError(fmt::format("rate LUT {}: function is not finite at v={} (row {})", to_string(kind), v, i));
    }
    try {
      t.words.push_back(FixedPoint::from_real(y, format).to_word());
    } catch (const RangeError&) {
      throw BuildError(fmt::format("rate LUT {}: value {} at v={} (row {}) does not fit {}", to_string(kind), y, v,
                                   i, format.to_string()));
    }
  }
  return t;
}

std::size_t rate_lut_index(const LutTable& table, const FixedPoint& v) {
  const std::size_t rows = table.rows();
  const int f = v.format().frac_bits;
  const int128 lo = static_cast<std::int64_t>(std::nearbyint(std::ldexp(table.v_min, f)));
  const int128 hi = static_cast<std::int64_t>(std::nearbyint(std::ldexp(table.v_max, f)));
  const int128 x = v.raw();
  if (x <= lo) return 0;
  if (x >= hi) return rows - 1;
  const int128 num = (x - lo) * static_cast<int128>(rows - 1);
  const int128 span = hi - lo;
  const int128 idx = (2 * num + span) / (2 * span);  // nearest, num >= 0
  return std::min(static_cast<std::size_t>(idx), rows - 1);
}

LutTable build_coeff_lut(LutKind kind, std::span<const double> coefficients, QFormat format) {
  if (coefficients.empty()) {
    throw ArgumentError(fmt::format("coefficient LUT {} is empty", to_string(kind)));
  }
  LutTable t;
  t.kind = kind;
  t.format = format;
  t.row_words = std::bit_ceil(coefficients.size());
  t.words.assign(t.row_words, 0u);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    try {
      t.words[i] = FixedPoint::from_real(coefficients[i], format).to_word();
    } catch (const RangeError&) {
      throw BuildError(fmt::format("coefficient {} of LUT {} does not fit {}", coefficients[i], to_string(kind),
                                   format.to_string()));
    }
  }
  return t;
}

}  // namespace remsim
