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
#include <span>
#include <string_view>
#include <vector>

#include "remsim/fixed_point.hpp"

namespace remsim {

enum class LutKind : std::uint8_t {
  Exp,
  HhAlphaM,
  HhBetaM,
  HhAlphaN,
  HhBetaN,
  HhAlphaH,
  HhBetaH,
  IonNa,        // {g_na, e_na}
  IonK,         // {g_k, e_k}
  IonLeak,      // {g_l, e_l}
  IzhMembrane,  // {0.04, 5, 140}
  IzhRecovery,  // {a, b}
};

std::string_view to_string(LutKind kind) noexcept;

/// A built lookup table, before it is written into a ROM plane.
///
/// A LUT row is `row_words` consecutive words (1 for scalar tables, a
/// power of two for coefficient rows so that no row straddles an array row).
struct LutTable {
  LutKind kind = LutKind::Exp;
  QFormat format{};
  int k_param = 0;             // exponential tables: rows == 2^k_param
  std::size_t row_words = 1;
  double v_min = 0.0;          // rate tables: sampled domain
  double v_max = 0.0;
  std::vector<std::uint32_t> words;

  std::size_t rows() const noexcept { return row_words == 0 ? 0 : words.size() / row_words; }
  FixedPoint value(std::size_t row, std::size_t word = 0) const;
};

/// Placement of one LUT inside a ROM plane. Addresses are ROM word addresses;
/// each LUT starts on an array-row boundary.
struct LutEntry {
  LutKind kind = LutKind::Exp;
  std::size_t start_address = 0;
  std::size_t row_count = 0;
  std::size_t row_words = 1;
  int k_param = 0;
  QFormat format{};

  std::size_t word_count() const noexcept { return row_count * row_words; }
  std::size_t end_address() const noexcept { return start_address + word_count(); }
};

class LutDirectory {
 public:
  LutDirectory() = default;
  LutDirectory(std::size_t rom_words, std::size_t array_row_words);

  /// Reserves the next row-aligned range. Throws CapacityError when the ROM
  /// plane is full and ConfigError when `kind` is already present or the row
  /// width does not divide the array row.
  const LutEntry& add(LutKind kind, std::size_t row_count, std::size_t row_words, int k_param, QFormat format);

  bool contains(LutKind kind) const noexcept;
  /// Throws DirectoryError for unregistered kinds.
  const LutEntry& find(LutKind kind) const;

  std::span<const LutEntry> entries() const noexcept { return entries_; }
  std::size_t used_words() const noexcept { return next_free_; }
  std::size_t capacity_words() const noexcept { return rom_words_; }

  /// Re-checks disjointness and containment of every entry.
  bool consistent() const noexcept;

 private:
  std::size_t rom_words_ = 0;
  std::size_t array_row_words_ = 1;
  std::size_t next_free_ = 0;
  std::vector<LutEntry> entries_;
};

}  // namespace remsim
