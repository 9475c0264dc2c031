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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace remsim {

/// Packed spike bits, 32 per word.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 31) / 32, 0u) {}

  std::size_t size() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::vector<std::uint32_t>& words() const noexcept { return words_; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 5] >> (i & 31)) & 1u; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint32_t m = 1u << (i & 31);
    if (v) {
      words_[i >> 5] |= m;
    } else {
      words_[i >> 5] &= ~m;
    }
  }
  void push_back(bool v) {
    if ((bits_ & 31) == 0) words_.push_back(0u);
    ++bits_;
    set(bits_ - 1, v);
  }
  void clear() noexcept {
    bits_ = 0;
    words_.clear();
  }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (std::uint32_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint32_t> words_;
};

}  // namespace remsim
