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
 * @file memory_model.hpp
 * @brief Behavioral and cost model of the PE memory technologies.
 *
 * Four array technologies are modeled: plain 6T SRAM, ROM-embedded SRAM
 * (extra word-line per cell), STT-MRAM and ROM-embedded STT-MRAM (extra
 * bit-line per cell). A fifth kind, `Rom`, stands for the dedicated mask ROM
 * a plain-RAM PE needs to hold its lookup tables.
 *
 * ROM retrieval is row granular. On R-SRAM the ROM plane is recovered through
 * the cell wiring itself, which destroys the RAM row, so a ROM read runs:
 *
 *   save row -> buffer      (1 RAM-read micro-op, 1 buffered row op)
 *   write all 1s            (1 RAM-write micro-op, WL1+WL2 on)
 *   write 0s via WL2        (1 RAM-write micro-op, cells on WL2 drop to 0)
 *   read row                (1 RAM-read micro-op, row now holds ROM bits)
 *   restore row <- buffer   (1 RAM-write micro-op)
 *
 * R-MRAM senses the ROM bit-line directly and leaves RAM untouched.
 *
 * Energies and latencies are never accumulated incrementally; they are
 * always derived from the counters so that the report and the counters can
 * not drift apart.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "remsim/lut_directory.hpp"

namespace remsim {

enum class TechKind : std::uint8_t { Sram, RSram, SttMram, RMram, Rom };

std::string_view to_string(TechKind tech) noexcept;
/// Accepts "sram", "rsram", "stt", "rmram" (and a few long spellings).
TechKind parse_tech(std::string_view name);

struct AccessCost {
  double energy_pj = 0.0;
  double latency_ns = 0.0;
};

struct TechnologyProfile {
  TechKind tech = TechKind::Sram;
  AccessCost ram_read;
  AccessCost ram_write;
  /// ROM-plane sense for R-MRAM; dedicated-ROM read for plain technologies;
  /// usually zero for R-SRAM whose ROM read is made of RAM micro-ops.
  AccessCost rom_sense;
  double leakage_mw_per_kib = 0.0;
  double area_per_byte_um2 = 0.0;
  /// Array-level area factor of an embedded ROM plane.
  double rom_overhead_factor = 1.0;
  /// ROM-mode peripheral circuitry (sense latch, pass gates) as an area factor.
  double peripheral_overhead_factor = 1.0;
  /// Leakage overhead of the embedded ROM plane.
  double rom_power_overhead_factor = 1.0;

  /// Placeholder defaults that keep the orderings the architecture relies on:
  /// STT write > SRAM write, STT leakage = 0, R-SRAM area factor 1.02.
  static TechnologyProfile defaults(TechKind tech);

  bool embeds_rom() const noexcept { return tech == TechKind::RSram || tech == TechKind::RMram; }
  /// Throws ConfigError on negative costs or factors below 1.
  void validate() const;
};

struct MemGeometry {
  std::size_t ram_words = 0;
  std::size_t rom_words = 0;
  std::size_t row_words = 16;

  std::size_t ram_rows() const noexcept { return row_words == 0 ? 0 : ram_words / row_words; }
  std::size_t rom_rows() const noexcept { return row_words == 0 ? 0 : rom_words / row_words; }
};

struct MemCounters {
  std::uint64_t ram_reads = 0;
  std::uint64_t ram_writes = 0;
  std::uint64_t rom_reads = 0;
  std::uint64_t buffered_row_ops = 0;
  std::uint64_t rom_micro_reads = 0;   // RAM reads issued inside an R-SRAM ROM read
  std::uint64_t rom_micro_writes = 0;  // RAM writes issued inside an R-SRAM ROM read

  MemCounters& operator+=(const MemCounters& o) noexcept;
  friend MemCounters operator+(MemCounters a, const MemCounters& b) noexcept { return a += b; }
  friend MemCounters operator-(const MemCounters& a, const MemCounters& b) noexcept;
  friend bool operator==(const MemCounters&, const MemCounters&) = default;
};

/// Energy/latency of a counter set under a profile.
struct CostBreakdown {
  double ram_energy_pj = 0.0;  // data RAM accesses
  double rom_energy_pj = 0.0;  // ROM reads including R-SRAM micro-ops
  double ram_time_ns = 0.0;
  double rom_time_ns = 0.0;

  double energy_pj() const noexcept { return ram_energy_pj + rom_energy_pj; }
  double time_ns() const noexcept { return ram_time_ns + rom_time_ns; }
};

CostBreakdown access_cost(const TechnologyProfile& profile, const MemCounters& counters) noexcept;
/// Energy and latency of a single ROM-row retrieval.
AccessCost rom_read_cost(const TechnologyProfile& profile) noexcept;

/// A PE-local memory array. Owned by exactly one PE; not thread-safe.
class MemArray {
 public:
  MemArray(TechnologyProfile profile, MemGeometry geometry);

  /// Throws BoundsError when `addr` is outside the RAM plane.
  std::uint32_t ram_read(std::size_t addr);
  void ram_write(std::size_t addr, std::uint32_t word);

  /// Retrieves one ROM row. The returned view stays valid until the next
  /// ROM read. Throws UnsupportedModeError on arrays without a ROM plane.
  std::span<const std::uint32_t> rom_read(std::size_t rom_row);

  /// Writes a LUT into the ROM plane at design time (not counted) and
  /// registers it in the directory.
  const LutEntry& install_lut(const LutTable& table);
  const LutDirectory& lut_directory() const noexcept { return directory_; }

  // Uncounted back door used to program weights before a run and by tests.
  void preload(std::size_t addr, std::uint32_t word);
  std::uint32_t peek(std::size_t addr) const;
  std::uint32_t peek_rom(std::size_t addr) const;

  const TechnologyProfile& profile() const noexcept { return profile_; }
  const MemGeometry& geometry() const noexcept { return geometry_; }
  const MemCounters& counters() const noexcept { return counters_; }
  bool has_rom_plane() const noexcept { return !rom_.empty(); }

  CostBreakdown cost() const noexcept { return access_cost(profile_, counters_); }

  /// Leakage power of the whole array and the share attributed to ROM
  /// storage (by area).
  double leakage_power_mw() const noexcept;
  double rom_leakage_share() const noexcept;

 private:
  TechnologyProfile profile_;
  MemGeometry geometry_;
  std::vector<std::uint32_t> ram_;
  std::vector<std::uint32_t> rom_;
  std::vector<std::uint32_t> row_buffer_;  // R-SRAM save/restore buffer
  std::vector<std::uint32_t> rom_out_;
  LutDirectory directory_;
  MemCounters counters_;
};

/// leakage_power x duration. mW x ns = pJ. Throws ArgumentError for negative durations.
double leakage_energy(const MemArray& array, double duration_ns);

/// Silicon area of a memory holding `ram_bytes` of RAM and `rom_bytes` of ROM.
/// Embedded technologies carry the ROM inside the RAM cells (CapacityError if
/// rom_bytes > ram_bytes); plain technologies pay for a separate ROM array.
double array_area(const TechnologyProfile& profile, std::size_t ram_bytes, std::size_t rom_bytes);

}  // namespace remsim
