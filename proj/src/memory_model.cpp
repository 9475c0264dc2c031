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

#include "remsim/memory_model.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "remsim/error.hpp"

namespace remsim {

std::string_view to_string(TechKind tech) noexcept {
  switch (tech) {
    case TechKind::Sram: return "sram";
    case TechKind::RSram: return "rsram";
    case TechKind::SttMram: return "stt";
    case TechKind::RMram: return "rmram";
    case TechKind::Rom: return "rom";
  }
  return "?";
}

TechKind parse_tech(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  std::erase(n, '-');
  std::erase(n, '_');
  if (n == "sram") return TechKind::Sram;
  if (n == "rsram") return TechKind::RSram;
  if (n == "stt" || n == "sttmram" || n == "mram") return TechKind::SttMram;
  if (n == "rmram" || n == "rsttmram") return TechKind::RMram;
  throw ConfigError(fmt::format("unknown memory technology '{}'", name));
}

TechnologyProfile TechnologyProfile::defaults(TechKind tech) {
  TechnologyProfile p;
  p.tech = tech;
  switch (tech) {
    case TechKind::Sram:
    case TechKind::RSram:
      p.ram_read = {5.0, 1.0};
      p.ram_write = {5.5, 1.0};
      p.leakage_mw_per_kib = 0.05;
      p.area_per_byte_um2 = 3.0;
      if (tech == TechKind::RSram) {
        p.rom_sense = {0.0, 0.0};
        p.rom_overhead_factor = 1.02;
        p.rom_power_overhead_factor = 1.01;
      } else {
        p.rom_sense = {3.0, 1.0};
      }
      break;
    case TechKind::SttMram:
    case TechKind::RMram:
      p.ram_read = {6.0, 2.0};
      p.ram_write = {30.0, 10.0};
      p.leakage_mw_per_kib = 0.0;
      p.area_per_byte_um2 = 1.5;
      if (tech == TechKind::RMram) {
        p.rom_sense = {4.0, 2.0};
        p.peripheral_overhead_factor = 1.036;
      } else {
        p.rom_sense = {3.0, 1.0};
      }
      break;
    case TechKind::Rom:
      p.rom_sense = {3.0, 1.0};
      p.area_per_byte_um2 = 3.0;
      break;
  }
  return p;
}

void TechnologyProfile::validate() const {
  const double values[] = {ram_read.energy_pj,  ram_read.latency_ns,  ram_write.energy_pj,
                           ram_write.latency_ns, rom_sense.energy_pj, rom_sense.latency_ns,
                           leakage_mw_per_kib,   area_per_byte_um2};
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw ConfigError(fmt::format("technology '{}': energies, latencies, leakage and area must be >= 0",
                                    to_string(tech)));
    }
  }
  if (!(rom_overhead_factor >= 1.0) || !(peripheral_overhead_factor >= 1.0) || !(rom_power_overhead_factor >= 1.0)) {
    throw ConfigError(fmt::format("technology '{}': overhead factors must be >= 1", to_string(tech)));
  }
}

MemCounters& MemCounters::operator+=(const MemCounters& o) noexcept {
  ram_reads += o.ram_reads;
  ram_writes += o.ram_writes;
  rom_reads += o.rom_reads;
  buffered_row_ops += o.buffered_row_ops;
  rom_micro_reads += o.rom_micro_reads;
  rom_micro_writes += o.rom_micro_writes;
  return *this;
}

MemCounters operator-(const MemCounters& a, const MemCounters& b) noexcept {
  MemCounters d;
  d.ram_reads = a.ram_reads - b.ram_reads;
  d.ram_writes = a.ram_writes - b.ram_writes;
  d.rom_reads = a.rom_reads - b.rom_reads;
  d.buffered_row_ops = a.buffered_row_ops - b.buffered_row_ops;
  d.rom_micro_reads = a.rom_micro_reads - b.rom_micro_reads;
  d.rom_micro_writes = a.rom_micro_writes - b.rom_micro_writes;
  return d;
}

CostBreakdown access_cost(const TechnologyProfile& p, const MemCounters& c) noexcept {
  CostBreakdown out;
  const auto reads = static_cast<double>(c.ram_reads);
  const auto writes = static_cast<double>(c.ram_writes);
  const auto roms = static_cast<double>(c.rom_reads);
  const auto micro_r = static_cast<double>(c.rom_micro_reads);
  const auto micro_w = static_cast<double>(c.rom_micro_writes);
  out.ram_energy_pj = reads * p.ram_read.energy_pj + writes * p.ram_write.energy_pj;
  out.ram_time_ns = reads * p.ram_read.latency_ns + writes * p.ram_write.latency_ns;
  out.rom_energy_pj = roms * p.rom_sense.energy_pj + micro_r * p.ram_read.energy_pj + micro_w * p.ram_write.energy_pj;
  out.rom_time_ns = roms * p.rom_sense.latency_ns + micro_r * p.ram_read.latency_ns + micro_w * p.ram_write.latency_ns;
  return out;
}

AccessCost rom_read_cost(const TechnologyProfile& p) noexcept {
  MemCounters one;
  one.rom_reads = 1;
  if (p.tech == TechKind::RSram) {
    one.rom_micro_reads = 2;
    one.rom_micro_writes = 3;
  }
  const CostBreakdown c = access_cost(p, one);
  return {c.rom_energy_pj, c.rom_time_ns};
}

MemArray::MemArray(TechnologyProfile profile, MemGeometry geometry)
    : profile_(profile), geometry_(geometry) {
  profile_.validate();
  if (geometry_.row_words == 0) {
    throw ConfigError("memory row width must be positive");
  }
  if (geometry_.ram_words % geometry_.row_words != 0 || geometry_.rom_words % geometry_.row_words != 0) {
    throw ConfigError(fmt::format("memory sizes ({} RAM words, {} ROM words) must be whole rows of {} words",
                                  geometry_.ram_words, geometry_.rom_words, geometry_.row_words));
  }
  switch (profile_.tech) {
    case TechKind::RSram:
    case TechKind::RMram:
      if (geometry_.rom_rows() > geometry_.ram_rows()) {
        throw CapacityError(fmt::format("embedded ROM plane ({} rows) cannot exceed the RAM plane ({} rows)",
                                        geometry_.rom_rows(), geometry_.ram_rows()));
      }
      break;
    case TechKind::Sram:
    case TechKind::SttMram:
      if (geometry_.rom_words != 0) {
        throw ConfigError(fmt::format("{} arrays have no ROM plane; use a dedicated ROM array", to_string(profile_.tech)));
      }
      break;
    case TechKind::Rom:
      if (geometry_.ram_words != 0) {
        throw ConfigError("a dedicated ROM array has no RAM plane");
      }
      break;
  }
  ram_.assign(geometry_.ram_words, 0u);
  rom_.assign(geometry_.rom_words, 0u);
  row_buffer_.assign(geometry_.row_words, 0u);
  rom_out_.assign(geometry_.row_words, 0u);
  directory_ = LutDirectory(geometry_.rom_words, geometry_.row_words);
}

std::uint32_t MemArray::ram_read(std::size_t addr) {
  if (addr >= ram_.size()) {
    throw BoundsError(fmt::format("RAM read at {} outside {} words", addr, ram_.size()));
  }
  ++counters_.ram_reads;
  return ram_[addr];
}

void MemArray::ram_write(std::size_t addr, std::uint32_t word) {
  if (addr >= ram_.size()) {
    throw BoundsError(fmt::format("RAM write at {} outside {} words", addr, ram_.size()));
  }
  ++counters_.ram_writes;
  ram_[addr] = word;
}

std::span<const std::uint32_t> MemArray::rom_read(std::size_t rom_row) {
  if (rom_.empty()) {
    throw UnsupportedModeError(fmt::format("{} array has no ROM plane", to_string(profile_.tech)));
  }
  if (rom_row >= geometry_.rom_rows()) {
    throw BoundsError(fmt::format("ROM row {} outside {} rows", rom_row, geometry_.rom_rows()));
  }
  const std::size_t w = geometry_.row_words;
  const std::size_t base = rom_row * w;
  ++counters_.rom_reads;

  if (profile_.tech == TechKind::RSram) {
    // The ROM row shares its cells with RAM row `rom_row`.
    auto row = std::span<std::uint32_t>(ram_).subspan(base, w);
    std::copy(row.begin(), row.end(), row_buffer_.begin());
    ++counters_.rom_micro_reads;
    ++counters_.buffered_row_ops;

    std::fill(row.begin(), row.end(), ~0u);
    ++counters_.rom_micro_writes;

    // WL1 off, WL2 on, write 0: only cells wired to WL2 (ROM bit 0) flip.
    for (std::size_t i = 0; i < w; ++i) row[i] &= rom_[base + i];
    ++counters_.rom_micro_writes;

    std::copy(row.begin(), row.end(), rom_out_.begin());
    ++counters_.rom_micro_reads;

    std::copy(row_buffer_.begin(), row_buffer_.end(), row.begin());
    ++counters_.rom_micro_writes;
  } else {
    std::copy_n(rom_.begin() + static_cast<std::ptrdiff_t>(base), w, rom_out_.begin());
  }
  return rom_out_;
}

const LutEntry& MemArray::install_lut(const LutTable& table) {
  if (rom_.empty()) {
    throw UnsupportedModeError(fmt::format("{} array has no ROM plane for LUT storage", to_string(profile_.tech)));
  }
  const LutEntry& entry = directory_.add(table.kind, table.rows(), table.row_words, table.k_param, table.format);
  std::copy(table.words.begin(), table.words.end(), rom_.begin() + static_cast<std::ptrdiff_t>(entry.start_address));
  return entry;
}

void MemArray::preload(std::size_t addr, std::uint32_t word) {
  if (addr >= ram_.size()) {
    throw BoundsError(fmt::format("preload at {} outside {} words", addr, ram_.size()));
  }
  ram_[addr] = word;
}

std::uint32_t MemArray::peek(std::size_t addr) const {
  if (addr >= ram_.size()) {
    throw BoundsError(fmt::format("peek at {} outside {} words", addr, ram_.size()));
  }
  return ram_[addr];
}

std::uint32_t MemArray::peek_rom(std::size_t addr) const {
  if (addr >= rom_.size()) {
    throw BoundsError(fmt::format("ROM peek at {} outside {} words", addr, rom_.size()));
  }
  return rom_[addr];
}

double MemArray::leakage_power_mw() const noexcept {
  const double ram_kib = static_cast<double>(geometry_.ram_words) * 4.0 / 1024.0;
  const double rom_kib = static_cast<double>(geometry_.rom_words) * 4.0 / 1024.0;
  if (profile_.embeds_rom()) {
    const double factor = geometry_.rom_words > 0 ? profile_.rom_power_overhead_factor : 1.0;
    return profile_.leakage_mw_per_kib * ram_kib * factor;
  }
  return profile_.leakage_mw_per_kib * (ram_kib + rom_kib);
}

double MemArray::rom_leakage_share() const noexcept {
  if (profile_.tech == TechKind::Rom) return 1.0;
  if (geometry_.rom_words == 0) return 0.0;
  if (profile_.embeds_rom()) {
    const double total = profile_.rom_overhead_factor * profile_.peripheral_overhead_factor;
    return (total - 1.0) / total;
  }
  return static_cast<double>(geometry_.rom_words) / static_cast<double>(geometry_.ram_words + geometry_.rom_words);
}

double leakage_energy(const MemArray& array, double duration_ns) {
  if (!(duration_ns >= 0.0)) {
    throw ArgumentError("leakage duration must be non-negative");
  }
  return array.leakage_power_mw() * duration_ns;
}

double array_area(const TechnologyProfile& profile, std::size_t ram_bytes, std::size_t rom_bytes) {
  const double per_byte = profile.area_per_byte_um2;
  switch (profile.tech) {
    case TechKind::RSram:
    case TechKind::RMram: {
      if (rom_bytes > ram_bytes) {
        throw CapacityError(fmt::format("embedded ROM ({} B) cannot exceed the RAM plane ({} B)", rom_bytes, ram_bytes));
      }
      const double factor = rom_bytes > 0 ? profile.rom_overhead_factor * profile.peripheral_overhead_factor : 1.0;
      return static_cast<double>(ram_bytes) * per_byte * factor;
    }
    case TechKind::Sram:
    case TechKind::SttMram:
    case TechKind::Rom:
      return static_cast<double>(ram_bytes + rom_bytes) * per_byte;
  }
  return 0.0;
}

}  // namespace remsim
