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

#include <random>
#include <vector>

#include "remsim/error.hpp"
#include "remsim/lut_math.hpp"
#include "remsim/memory_model.hpp"

using namespace remsim;

namespace {

MemArray embedded(TechKind tech, std::size_t words = 64) {
  return MemArray(TechnologyProfile::defaults(tech), MemGeometry{words, words, 16});
}

void fill_rom(MemArray& a, std::uint32_t seed) {
  LutTable t;
  t.kind = LutKind::IonNa;
  t.format = kCoeffFormat;
  t.row_words = 1;
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < a.geometry().rom_words; ++i) t.words.push_back(rng());
  a.install_lut(t);
}

}  // namespace

TEST(TechProfile, ParseAndNames) {
  EXPECT_EQ(parse_tech("SRAM"), TechKind::Sram);
  EXPECT_EQ(parse_tech("rsram"), TechKind::RSram);
  EXPECT_EQ(parse_tech("stt"), TechKind::SttMram);
  EXPECT_EQ(parse_tech("rmram"), TechKind::RMram);
  EXPECT_THROW(parse_tech("flash"), ConfigError);
  EXPECT_EQ(to_string(TechKind::RMram), "rmram");
}

TEST(TechProfile, DefaultOrderings) {
  const auto sram = TechnologyProfile::defaults(TechKind::Sram);
  const auto stt = TechnologyProfile::defaults(TechKind::SttMram);
  EXPECT_GT(stt.ram_write.energy_pj, sram.ram_write.energy_pj);
  EXPECT_EQ(stt.leakage_mw_per_kib, 0.0);
  EXPECT_DOUBLE_EQ(TechnologyProfile::defaults(TechKind::RSram).rom_overhead_factor, 1.02);
  for (TechKind k : {TechKind::Sram, TechKind::RSram, TechKind::SttMram, TechKind::RMram, TechKind::Rom}) {
    EXPECT_NO_THROW(TechnologyProfile::defaults(k).validate());
  }
  auto bad = sram;
  bad.ram_read.energy_pj = -1;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = sram;
  bad.rom_overhead_factor = 0.9;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(MemArrayTest, RamReadWriteCountsAndBounds) {
  MemArray a = embedded(TechKind::RSram);
  a.ram_write(3, 0xdeadbeef);
  EXPECT_EQ(a.ram_read(3), 0xdeadbeefu);
  EXPECT_EQ(a.counters().ram_reads, 1u);
  EXPECT_EQ(a.counters().ram_writes, 1u);
  EXPECT_THROW(a.ram_read(64), BoundsError);
  EXPECT_THROW(a.ram_write(64, 0), BoundsError);
  a.preload(5, 7);
  EXPECT_EQ(a.peek(5), 7u);
  EXPECT_EQ(a.counters().ram_writes, 1u);
}

TEST(MemArrayTest, GeometryValidation) {
  EXPECT_THROW(MemArray(TechnologyProfile::defaults(TechKind::Sram), MemGeometry{64, 16, 16}), ConfigError);
  EXPECT_THROW(MemArray(TechnologyProfile::defaults(TechKind::RSram), MemGeometry{32, 64, 16}), CapacityError);
  EXPECT_THROW(MemArray(TechnologyProfile::defaults(TechKind::Rom), MemGeometry{16, 64, 16}), ConfigError);
  EXPECT_THROW(MemArray(TechnologyProfile::defaults(TechKind::Sram), MemGeometry{60, 0, 16}), ConfigError);
}

TEST(MemArrayTest, PlainRamHasNoRomPlane) {
  MemArray a(TechnologyProfile::defaults(TechKind::Sram), MemGeometry{64, 0, 16});
  EXPECT_FALSE(a.has_rom_plane());
  EXPECT_THROW(a.rom_read(0), UnsupportedModeError);
  EXPECT_THROW(a.install_lut(build_exp_lut(2, 16)), UnsupportedModeError);
}

TEST(MemArrayTest, RSramRomReadIsMicroOpSequence) {
  MemArray a = embedded(TechKind::RSram);
  fill_rom(a, 1);
  std::mt19937 rng(2);
  std::vector<std::uint32_t> ram(64);
  for (std::size_t i = 0; i < 64; ++i) {
    ram[i] = rng();
    a.preload(i, ram[i]);
  }
  for (std::size_t row = 0; row < 4; ++row) {
    const MemCounters before = a.counters();
    const auto out = a.rom_read(row);
    const MemCounters d = a.counters() - before;
    EXPECT_EQ(d.rom_reads, 1u);
    EXPECT_EQ(d.rom_micro_reads, 2u);
    EXPECT_EQ(d.rom_micro_writes, 3u);
    EXPECT_EQ(d.buffered_row_ops, 1u);
    EXPECT_EQ(d.ram_reads, 0u);
    EXPECT_EQ(d.ram_writes, 0u);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(out[i], a.peek_rom(row * 16 + i));
  }
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(a.peek(i), ram[i]) << i;
}

TEST(MemArrayTest, RMramRomReadLeavesRamUntouched) {
  MemArray a = embedded(TechKind::RMram);
  fill_rom(a, 3);
  for (std::size_t i = 0; i < 64; ++i) a.preload(i, static_cast<std::uint32_t>(i * 77));
  const auto out = a.rom_read(2);
  EXPECT_EQ(out[5], a.peek_rom(37));
  const MemCounters& c = a.counters();
  EXPECT_EQ(c.rom_reads, 1u);
  EXPECT_EQ(c.rom_micro_reads + c.rom_micro_writes + c.buffered_row_ops, 0u);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(a.peek(i), i * 77);
  EXPECT_THROW(a.rom_read(4), BoundsError);
}

TEST(AccessCostTest, DerivedFromCounters) {
  const auto p = TechnologyProfile::defaults(TechKind::RSram);
  MemCounters c;
  c.ram_reads = 10;
  c.ram_writes = 4;
  c.rom_reads = 2;
  c.rom_micro_reads = 4;
  c.rom_micro_writes = 6;
  const CostBreakdown cost = access_cost(p, c);
  EXPECT_DOUBLE_EQ(cost.ram_energy_pj, 10 * 5.0 + 4 * 5.5);
  EXPECT_DOUBLE_EQ(cost.rom_energy_pj, 4 * 5.0 + 6 * 5.5);
  EXPECT_DOUBLE_EQ(cost.time_ns(), 14.0 + 10.0);
  EXPECT_DOUBLE_EQ(rom_read_cost(p).energy_pj, 2 * 5.0 + 3 * 5.5);
  EXPECT_DOUBLE_EQ(rom_read_cost(TechnologyProfile::defaults(TechKind::RMram)).energy_pj, 4.0);
}

TEST(AreaTest, EmbeddedAndDedicatedRom) {
  const std::size_t kib32 = 32 * 1024;
  EXPECT_DOUBLE_EQ(array_area(TechnologyProfile::defaults(TechKind::Sram), kib32, kib32), 2.0 * kib32 * 3.0);
  EXPECT_DOUBLE_EQ(array_area(TechnologyProfile::defaults(TechKind::RSram), kib32, kib32), kib32 * 3.0 * 1.02);
  EXPECT_DOUBLE_EQ(array_area(TechnologyProfile::defaults(TechKind::RSram), kib32, 0), kib32 * 3.0);
  EXPECT_DOUBLE_EQ(array_area(TechnologyProfile::defaults(TechKind::RMram), kib32, kib32), kib32 * 1.5 * 1.036);
  EXPECT_THROW(array_area(TechnologyProfile::defaults(TechKind::RMram), 16, 32), CapacityError);
}

TEST(LeakageTest, PowerTimesDuration) {
  MemArray a(TechnologyProfile::defaults(TechKind::Sram), MemGeometry{256, 0, 16});  // 1 KiB
  EXPECT_DOUBLE_EQ(a.leakage_power_mw(), 0.05);
  EXPECT_DOUBLE_EQ(leakage_energy(a, 1000.0), 50.0);
  EXPECT_THROW(leakage_energy(a, -1.0), ArgumentError);
  MemArray r = embedded(TechKind::RSram, 256);
  EXPECT_DOUBLE_EQ(r.leakage_power_mw(), 0.05 * 1.01);
  EXPECT_NEAR(r.rom_leakage_share(), 0.02 / 1.02, 1e-12);
  EXPECT_EQ(embedded(TechKind::RMram).leakage_power_mw(), 0.0);
}

TEST(CountersTest, Arithmetic) {
  MemCounters a{1, 2, 3, 4, 5, 6};
  MemCounters b{1, 1, 1, 1, 1, 1};
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ((a - b).rom_micro_writes, 5u);
}
