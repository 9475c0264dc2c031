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

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "remsim/config.hpp"
#include "remsim/error.hpp"
#include "remsim/report.hpp"

using namespace remsim;

namespace {

ExperimentConfig small(const char* tech = "rsram", const char* extra = "") {
  return parse_config(std::string("[experiment]\nnetwork = 10x10x1-4c3-2s-6o\nimages = 2\ntimesteps = 8\ntech = ") +
                      tech + "\n[memory]\nram_bytes = 8192\nrom_bytes = 8192\nmax_kernels_per_pe = 2\n" + extra);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// Energy of one PE from first principles with the shipped default costs.
double expected_pe_energy(const PeRow& p, TechKind tech, double makespan_ns) {
  const double kib = 8.0;
  double ram = 0, rom = 0;
  const MemCounters& m = p.ram;
  switch (tech) {
    case TechKind::RSram:
      ram = m.ram_reads * 5.0 + m.ram_writes * 5.5 + 0.05 * kib * 1.01 * (1.0 / 1.02) * makespan_ns;
      rom = m.rom_micro_reads * 5.0 + m.rom_micro_writes * 5.5 + 0.05 * kib * 1.01 * (0.02 / 1.02) * makespan_ns;
      break;
    case TechKind::Sram:
      ram = m.ram_reads * 5.0 + m.ram_writes * 5.5 + 0.05 * kib * makespan_ns;
      rom = p.rom.rom_reads * 3.0;
      break;
    case TechKind::RMram:
      ram = m.ram_reads * 6.0 + m.ram_writes * 30.0;
      rom = m.rom_reads * 4.0;
      break;
    case TechKind::SttMram:
      ram = m.ram_reads * 6.0 + m.ram_writes * 30.0;
      rom = p.rom.rom_reads * 3.0;
      break;
    default: break;
  }
  const double rest = p.stats.core_ops * 0.5 + p.stats.steps * 8.0 + 0.02 * makespan_ns;
  return ram + rom + rest;
}

}  // namespace

class EnergyTest : public ::testing::TestWithParam<const char*> {};

TEST_P(EnergyTest, MatchesIndependentRecomputation) {
  const ExperimentConfig cfg = small(GetParam());
  const RunStats s = run_once(cfg);
  double sum = 0.0;
  for (const PeRow& p : s.pes) {
    const double e = expected_pe_energy(p, cfg.tech, s.sim.makespan_ns);
    EXPECT_NEAR(p.energy.total_pj(), e, 1e-9 * e);
    sum += e;
  }
  sum += s.sim.bus_beats * 2.0;
  EXPECT_NEAR(s.energy.total_pj(), sum, 1e-9 * sum);
  EXPECT_NEAR(s.energy.ram_pj() + s.energy.rom_pj() + s.energy.rest_pj(), s.energy.total_pj(), 1e-9 * sum);
}

INSTANTIATE_TEST_SUITE_P(Techs, EnergyTest, ::testing::Values("sram", "rsram", "stt", "rmram"));

TEST(Report, RomAccountingPerTechnology) {
  const RunStats rs = run_once(small("rsram"));
  EXPECT_EQ(rs.rom.rom_reads, 0u);
  EXPECT_GT(rs.ram.rom_reads, 0u);
  EXPECT_EQ(rs.ram.rom_micro_reads, 2 * rs.ram.rom_reads);
  EXPECT_EQ(rs.ram.rom_micro_writes, 3 * rs.ram.rom_reads);
  const RunStats sr = run_once(small("sram"));
  EXPECT_EQ(sr.ram.rom_reads, 0u);
  EXPECT_EQ(sr.rom.rom_reads, rs.ram.rom_reads);
  EXPECT_EQ(sr.ram.ram_reads, rs.ram.ram_reads);
  EXPECT_EQ(sr.ram.ram_writes, rs.ram.ram_writes);
}

TEST(Report, CsvShapeAndTotals) {
  const RunStats s = run_once(small());
  const auto rows = parse_csv(stats_csv(s));
  ASSERT_EQ(rows.size(), s.pes.size() + 2);
  const auto cols = csv_columns();
  ASSERT_EQ(rows[0].size(), cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) EXPECT_EQ(rows[0][i], cols[i]);
  std::uint64_t reads = 0;
  for (std::size_t r = 1; r + 1 < rows.size(); ++r) {
    ASSERT_EQ(rows[r].size(), cols.size());
    EXPECT_EQ(rows[r][0], "pe");
    reads += std::stoull(rows[r][5]);
  }
  const auto& total = rows.back();
  EXPECT_EQ(total[0], "total");
  EXPECT_EQ(std::stoull(total[5]), reads);
  EXPECT_DOUBLE_EQ(std::stod(total[22]), s.energy.total_pj());
  EXPECT_DOUBLE_EQ(std::stod(total[23]), s.sim.makespan_ns);
}

TEST(Report, JsonCarriesTotalsAndPes) {
  const RunStats s = run_once(small());
  const auto j = nlohmann::json::parse(stats_json(s));
  EXPECT_EQ(j.at("pes").get<std::size_t>(), s.pes.size());
  EXPECT_EQ(j.at("per_pe").size(), s.pes.size());
  EXPECT_DOUBLE_EQ(j.at("energy").at("total_pj").get<double>(), s.energy.total_pj());
  EXPECT_EQ(j.dump().find("nan"), std::string::npos);
  EXPECT_FALSE(report_text(s, small()).empty());
}

TEST(Report, BaselineNormalization) {
  const ExperimentConfig cfg = small("rsram", "[baseline]\ntech = rmram\n");
  const RunStats s = run_experiment(cfg);
  ASSERT_TRUE(s.baseline_name.has_value());
  const RunStats base = run_once(baseline_config(cfg));
  EXPECT_DOUBLE_EQ(s.baseline_total_pj, base.energy.total_pj());
  EXPECT_DOUBLE_EQ(s.normalized(s.energy.total_pj()), s.energy.total_pj() / base.energy.total_pj());
  EXPECT_EQ(baseline_config(cfg).tech, TechKind::RMram);
  EXPECT_FALSE(baseline_config(cfg).baseline.has_value());
}

TEST(Report, PredictionsAndDatasetShapeCheck) {
  const RunStats s = run_once(small());
  EXPECT_EQ(s.predictions.size(), 2u);
  EXPECT_EQ(s.labels, (std::vector<int>{0, 1}));
  ExperimentConfig bad = small();
  bad.dataset = DatasetKind::Cifar10;
  bad.cifar_batch = "/nonexistent/batch.bin";
  EXPECT_THROW(run_once(bad), InputError);
}

TEST(Area, RatiosFromDefaults) {
  const AreaReport r = area_report(parse_config("[experiment]\nnetwork = 28x28x1-400o\n"));
  EXPECT_EQ(r.pes, 40u);
  const double kib = 32768;
  const double sram = 2 * kib * 3.0 + 1140.0;
  const double rsram = kib * 3.0 * 1.02 + 1140.0;
  const double stt = 2 * kib * 1.5 + 1140.0;
  const double rmram = kib * 1.5 * 1.036 + 1140.0;
  EXPECT_NEAR(r.row(TechKind::Sram).pe_um2(), sram, 1e-6);
  EXPECT_NEAR(r.sram_over_rsram, sram / rsram, 1e-12);
  EXPECT_NEAR(r.stt_over_rmram, stt / rmram, 1e-12);
  EXPECT_FALSE(area_text(r).empty());
}

TEST(Perf, BalancedStageTimeOracle) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> w = {100, 300};
  EXPECT_DOUBLE_EQ(balanced_stage_time(w, std::vector<double>{inf, inf}, 8), 50.0);
  // Caps {1, 10}: layer 0 gets 1 PE (T >= 100), so T = 100 with 4 PEs spare.
  EXPECT_DOUBLE_EQ(balanced_stage_time(w, std::vector<double>{1, 10}, 8), 100.0);
  // Caps {4, 2}, budget 5: layer 1 at cap 2 -> T >= 150; layer 0 needs 100/150 < 4 PEs.
  EXPECT_NEAR(balanced_stage_time(w, std::vector<double>{4, 2}, 5), 150.0, 1e-9);
  // Mixed: caps {inf, 1}, budget 3 -> T = max(300, 100 / 2) = 300.
  EXPECT_NEAR(balanced_stage_time(w, std::vector<double>{inf, 1}, 3), 300.0, 1e-9);
  // Binding budget: caps {10, 10}, budget 2 -> T = 200.
  EXPECT_NEAR(balanced_stage_time(w, std::vector<double>{10, 10}, 2), 200.0, 1e-9);
  EXPECT_THROW(balanced_stage_time(w, std::vector<double>{1}, 2), ArgumentError);
  EXPECT_THROW(balanced_stage_time(w, std::vector<double>{1, 1}, 0), ArgumentError);
}

TEST(Perf, UnlimitedSpeedupEqualsAreaRatio) {
  const ExperimentConfig cfg = parse_config("[experiment]\nnetwork = 32x32x3-24c5-2s-80c5-2s-10o\n");
  const PerfReport p = perf_report(cfg);
  const AreaReport a = area_report(cfg);
  EXPECT_NEAR(p.row(TechKind::RSram).speedup, a.sram_over_rsram, 1e-9);
  EXPECT_NEAR(p.row(TechKind::RMram).speedup, a.stt_over_rmram, 1e-9);
  EXPECT_NEAR(p.chip_area_um2, 64 * a.row(TechKind::Sram).pe_um2(), 1e-6);
  EXPECT_FALSE(perf_text(p).empty());
}

TEST(Perf, CappedSpeedupNeverExceedsAreaRatio) {
  const ExperimentConfig cfg =
      parse_config("[experiment]\nnetwork = 28x28x1-6c5-2s-10o\n[perf]\nparallelism = capped\n");
  const PerfReport p = perf_report(cfg);
  const AreaReport a = area_report(cfg);
  EXPECT_LE(p.row(TechKind::RSram).speedup, a.sram_over_rsram + 1e-12);
  EXPECT_GE(p.row(TechKind::RSram).speedup, 1.0 - 1e-12);
  EXPECT_EQ(p.layers[1].max_pes, 6.0);
}

TEST(Sweep, OneRowPerPoint) {
  const std::vector<double> fps = {0.4, 1.0};
  const std::vector<TechKind> techs = {TechKind::RSram, TechKind::SttMram};
  const auto pts = sweep(small(), fps, techs);
  ASSERT_EQ(pts.size(), 4u);
  const auto rows = parse_csv(sweep_csv(pts));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][0], "rsram");
  EXPECT_EQ(rows[2][1], "1");
  EXPECT_GT(pts[1].stats.input_spikes, pts[0].stats.input_spikes);
}
