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
 * @file report.hpp
 * @brief Experiment orchestration and the RAM / ROM / Rest energy, area and
 * iso-area performance reports.
 *
 * Energy buckets:
 *   RAM  = data RAM accesses + RAM share of memory leakage
 *   ROM  = ROM reads (R-SRAM micro-ops included) + ROM share of memory leakage
 *   Rest = core ops x op energy + control energy per PE time-step
 *          + global-memory energy per bus beat + core leakage
 * Leakage energy is leakage power x makespan.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "remsim/config.hpp"
#include "remsim/memory_model.hpp"
#include "remsim/scheduler.hpp"

namespace remsim {

struct EnergyBreakdown {
  double ram_dynamic_pj = 0.0;
  double ram_leakage_pj = 0.0;
  double rom_dynamic_pj = 0.0;
  double rom_leakage_pj = 0.0;
  double core_ops_pj = 0.0;
  double control_pj = 0.0;
  double gm_pj = 0.0;
  double core_leakage_pj = 0.0;

  double ram_pj() const noexcept { return ram_dynamic_pj + ram_leakage_pj; }
  double rom_pj() const noexcept { return rom_dynamic_pj + rom_leakage_pj; }
  double rest_pj() const noexcept { return core_ops_pj + control_pj + gm_pj + core_leakage_pj; }
  double leakage_pj() const noexcept { return ram_leakage_pj + rom_leakage_pj + core_leakage_pj; }
  double total_pj() const noexcept { return ram_pj() + rom_pj() + rest_pj(); }
  EnergyBreakdown& operator+=(const EnergyBreakdown& o) noexcept;
};

struct PeRow {
  std::size_t pe_id = 0;
  std::size_t layer = 0;
  std::size_t kernel_begin = 0;
  std::size_t kernel_end = 0;
  MemCounters ram;  // the PE's main array (holds the ROM plane when embedded)
  MemCounters rom;  // dedicated ROM array of plain technologies
  PeStats stats;
  std::size_t ram_words_used = 0;
  EnergyBreakdown energy;  // gm_pj stays 0 per PE

  std::uint64_t ram_reads() const noexcept { return ram.ram_reads; }
  std::uint64_t ram_writes() const noexcept { return ram.ram_writes; }
  std::uint64_t rom_reads() const noexcept { return ram.rom_reads + rom.rom_reads; }
};

struct RunStats {
  std::string name;
  TechKind tech = TechKind::RSram;
  Phase phase = Phase::Inference;
  double fp = 1.0;
  std::size_t images = 0;
  std::size_t timesteps = 0;
  std::size_t layers = 0;

  std::vector<PeRow> pes;
  MemCounters ram;  // summed over PEs
  MemCounters rom;
  std::uint64_t core_ops = 0;
  std::uint64_t synapse_reads = 0;
  std::uint64_t neuron_updates = 0;
  std::uint64_t plasticity_updates = 0;
  std::uint64_t input_spikes = 0;
  std::uint64_t output_spikes = 0;
  std::uint64_t gating_clamps = 0;
  SimResult sim;
  EnergyBreakdown energy;

  double pe_area_um2 = 0.0;
  double total_area_um2 = 0.0;

  std::vector<std::size_t> predictions;  // argmax of final-layer spike counts per image
  std::vector<int> labels;

  std::optional<std::string> baseline_name;
  double baseline_total_pj = 0.0;

  std::uint64_t rom_reads() const noexcept { return ram.rom_reads + rom.rom_reads; }
  double normalized(double pj) const noexcept { return baseline_name ? pj / baseline_total_pj : pj; }
};

/// Single run of `cfg` without baseline normalization.
RunStats run_once(const ExperimentConfig& cfg);
/// Runs `cfg` and, when a baseline is configured, the baseline too, and
/// records the baseline total for normalized energies.
RunStats run_experiment(const ExperimentConfig& cfg);

/// `cfg` with the baseline overrides applied and the baseline removed.
ExperimentConfig baseline_config(const ExperimentConfig& cfg);

/// Column set of stats.csv; stable within a version.
std::span<const char* const> csv_columns();
std::string stats_csv(const RunStats& stats);
std::string stats_json(const RunStats& stats);
std::string report_text(const RunStats& stats, const ExperimentConfig& cfg);

struct AreaRow {
  TechKind tech = TechKind::Sram;
  double array_um2 = 0.0;
  double core_um2 = 0.0;
  double pe_um2() const noexcept { return array_um2 + core_um2; }
};

struct AreaReport {
  std::size_t ram_bytes = 0;
  std::size_t rom_bytes = 0;
  std::size_t pes = 0;  // PEs the configured network maps to
  std::vector<AreaRow> rows;  // sram, rsram, stt, rmram
  double sram_over_rsram = 1.0;
  double stt_over_rmram = 1.0;

  const AreaRow& row(TechKind tech) const;
};

/// Per-PE area = array_area(tech, ram, rom) + core area, for every technology.
AreaReport area_report(const ExperimentConfig& cfg);
std::string area_text(const AreaReport& r);

struct LayerWork {
  std::size_t layer = 0;
  double work = 0.0;      // work units per time-step
  double max_pes = 0.0;   // parallelism cap (infinite when unlimited)
  std::size_t min_pes = 0;
};

struct PerfRow {
  TechKind tech = TechKind::Sram;
  double pe_area_um2 = 0.0;
  double pe_budget = 0.0;        // chip area / PE area
  double stage_time = 0.0;       // slowest layer, work units per PE
  double throughput = 0.0;       // 1 / stage_time
  double speedup = 1.0;          // against the plain counterpart (rsram vs sram, rmram vs stt)
  double area_ratio = 1.0;       // counterpart PE area / this PE area
  bool fits = true;              // budget covers the minimum mapping
};

struct PerfReport {
  double chip_area_um2 = 0.0;
  bool unlimited = true;
  std::vector<LayerWork> layers;
  std::vector<PerfRow> rows;

  const PerfRow& row(TechKind tech) const;
};

/// Smallest stage time T with sum_l min(cap_l, work_l / T) <= budget: the
/// pipeline bottleneck when `budget` PEs are shared out optimally.
double balanced_stage_time(std::span<const double> work, std::span<const double> cap, double budget);

PerfReport perf_report(const ExperimentConfig& cfg);
std::string perf_text(const PerfReport& r);

struct SweepPoint {
  TechKind tech;
  double fp;
  RunStats stats;
};

std::vector<SweepPoint> sweep(const ExperimentConfig& cfg, std::span<const double> fps, std::span<const TechKind> techs);
std::string sweep_csv(std::span<const SweepPoint> points);

}  // namespace remsim
