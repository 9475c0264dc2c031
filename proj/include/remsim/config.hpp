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
 * @file config.hpp
 * @brief Experiment configuration: a sectioned `key = value` text file.
 *
 * Sections and keys (all optional unless noted):
 *
 *   [experiment] name, network (required: inline text or a file path),
 *                dataset = synthetic | mnist | cifar10, mnist_images,
 *                mnist_labels, cifar_batch, images, timesteps, fp, seed,
 *                phase = inference | training, tech = sram | rsram | stt | rmram,
 *                model = lif | izh | hh (default for layers without @model)
 *   [memory]     ram_bytes, rom_bytes, row_words, reserve_bytes, max_kernels_per_pe
 *   [tech.NAME]  NAME in sram, rsram, stt, rmram, rom:
 *                ram_read_energy_pj, ram_read_latency_ns, ram_write_energy_pj,
 *                ram_write_latency_ns, rom_sense_energy_pj, rom_sense_latency_ns,
 *                leakage_mw_per_kib, area_per_byte_um2, rom_overhead_factor,
 *                peripheral_overhead_factor, rom_power_overhead_factor
 *   [neuron]     dt_ms, hh_dt_ms, refractory_steps, q_frac, lif_tau_m, lif_v_rest,
 *                lif_v_reset, lif_v_th, lif_r_m, izh_a, izh_b, izh_c, izh_d,
 *                izh_v_th, hh_c_m, hh_g_na, hh_g_k, hh_g_l, hh_e_na, hh_e_k,
 *                hh_e_l, hh_v_th, hh_hysteresis
 *   [stdp]       eta, tau_ms, w_min, w_max, window_taus
 *   [lut]        exp_k, hh_rows, hh_v_min, hh_v_max
 *   [core]       cycle_ns, cycles_per_op, op_energy_pj, control_energy_pj,
 *                leakage_mw, area_um2
 *   [bus]        width_bits, cycle_ns, gm_energy_pj
 *   [sim]        mode = pipelined | serial, threads, pe_order, order_seed,
 *                weight_min, weight_max, weight_seed
 *   [perf]       chip_area_um2 (0 = 64 SRAM PEs), parallelism = unlimited | capped
 *   [baseline]   name, tech, fp, phase (any key present enables normalization)
 *
 * `#` and `;` start comments. Unknown sections or keys are errors.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "remsim/encoder_io.hpp"
#include "remsim/memory_model.hpp"
#include "remsim/network.hpp"
#include "remsim/scheduler.hpp"

namespace remsim {

enum class DatasetKind : std::uint8_t { Synthetic, Mnist, Cifar10 };
std::string_view to_string(DatasetKind kind) noexcept;

struct CoreCosts {
  double op_energy_pj = 0.5;
  double control_energy_pj = 8.0;  // buffer and control, per PE per time-step
  double leakage_mw = 0.02;        // per PE
  double area_um2 = 1140.0;        // per PE, logic only
};

struct PerfParams {
  double chip_area_um2 = 0.0;  // 0: area of 64 SRAM PEs
  bool unlimited_parallelism = true;
};

struct BaselineSpec {
  std::string name = "baseline";
  std::optional<TechKind> tech;
  std::optional<double> fp;
  std::optional<Phase> phase;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string network_source;  // as written in the file
  NetworkSpec network;
  ModelKind default_model = ModelKind::Lif;

  DatasetKind dataset = DatasetKind::Synthetic;
  std::filesystem::path mnist_images;
  std::filesystem::path mnist_labels;
  std::filesystem::path cifar_batch;
  std::size_t images = 10;
  RateCodeParams rate;

  TechKind tech = TechKind::RSram;
  std::map<TechKind, TechnologyProfile> profiles;  // every kind, defaults then overrides

  SimConfig sim;  // sim.memory.tech is filled from `tech` by sim_config()
  SimOptions options;
  CoreCosts core;
  PerfParams perf;
  std::optional<BaselineSpec> baseline;

  /// Simulator configuration for `tech` (defaults to the configured one).
  SimConfig sim_config(std::optional<TechKind> tech = std::nullopt) const;
  const TechnologyProfile& profile(TechKind kind) const { return profiles.at(kind); }
  /// Throws ConfigError for out-of-range values.
  void validate() const;
};

ExperimentConfig default_config();

/// Parses config text. `base_dir` resolves relative file paths. Throws
/// ConfigError naming the key and line on any problem.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` echo of every effective setting.
std::string format_config(const ExperimentConfig& cfg);

}  // namespace remsim
