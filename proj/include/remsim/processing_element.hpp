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
 * @file processing_element.hpp
 * @brief Event-controller PE: buffered broadcast input, event-driven synapse
 * accumulation, one neuron update per time-step and threshold-gated STDP.
 *
 * RAM layout of a PE holding kernels [k0, k0 + nk) of a layer with P weight
 * positions and W windows:
 *
 *   [0, P nk)                 weights, position-major: weight(p, j) at p nk + j
 *   [P nk, P nk + W nk s)     neuron state, s words per neuron, window-major
 *
 * so one input spike at position p touches a contiguous row of nk weights.
 * Pre-spike timestamps, refractory counters and the input/output buffers are
 * core registers and cost no memory accesses.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "remsim/memory_model.hpp"
#include "remsim/network.hpp"
#include "remsim/neuro_models.hpp"
#include "remsim/spikes.hpp"

namespace remsim {

enum class Phase : std::uint8_t { Inference, Training };
std::string_view to_string(Phase phase) noexcept;
Phase parse_phase(std::string_view name);

enum class PeState : std::uint8_t { Idle, Buffering, Synapse, Neuron, Plasticity, Flush };
std::string_view to_string(PeState state) noexcept;

struct PeMemoryConfig {
  TechnologyProfile tech = TechnologyProfile::defaults(TechKind::RSram);
  /// Dedicated LUT store of plain technologies.
  TechnologyProfile rom_tech = TechnologyProfile::defaults(TechKind::Rom);
  std::size_t ram_bytes = 32 * 1024;
  std::size_t rom_bytes = 32 * 1024;
  std::size_t row_words = 16;
  std::size_t reserve_bytes = 0;
};

struct CoreTiming {
  double cycle_ns = 1.0;
  double cycles_per_op = 1.0;
};

struct PeConfig {
  std::size_t pe_id = 0;
  std::size_t layer_tag = 0;
  LayerSpec layer;  // normalized
  std::size_t kernel_begin = 0;
  std::size_t kernel_end = 0;
  Phase phase = Phase::Inference;
};

struct PhaseCounters {
  MemCounters synapse;
  MemCounters neuron;
  MemCounters plasticity;
  MemCounters housekeeping;  // per-image state reset

  MemCounters total() const noexcept { return synapse + neuron + plasticity + housekeeping; }
};

struct PeStats {
  PhaseCounters phases;
  std::uint64_t core_ops = 0;
  std::uint64_t steps = 0;
  std::uint64_t input_spikes = 0;       // 1-bits seen in the input buffer
  std::uint64_t synapse_weight_reads = 0;
  std::uint64_t neuron_updates = 0;
  std::uint64_t plasticity_updates = 0;
  std::uint64_t output_spikes = 0;
  std::uint64_t gating_clamps = 0;
  FixedStatus fixed;
};

/// Work done by one step or reset.
struct StepReport {
  MemCounters ram;
  MemCounters rom;
  std::uint64_t core_ops = 0;
  double latency_ns = 0.0;
};

class PeInstance {
 public:
  /// Programs weights and LUTs. Throws CapacityError when they do not fit.
  PeInstance(PeConfig config, std::shared_ptr<const NeuronKernel> kernel, const PeMemoryConfig& memory,
             const NetworkWeights& weights, CoreTiming timing);

  /// Appends `spikes` when `layer_tag` matches; ignores it otherwise. Throws
  /// CapacityError past one time-step of input.
  void on_broadcast(std::size_t layer_tag, const BitVector& spikes);

  /// Drains the input buffer, updates every neuron once and, in training,
  /// applies STDP to the neurons that fired. `t_step` is the time-step index
  /// within the current image.
  StepReport step_timestep(std::int64_t t_step);

  /// Output bits of the last step (windows x local kernels); clears them.
  PartialOutput flush_outputs();

  /// Rewrites every neuron's initial state (counted as housekeeping) and
  /// forgets pre-spike history; called at the start of each image.
  StepReport reset_state();

  const PeConfig& config() const noexcept { return config_; }
  PeState state() const noexcept { return state_; }
  std::size_t buffered_bits() const noexcept { return in_buf_.size(); }
  std::size_t buffer_capacity_bits() const noexcept { return buffer_capacity_; }
  std::size_t neurons() const noexcept { return windows_.size() * nk_; }
  const PeStats& stats() const noexcept { return stats_; }

  // Cost views. The arrays themselves are not exposed.
  const TechnologyProfile& ram_profile() const noexcept { return ram_->profile(); }
  const TechnologyProfile& rom_profile() const noexcept { return rom_array().profile(); }
  MemCounters ram_counters() const noexcept { return ram_->counters(); }
  /// Counters of the dedicated ROM array; zero when the ROM is embedded.
  MemCounters rom_counters() const noexcept { return rom_ ? rom_->counters() : MemCounters{}; }
  bool embedded_rom() const noexcept { return rom_ == nullptr; }
  /// ROM plane usage (LUT directory) for the report.
  const LutDirectory& lut_directory() const noexcept { return rom_array().lut_directory(); }
  double ram_leakage_mw() const noexcept;
  double rom_leakage_mw() const noexcept;
  std::size_t ram_words_used() const noexcept { return used_words_; }

 private:
  friend struct PeProbe;  // test access

  MemArray& rom_array() noexcept { return rom_ ? *rom_ : *ram_; }
  const MemArray& rom_array() const noexcept { return rom_ ? *rom_ : *ram_; }
  MemCounters combined() const noexcept { return ram_->counters() + rom_counters(); }
  StepReport report_since(const MemCounters& ram0, const MemCounters& rom0, std::uint64_t ops0) const;
  std::size_t state_addr(std::size_t w, std::size_t j) const noexcept {
    return state_base_ + (w * nk_ + j) * state_words_;
  }

  PeConfig config_;
  std::shared_ptr<const NeuronKernel> kernel_;
  CoreTiming timing_;
  std::unique_ptr<MemArray> ram_;
  std::unique_ptr<MemArray> rom_;  // null when the ROM is embedded in ram_
  std::vector<Window> windows_;
  std::size_t nk_ = 0;
  std::size_t positions_ = 0;
  std::size_t window_bits_ = 0;
  std::size_t state_words_ = 0;
  std::size_t state_base_ = 0;
  std::size_t used_words_ = 0;
  std::size_t buffer_capacity_ = 0;
  std::vector<std::uint32_t> initial_state_;

  PeState state_ = PeState::Idle;
  BitVector in_buf_;
  BitVector out_buf_;
  std::vector<FixedPoint> acc_;
  std::vector<NeuronAux> aux_;
  std::vector<std::int64_t> last_pre_spike_;  // per input tensor element
  std::vector<PreSynapse> pre_scratch_;
  PeStats stats_;
};

}  // namespace remsim
