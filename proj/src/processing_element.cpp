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

#include "remsim/processing_element.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "remsim/error.hpp"

namespace remsim {

std::string_view to_string(Phase phase) noexcept {
  return phase == Phase::Training ? "training" : "inference";
}

Phase parse_phase(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "inference") return Phase::Inference;
  if (n == "training") return Phase::Training;
  throw ConfigError(fmt::format("unknown phase '{}' (expected inference or training)", name));
}

std::string_view to_string(PeState state) noexcept {
  switch (state) {
    case PeState::Idle: return "idle";
    case PeState::Buffering: return "buffering";
    case PeState::Synapse: return "synapse";
    case PeState::Neuron: return "neuron";
    case PeState::Plasticity: return "plasticity";
    case PeState::Flush: return "flush";
  }
  return "?";
}

PeInstance::PeInstance(PeConfig config, std::shared_ptr<const NeuronKernel> kernel, const PeMemoryConfig& memory,
                       const NetworkWeights& weights, CoreTiming timing)
    : config_(std::move(config)), kernel_(std::move(kernel)), timing_(timing) {
  const LayerSpec& layer = config_.layer;
  if (layer.kind != LayerKind::Conv) {
    throw ArgumentError("PE layers must be normalized to conv form");
  }
  if (config_.kernel_begin >= config_.kernel_end || config_.kernel_end > layer.out_maps) {
    throw ArgumentError(fmt::format("PE {}: empty or invalid kernel range [{}, {})", config_.pe_id,
                                    config_.kernel_begin, config_.kernel_end));
  }
  if (kernel_->kind() != layer.model) {
    throw ArgumentError(fmt::format("PE {}: neuron kernel does not match the layer model", config_.pe_id));
  }

  const std::size_t ram_words = memory.ram_bytes / 4;
  const std::size_t rom_words = memory.rom_bytes / 4;
  if (memory.tech.embeds_rom()) {
    ram_ = std::make_unique<MemArray>(memory.tech, MemGeometry{ram_words, rom_words, memory.row_words});
  } else {
    ram_ = std::make_unique<MemArray>(memory.tech, MemGeometry{ram_words, 0, memory.row_words});
    TechnologyProfile rp = memory.rom_tech;
    rp.tech = TechKind::Rom;
    rom_ = std::make_unique<MemArray>(rp, MemGeometry{0, rom_words, memory.row_words});
  }
  kernel_->install(rom_array());

  windows_ = window_split(layer.in_shape, layer.kernel, layer.stride);
  nk_ = config_.kernel_end - config_.kernel_begin;
  positions_ = layer.positions();
  window_bits_ = layer.window_bits();
  state_words_ = kernel_->model_contract().state_words;
  state_base_ = positions_ * nk_;
  used_words_ = state_base_ + windows_.size() * nk_ * state_words_;
  const std::size_t usable = (memory.ram_bytes - std::min(memory.ram_bytes, memory.reserve_bytes)) / 4;
  if (used_words_ > usable) {
    throw CapacityError(fmt::format("PE {}: {} kernels need {} RAM words, {} available", config_.pe_id, nk_,
                                    used_words_, usable));
  }
  buffer_capacity_ = windows_.size() * window_bits_;

  for (std::size_t p = 0; p < positions_; ++p) {
    for (std::size_t j = 0; j < nk_; ++j) {
      ram_->preload(p * nk_ + j, weights.word(config_.layer_tag, config_.kernel_begin + j, p));
    }
  }
  initial_state_ = kernel_->initial_state();
  for (std::size_t n = 0; n < windows_.size() * nk_; ++n) {
    for (std::size_t s = 0; s < state_words_; ++s) ram_->preload(state_base_ + n * state_words_ + s, initial_state_[s]);
  }
  acc_.assign(windows_.size() * nk_, FixedPoint::zero(kStateFormat));
  aux_.assign(windows_.size() * nk_, NeuronAux{});
  out_buf_ = BitVector(windows_.size() * nk_);
  last_pre_spike_.assign(layer.in_shape.size(), -1);
}

void PeInstance::on_broadcast(std::size_t layer_tag, const BitVector& spikes) {
  if (layer_tag != config_.layer_tag) return;
  if (state_ != PeState::Idle && state_ != PeState::Buffering) {
    throw SchedulingError(fmt::format("PE {} received a broadcast while {}", config_.pe_id, to_string(state_)));
  }
  if (in_buf_.size() + spikes.size() > buffer_capacity_) {
    throw CapacityError(fmt::format("PE {} input buffer overflow: {} + {} bits exceeds {}", config_.pe_id,
                                    in_buf_.size(), spikes.size(), buffer_capacity_));
  }
  state_ = PeState::Buffering;
  for (std::size_t i = 0; i < spikes.size(); ++i) in_buf_.push_back(spikes.get(i));
}

StepReport PeInstance::report_since(const MemCounters& ram0, const MemCounters& rom0, std::uint64_t ops0) const {
  StepReport r;
  r.ram = ram_->counters() - ram0;
  r.rom = rom_counters() - rom0;
  r.core_ops = stats_.core_ops - ops0;
  r.latency_ns = access_cost(ram_->profile(), r.ram).time_ns() +
                 (rom_ ? access_cost(rom_->profile(), r.rom).time_ns() : 0.0) +
                 static_cast<double>(r.core_ops) * timing_.cycles_per_op * timing_.cycle_ns;
  return r;
}

StepReport PeInstance::step_timestep(std::int64_t t_step) {
  if (in_buf_.size() != 0 && in_buf_.size() != buffer_capacity_) {
    throw SchedulingError(fmt::format("PE {} stepped with a partial input ({} of {} bits)", config_.pe_id,
                                      in_buf_.size(), buffer_capacity_));
  }
  const MemCounters ram0 = ram_->counters();
  const MemCounters rom0 = rom_counters();
  const std::uint64_t ops0 = stats_.core_ops;
  MemArray& rom = rom_array();
  const LayerSpec& layer = config_.layer;
  const bool training = config_.phase == Phase::Training;
  const bool plastic = training && !layer.depthwise;
  const std::size_t c_in = layer.in_shape.c;
  out_buf_ = BitVector(windows_.size() * nk_);

  // Synapse block: only 1-bits cost anything.
  state_ = PeState::Synapse;
  MemCounters mark = combined();
  std::fill(acc_.begin(), acc_.end(), FixedPoint::zero(kStateFormat));
  if (!in_buf_.empty()) {
    for (std::size_t w = 0; w < windows_.size(); ++w) {
      const std::span<FixedPoint> acc = std::span<FixedPoint>(acc_).subspan(w * nk_, nk_);
      for (std::size_t p = 0; p < window_bits_; ++p) {
        if (!in_buf_.get(w * window_bits_ + p)) continue;
        ++stats_.input_spikes;
        if (training) last_pre_spike_[window_input_index(layer, windows_[w], p)] = t_step;
        if (layer.depthwise) {
          const std::size_t c = p % c_in;
          if (c < config_.kernel_begin || c >= config_.kernel_end) continue;
          const std::size_t j = c - config_.kernel_begin;
          synapse_accumulate((p / c_in) * nk_ + j, 1, *ram_, acc.subspan(j, 1), stats_.fixed);
          stats_.synapse_weight_reads += 1;
          stats_.core_ops += kSynapseCoreOps;
        } else {
          synapse_accumulate(p * nk_, nk_, *ram_, acc, stats_.fixed);
          stats_.synapse_weight_reads += nk_;
          stats_.core_ops += kSynapseCoreOps * nk_;
        }
      }
    }
  }
  stats_.phases.synapse += combined() - mark;
  in_buf_.clear();

  // Neuron block: every mapped neuron once.
  state_ = PeState::Neuron;
  mark = combined();
  const unsigned model_ops = kernel_->model_contract().core_ops;
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    for (std::size_t j = 0; j < nk_; ++j) {
      const std::size_t n = w * nk_ + j;
      const UpdateResult r = neuron_update(*kernel_, state_addr(w, j), acc_[n], aux_[n], *ram_, rom, stats_.fixed);
      stats_.gating_clamps += r.gating_clamps;
      ++stats_.neuron_updates;
      stats_.core_ops += model_ops;
      if (r.spiked) {
        out_buf_.set(n);
        ++stats_.output_spikes;
      }
    }
  }
  stats_.phases.neuron += combined() - mark;

  // Plasticity block: only neurons that fired.
  if (plastic) {
    state_ = PeState::Plasticity;
    mark = combined();
    for (std::size_t w = 0; w < windows_.size(); ++w) {
      for (std::size_t j = 0; j < nk_; ++j) {
        if (!out_buf_.get(w * nk_ + j)) continue;
        pre_scratch_.clear();
        for (std::size_t p = 0; p < positions_; ++p) {
          pre_scratch_.push_back({p * nk_ + j, last_pre_spike_[window_input_index(layer, windows_[w], p)]});
        }
        const std::size_t updated = apply_plasticity(*kernel_, pre_scratch_, t_step, *ram_, rom, stats_.fixed);
        stats_.plasticity_updates += updated;
        stats_.core_ops += kPlasticityCoreOps * updated;
      }
    }
    stats_.phases.plasticity += combined() - mark;
  }

  ++stats_.steps;
  state_ = PeState::Idle;
  return report_since(ram0, rom0, ops0);
}

PartialOutput PeInstance::flush_outputs() {
  state_ = PeState::Flush;
  PartialOutput out{PeSlice{config_.pe_id, config_.kernel_begin, config_.kernel_end}, out_buf_};
  out_buf_ = BitVector(windows_.size() * nk_);
  state_ = PeState::Idle;
  return out;
}

StepReport PeInstance::reset_state() {
  const MemCounters ram0 = ram_->counters();
  const MemCounters rom0 = rom_counters();
  const std::uint64_t ops0 = stats_.core_ops;
  const MemCounters mark = combined();
  for (std::size_t n = 0; n < windows_.size() * nk_; ++n) {
    for (std::size_t s = 0; s < state_words_; ++s) ram_->ram_write(state_base_ + n * state_words_ + s, initial_state_[s]);
  }
  stats_.phases.housekeeping += combined() - mark;
  std::fill(aux_.begin(), aux_.end(), NeuronAux{});
  std::fill(last_pre_spike_.begin(), last_pre_spike_.end(), -1);
  out_buf_ = BitVector(windows_.size() * nk_);
  return report_since(ram0, rom0, ops0);
}

double PeInstance::ram_leakage_mw() const noexcept {
  return ram_->leakage_power_mw() * (1.0 - ram_->rom_leakage_share());
}

double PeInstance::rom_leakage_mw() const noexcept {
  if (rom_) return rom_->leakage_power_mw();
  return ram_->leakage_power_mw() * ram_->rom_leakage_share();
}

}  // namespace remsim
