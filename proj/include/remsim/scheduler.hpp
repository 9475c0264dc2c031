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
 * @file scheduler.hpp
 * @brief Global memory, scatter/gather over a shared bus and the
 * discrete-event schedule of layer tasks.
 *
 * A task is one (layer, image, time-step). It runs scatter (bus), compute
 * (all PEs of the layer, duration = slowest PE) and gather (bus). A layer
 * runs its own tasks back to back in (image, time-step) order; different
 * layers overlap, so layer l can work on image n+1 while layer l+1 is still
 * on image n. The bus serves one transfer at a time, first come first
 * served, ties broken by (image, time-step, layer).
 *
 * Serial mode runs one task at a time in (image, time-step, layer) order and
 * is the reference for functional equivalence and speedup.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "remsim/network.hpp"
#include "remsim/neuro_models.hpp"
#include "remsim/processing_element.hpp"
#include "remsim/spikes.hpp"

namespace remsim {

enum class ScheduleMode : std::uint8_t { Pipelined, Serial };
enum class PeOrder : std::uint8_t { Forward, Reverse, Shuffled };

std::string_view to_string(ScheduleMode mode) noexcept;
ScheduleMode parse_schedule_mode(std::string_view name);
std::string_view to_string(PeOrder order) noexcept;
PeOrder parse_pe_order(std::string_view name);

struct BusParams {
  std::size_t width_bits = 32;
  double cycle_ns = 1.0;
  double gm_word_energy_pj = 2.0;  // per bus beat to or from global memory
};

/// Transfer time of `bits` over the bus: ceil(bits / width) cycles.
double bus_time_ns(const BusParams& bus, std::size_t bits);
std::uint64_t bus_beats(const BusParams& bus, std::size_t bits);

/// Spike tensors per (level, image, time-step). Level 0 is the encoded input,
/// level l + 1 the output of layer l.
class GlobalMemory {
 public:
  void configure(std::size_t levels, std::size_t images, std::size_t timesteps);

  /// Throws SchedulingError when the slot was already written.
  void write(std::size_t level, std::size_t image, std::size_t t, BitVector bits, double time_ns);
  /// Throws SchedulingError when the slot is empty or was written after `time_ns`.
  const BitVector& read(std::size_t level, std::size_t image, std::size_t t, double time_ns) const;
  bool contains(std::size_t level, std::size_t image, std::size_t t) const;
  double written_at(std::size_t level, std::size_t image, std::size_t t) const;

  std::size_t levels() const noexcept { return levels_; }
  std::size_t images() const noexcept { return images_; }
  std::size_t timesteps() const noexcept { return timesteps_; }

 private:
  struct Slot {
    BitVector bits;
    double time_ns = 0.0;
    bool valid = false;
  };
  std::size_t index(std::size_t level, std::size_t image, std::size_t t) const;

  std::size_t levels_ = 0;
  std::size_t images_ = 0;
  std::size_t timesteps_ = 0;
  std::vector<Slot> slots_;
};

struct SimConfig {
  PeMemoryConfig memory;
  CoreTiming core;
  BusParams bus;
  Phase phase = Phase::Inference;
  NeuronParams neuron;
  StdpParams stdp;
  double weight_min = 0.0;
  double weight_max = 0.3;
  std::uint64_t weight_seed = 1;
  std::size_t max_kernels_per_pe = 0;
};

struct SimOptions {
  ScheduleMode mode = ScheduleMode::Pipelined;
  unsigned threads = 1;
  PeOrder pe_order = PeOrder::Forward;
  std::uint64_t order_seed = 0;
  bool record_tasks = false;
};

struct TaskRecord {
  std::size_t layer = 0;
  std::size_t image = 0;
  std::size_t t = 0;
  double scatter_start = 0.0;
  double scatter_end = 0.0;
  double compute_end = 0.0;
  double gather_start = 0.0;
  double gather_end = 0.0;
};

struct SimResult {
  double makespan_ns = 0.0;
  std::uint64_t scatter_bits = 0;
  std::uint64_t gather_bits = 0;
  std::uint64_t bus_beats = 0;
  std::uint64_t tasks = 0;
  std::uint64_t pe_steps = 0;  // PE x time-step evaluations
  double bus_busy_ns = 0.0;
  std::vector<TaskRecord> task_log;
};

class Simulator {
 public:
  using InputSource = std::function<BitVector(std::size_t image, std::size_t t)>;

  /// Normalizes and maps `net`, then builds and programs every PE.
  Simulator(const NetworkSpec& net, const SimConfig& config);

  void set_input(InputSource source) { input_ = std::move(source); }

  /// Runs `images` x `timesteps` through every layer. Call once per Simulator.
  SimResult run(std::size_t images, std::size_t timesteps, const SimOptions& options = {});

  // Single task stages; run() drives these. Each returns its duration in ns.
  double scatter(std::size_t layer, std::size_t image, std::size_t t, double now_ns);
  double compute(std::size_t layer, std::size_t image, std::size_t t);
  double gather(std::size_t layer, std::size_t image, std::size_t t, double now_ns);

  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  const std::vector<PeAssignment>& assignments() const noexcept { return assignments_; }
  const std::vector<std::unique_ptr<PeInstance>>& pes() const noexcept { return pes_; }
  const GlobalMemory& memory() const noexcept { return gm_; }
  const SimConfig& config() const noexcept { return config_; }
  const NeuronKernel& kernel(ModelKind kind) const;

 private:
  struct LayerRuntime {
    std::vector<std::size_t> pe_index;  // into pes_, in slice order
    BitVector stream;                   // last scatter, window-split
    std::optional<std::pair<std::size_t, std::size_t>> scattered;  // (image, t) awaiting compute
    std::optional<std::pair<std::size_t, std::size_t>> computed;   // (image, t) awaiting gather
    std::vector<PartialOutput> partials;
  };

  void prepare(std::size_t images, std::size_t timesteps, const SimOptions& options);
  void run_serial(SimResult& r, std::size_t images, std::size_t timesteps);
  void run_pipelined(SimResult& r, std::size_t images, std::size_t timesteps);
  std::vector<std::size_t> ordered_pes(std::size_t layer) const;

  SimConfig config_;
  std::vector<LayerSpec> layers_;
  std::vector<PeAssignment> assignments_;
  std::vector<std::shared_ptr<const NeuronKernel>> kernels_;  // per model kind, lazily
  std::vector<std::unique_ptr<PeInstance>> pes_;
  std::vector<LayerRuntime> runtime_;
  GlobalMemory gm_;
  InputSource input_;
  SimOptions options_;
  SimResult* result_ = nullptr;
  bool ran_ = false;
};

}  // namespace remsim
