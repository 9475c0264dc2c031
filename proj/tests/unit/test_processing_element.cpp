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

#include <memory>
#include <random>

#include "remsim/error.hpp"
#include "remsim/network.hpp"
#include "remsim/processing_element.hpp"

using namespace remsim;

namespace {

struct Fixture {
  std::vector<LayerSpec> layers;
  NetworkWeights weights;
  std::shared_ptr<const NeuronKernel> kernel;
  std::unique_ptr<PeInstance> pe;

  Fixture(const char* net, std::size_t layer, std::size_t k0, std::size_t k1, TechKind tech = TechKind::RSram,
          Phase phase = Phase::Inference, double w_lo = 0.0, double w_hi = 0.3, NeuronParams np = {}) {
    layers = normalize_network(parse_network(net));
    weights = NetworkWeights(layers, 3, w_lo, w_hi);
    kernel = std::make_shared<const NeuronKernel>(layers[layer].model, np, StdpParams{});
    PeMemoryConfig mem;
    mem.tech = TechnologyProfile::defaults(tech);
    PeConfig cfg{0, layer, layers[layer], k0, k1, phase};
    pe = std::make_unique<PeInstance>(cfg, kernel, mem, weights, CoreTiming{});
  }

  BitVector stream(const BitVector& input) const {
    const LayerSpec& l = pe->config().layer;
    BitVector out;
    for (const Window& w : window_split(l.in_shape, l.kernel, l.stride)) {
      const BitVector bits = window_bits(l, input, w);
      for (std::size_t i = 0; i < bits.size(); ++i) out.push_back(bits.get(i));
    }
    return out;
  }
};

BitVector random_bits(std::size_t n, double p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution d(p);
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, d(rng));
  return b;
}

}  // namespace

TEST(Pe, ZeroInputCostsNoSynapseAccess) {
  Fixture f("6x6x1-4c3", 0, 0, 4);
  f.pe->on_broadcast(0, f.stream(BitVector(36)));
  f.pe->step_timestep(0);
  EXPECT_EQ(f.pe->stats().phases.synapse, MemCounters{});
  EXPECT_EQ(f.pe->stats().synapse_weight_reads, 0u);
  EXPECT_EQ(f.pe->stats().neuron_updates, 16u * 4u);
}

TEST(Pe, SynapseReadsEqualOnesTimesLocalKernels) {
  Fixture f("6x6x2-5c3", 0, 1, 4);
  std::uint64_t ones = 0;
  for (int t = 0; t < 10; ++t) {
    const BitVector s = f.stream(random_bits(72, 0.3, t));
    ones += s.count();
    f.pe->on_broadcast(0, s);
    f.pe->step_timestep(t);
  }
  EXPECT_EQ(f.pe->stats().input_spikes, ones);
  EXPECT_EQ(f.pe->stats().phases.synapse.ram_reads, ones * 3);
  EXPECT_EQ(f.pe->stats().phases.synapse.ram_writes, 0u);
  EXPECT_EQ(f.pe->stats().phases.synapse.rom_reads, 0u);
}

TEST(Pe, NeuronPhaseMatchesContractExactly) {
  Fixture f("6x6x1-3c3@izh", 0, 0, 3);
  for (int t = 0; t < 7; ++t) {
    f.pe->on_broadcast(0, f.stream(random_bits(36, 0.5, t)));
    f.pe->step_timestep(t);
  }
  const std::uint64_t updates = 7u * 16u * 3u;
  const MemCounters& n = f.pe->stats().phases.neuron;
  EXPECT_EQ(n.rom_reads, updates * 2);
  EXPECT_EQ(n.ram_reads, updates * 2);
  EXPECT_EQ(n.ram_writes, updates * 2);
  EXPECT_EQ(n.rom_micro_reads, updates * 4);
  EXPECT_EQ(n.rom_micro_writes, updates * 6);
}

TEST(Pe, DepthwiseReadsOneWeightPerOwnedChannel) {
  Fixture f("4x4x4-2s", 0, 1, 3);
  const BitVector in = random_bits(64, 0.5, 9);
  std::uint64_t owned = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in.get(i) && (i % 4 == 1 || i % 4 == 2)) ++owned;
  }
  f.pe->on_broadcast(0, f.stream(in));
  f.pe->step_timestep(0);
  EXPECT_EQ(f.pe->stats().phases.synapse.ram_reads, owned);
  EXPECT_EQ(f.pe->stats().input_spikes, in.count());
}

TEST(Pe, BroadcastTagAndCapacity) {
  Fixture f("4x4x1-2c3", 0, 0, 2);
  const BitVector s = f.stream(BitVector(16));
  f.pe->on_broadcast(7, s);
  EXPECT_EQ(f.pe->buffered_bits(), 0u);
  f.pe->on_broadcast(0, s);
  EXPECT_EQ(f.pe->state(), PeState::Buffering);
  EXPECT_EQ(f.pe->buffered_bits(), f.pe->buffer_capacity_bits());
  EXPECT_THROW(f.pe->on_broadcast(0, s), CapacityError);
}

TEST(Pe, PartialBufferIsRejected) {
  Fixture f("4x4x1-2c3", 0, 0, 2);
  f.pe->on_broadcast(0, BitVector(5));
  EXPECT_THROW(f.pe->step_timestep(0), SchedulingError);
}

TEST(Pe, OutputsAreFlushedOnce) {
  Fixture f("3x3x1-4o", 0, 0, 4, TechKind::RSram, Phase::Inference, 1.0, 1.0);
  BitVector all(9);
  for (std::size_t i = 0; i < 9; ++i) all.set(i);
  bool fired = false;
  for (int t = 0; t < 5 && !fired; ++t) {
    f.pe->on_broadcast(0, f.stream(all));
    f.pe->step_timestep(t);
    const PartialOutput out = f.pe->flush_outputs();
    EXPECT_EQ(out.bits.size(), 4u);
    fired = out.bits.count() == 4;
  }
  EXPECT_TRUE(fired);
  EXPECT_EQ(f.pe->flush_outputs().bits.count(), 0u);
}

TEST(Pe, ResetWritesStateAsHousekeeping) {
  Fixture f("6x6x1-3c3@hh", 0, 0, 3);
  const StepReport r = f.pe->reset_state();
  EXPECT_EQ(r.ram.ram_writes, 16u * 3u * 4u);
  EXPECT_EQ(f.pe->stats().phases.housekeeping.ram_writes, 16u * 3u * 4u);
  EXPECT_EQ(f.pe->stats().phases.neuron, MemCounters{});
}

TEST(Pe, TrainingTouchesOnlyFiredNeuronsSynapses) {
  Fixture f("3x3x1-2o", 0, 0, 2, TechKind::RMram, Phase::Training, 0.5, 1.0);
  BitVector all(9);
  for (std::size_t i = 0; i < 9; ++i) all.set(i);
  std::uint64_t fired = 0;
  for (int t = 0; t < 6; ++t) {
    f.pe->on_broadcast(0, f.stream(all));
    f.pe->step_timestep(t);
    fired += f.pe->flush_outputs().bits.count();
  }
  ASSERT_GT(fired, 0u);
  EXPECT_EQ(f.pe->stats().plasticity_updates, fired * 9);
  const MemCounters& p = f.pe->stats().phases.plasticity;
  EXPECT_EQ(p.ram_reads, fired * 9);
  EXPECT_EQ(p.ram_writes, fired * 9);
  EXPECT_EQ(p.rom_reads, fired * 9);
}

TEST(Pe, PoolLayersAreNotPlastic) {
  NeuronParams np;
  np.lif.r_m = 40.0;
  Fixture f("4x4x2-2s", 0, 0, 2, TechKind::RSram, Phase::Training, 0.0, 0.3, np);
  BitVector all(32);
  for (std::size_t i = 0; i < 32; ++i) all.set(i);
  for (int t = 0; t < 10; ++t) {
    f.pe->on_broadcast(0, f.stream(all));
    f.pe->step_timestep(t);
  }
  EXPECT_GT(f.pe->stats().output_spikes, 0u);
  EXPECT_EQ(f.pe->stats().plasticity_updates, 0u);
  EXPECT_EQ(f.pe->stats().phases.plasticity, MemCounters{});
}

TEST(Pe, PlainTechnologyUsesDedicatedRom) {
  Fixture f("4x4x1-2c3", 0, 0, 2, TechKind::Sram);
  EXPECT_FALSE(f.pe->embedded_rom());
  f.pe->on_broadcast(0, f.stream(BitVector(16)));
  f.pe->step_timestep(0);
  EXPECT_EQ(f.pe->rom_counters().rom_reads, 4u * 2u);
  EXPECT_EQ(f.pe->ram_counters().rom_reads, 0u);
  EXPECT_EQ(f.pe->rom_profile().tech, TechKind::Rom);
  EXPECT_EQ(f.pe->stats().phases.neuron.rom_reads, 8u);
}

TEST(Pe, CapacityAndRangeChecks) {
  const auto layers = normalize_network(parse_network("28x28x1-400o"));
  const NetworkWeights w(layers, 1, 0.0, 0.3);
  auto k = std::make_shared<const NeuronKernel>(ModelKind::Lif, NeuronParams{}, StdpParams{});
  PeMemoryConfig mem;
  EXPECT_THROW(PeInstance(PeConfig{0, 0, layers[0], 0, 11, Phase::Inference}, k, mem, w, CoreTiming{}),
               CapacityError);
  EXPECT_NO_THROW(PeInstance(PeConfig{0, 0, layers[0], 0, 10, Phase::Inference}, k, mem, w, CoreTiming{}));
  EXPECT_THROW(PeInstance(PeConfig{0, 0, layers[0], 5, 5, Phase::Inference}, k, mem, w, CoreTiming{}),
               ArgumentError);
  auto izh = std::make_shared<const NeuronKernel>(ModelKind::Izhikevich, NeuronParams{}, StdpParams{});
  EXPECT_THROW(PeInstance(PeConfig{0, 0, layers[0], 0, 1, Phase::Inference}, izh, mem, w, CoreTiming{}),
               ArgumentError);
}

TEST(Pe, LatencyFollowsCounters) {
  Fixture f("4x4x1-2c3", 0, 0, 2, TechKind::RMram);
  f.pe->on_broadcast(0, f.stream(random_bits(16, 0.5, 4)));
  const StepReport r = f.pe->step_timestep(0);
  const auto p = TechnologyProfile::defaults(TechKind::RMram);
  const double expect = access_cost(p, r.ram).time_ns() + static_cast<double>(r.core_ops);
  EXPECT_DOUBLE_EQ(r.latency_ns, expect);
}

TEST(PeEnums, Names) {
  EXPECT_EQ(parse_phase("training"), Phase::Training);
  EXPECT_EQ(to_string(Phase::Inference), "inference");
  EXPECT_THROW(parse_phase("learn"), ConfigError);
  EXPECT_EQ(to_string(PeState::Plasticity), "plasticity");
}
