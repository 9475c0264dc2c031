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

#include "trace_replay.hpp"

#include <limits>

namespace reftest {

using namespace remsim;

namespace {

// Per-update contract tuples, written out here rather than taken from the
// library: {rom, ram read, ram write, state words}.
struct Tuple {
  std::uint64_t rom, reads, writes, state;
};

Tuple tuple(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lif: return {1, 1, 1, 1};
    case ModelKind::Izhikevich: return {2, 2, 2, 2};
    case ModelKind::HodgkinHuxley: return {9, 4, 4, 4};
  }
  return {0, 0, 0, 0};
}

}  // namespace

std::vector<LayerExpectation> replay_expectations(const Simulator& sim, std::size_t images, std::size_t timesteps) {
  const double forever = std::numeric_limits<double>::infinity();
  std::vector<LayerExpectation> out;
  for (std::size_t l = 0; l < sim.layers().size(); ++l) {
    const LayerSpec& layer = sim.layers()[l];
    const Shape3 in = layer.in_shape;
    const Shape3 o = layer.out_shape();
    const std::size_t kh = layer.kernel.h;
    const std::size_t kw = layer.kernel.w;
    LayerExpectation e;
    for (std::size_t n = 0; n < images; ++n) {
      for (std::size_t t = 0; t < timesteps; ++t) {
        const BitVector& x = sim.memory().read(l, n, t, forever);
        // Each input element reaches every output position whose receptive
        // field covers it; a depthwise layer feeds one map, others all maps.
        for (std::size_t y = 0; y < in.h; ++y) {
          for (std::size_t xx = 0; xx < in.w; ++xx) {
            for (std::size_t c = 0; c < in.c; ++c) {
              if (!x.get((y * in.w + xx) * in.c + c)) continue;
              std::uint64_t covering = 0;
              for (std::size_t oy = 0; oy < o.h; ++oy) {
                const std::size_t y0 = oy * layer.stride;
                if (y < y0 || y >= y0 + kh) continue;
                for (std::size_t ox = 0; ox < o.w; ++ox) {
                  const std::size_t x0 = ox * layer.stride;
                  if (xx >= x0 && xx < x0 + kw) ++covering;
                }
              }
              e.input_ones += covering;
              e.synapse_ram_reads += covering * (layer.depthwise ? 1 : layer.out_maps);
            }
          }
        }
      }
    }
    const Tuple tp = tuple(layer.model);
    const std::uint64_t neurons = o.size();
    e.neuron_updates = neurons * images * timesteps;
    e.neuron_rom_reads = e.neuron_updates * tp.rom;
    e.neuron_ram_reads = e.neuron_updates * tp.reads;
    e.neuron_ram_writes = e.neuron_updates * tp.writes;
    e.housekeeping_ram_writes = neurons * tp.state * images;
    out.push_back(e);
  }
  return out;
}

std::vector<LayerObserved> observed_counters(const Simulator& sim) {
  std::vector<LayerObserved> out(sim.layers().size());
  for (const auto& pe : sim.pes()) {
    LayerObserved& o = out[pe->config().layer_tag];
    const PeStats& s = pe->stats();
    o.synapse += s.phases.synapse;
    o.neuron += s.phases.neuron;
    o.plasticity += s.phases.plasticity;
    o.housekeeping += s.phases.housekeeping;
    o.neuron_updates += s.neuron_updates;
  }
  return out;
}

}  // namespace reftest
