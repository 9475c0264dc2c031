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

// Flat single-process SNN evaluator: direct convolution / pooling / dense
// layers over HWC tensors, one state array per layer, no PEs, no windows,
// no bus. Shares only the per-neuron update arithmetic with the simulator.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "remsim/memory_model.hpp"
#include "remsim/network.hpp"
#include "remsim/neuro_models.hpp"
#include "remsim/scheduler.hpp"
#include "remsim/spikes.hpp"

namespace reftest {

class ReferenceSnn {
 public:
  using Input = std::function<remsim::BitVector(std::size_t image, std::size_t t)>;

  ReferenceSnn(const remsim::NetworkSpec& net, const remsim::SimConfig& config);

  /// outputs[l][t] for one image; state is reset first.
  std::vector<std::vector<remsim::BitVector>> run_image(std::size_t image, std::size_t timesteps, const Input& input);

 private:
  struct Layer {
    remsim::LayerSpec raw;
    remsim::Shape3 out;
    std::shared_ptr<const remsim::NeuronKernel> kernel;
    std::vector<remsim::FixedPoint> weights;  // [k][p]
    std::size_t positions = 0;
    std::unique_ptr<remsim::MemArray> state;
    std::unique_ptr<remsim::MemArray> rom;
    std::vector<remsim::NeuronAux> aux;
  };

  remsim::BitVector step(Layer& layer, const remsim::BitVector& in);
  void reset(Layer& layer);

  std::vector<Layer> layers_;
};

}  // namespace reftest
