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
 * @file network.hpp
 * @brief Layered SNN descriptions and their lowering onto PEs.
 *
 * Network text follows the usual shorthand:
 *
 *   32x32x3-24c5-2s-80c5-2s-10o
 *
 * `HxWxC` is the input, `Nc K` a conv layer with N maps of KxK kernels
 * (stride 1, no padding), `2s` a 2x2 stride-2 pool and `No` a fully connected
 * layer of N neurons. A layer may carry a model suffix (`400o@izh`). Records
 * may be separated by '-' or newlines; '#' starts a comment.
 *
 * Every layer is lowered to a conv form. Tensors are HWC and windows are
 * visited row-major; the bits of one window are ordered (dy, dx, c).
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "remsim/neuro_models.hpp"
#include "remsim/spikes.hpp"

namespace remsim {

struct Shape3 {
  std::size_t h = 0;
  std::size_t w = 0;
  std::size_t c = 0;

  std::size_t size() const noexcept { return h * w * c; }
  std::string to_string() const;
  friend bool operator==(const Shape3&, const Shape3&) = default;
};

enum class LayerKind : std::uint8_t { Conv, Pool, Fc };

std::string_view to_string(LayerKind kind) noexcept;

struct LayerSpec {
  LayerKind kind = LayerKind::Conv;
  Shape3 in_shape;
  Shape3 kernel;           // kH x kW x kC; depthwise kernels have kC = 1
  std::size_t stride = 1;  // 0 on an fc layer before normalization
  std::size_t out_maps = 0;
  ModelKind model = ModelKind::Lif;
  bool depthwise = false;  // map j only sees input channel j

  /// Throws ShapeError for non-integral or empty output dimensions.
  Shape3 out_shape() const;
  /// Weights per kernel.
  std::size_t positions() const noexcept { return kernel.h * kernel.w * kernel.c; }
  /// Bits in one broadcast window.
  std::size_t window_bits() const noexcept { return kernel.h * kernel.w * in_shape.c; }
  std::size_t window_count() const;
  std::size_t neuron_count() const { return window_count() * out_maps; }
};

struct NetworkSpec {
  Shape3 input;
  std::vector<LayerSpec> layers;  // as written, not yet normalized
};

/// Throws ShapeError for malformed records or impossible shapes.
NetworkSpec parse_network(std::string_view text, ModelKind default_model = ModelKind::Lif);
NetworkSpec load_network(const std::filesystem::path& path, ModelKind default_model = ModelKind::Lif);
std::string format_network(const NetworkSpec& net);

/// Pool -> depthwise 2x2 stride-2 conv; fc -> conv with kernel = input shape.
LayerSpec normalize_layer(const LayerSpec& spec);
std::vector<LayerSpec> normalize_network(const NetworkSpec& net);

struct Window {
  std::size_t y = 0;
  std::size_t x = 0;
  friend bool operator==(const Window&, const Window&) = default;
};

/// Row-major window origins. Throws ShapeError when the kernel exceeds the input
/// or the stride does not tile it.
std::vector<Window> window_split(const Shape3& in, const Shape3& kernel, std::size_t stride);

/// Index of bit `p` of window `win` in the HWC input tensor.
std::size_t window_input_index(const LayerSpec& layer, const Window& win, std::size_t p) noexcept;
/// Extracts one window's bits in (dy, dx, c) order.
BitVector window_bits(const LayerSpec& layer, const BitVector& input, const Window& win);

/// Contiguous range of kernels (output maps) stored by one PE.
struct PeSlice {
  std::size_t pe_id = 0;
  std::size_t kernel_begin = 0;
  std::size_t kernel_end = 0;

  std::size_t kernels() const noexcept { return kernel_end - kernel_begin; }
};

struct PeAssignment {
  std::size_t layer = 0;
  std::vector<PeSlice> slices;
};

struct MappingParams {
  std::size_t ram_bytes = 32 * 1024;
  std::size_t reserve_bytes = 0;        // RAM kept free for buffers and bookkeeping
  std::size_t max_kernels_per_pe = 0;  // 0: limited by capacity only
};

/// RAM bytes one kernel of `layer` occupies: its weights plus the state of
/// its neuron in every window.
std::size_t kernel_bytes(const LayerSpec& layer);

/// Greedy packing of consecutive kernels into PEs. PE ids are global and
/// consecutive in layer order. Throws MappingError naming the layer when a
/// single kernel does not fit.
std::vector<PeAssignment> assign_pes(const std::vector<LayerSpec>& layers, const MappingParams& params);

/// Output bits of one PE: windows x local kernels, window-major.
struct PartialOutput {
  PeSlice slice;
  BitVector bits;
};

/// Interleaves partial outputs into the layer's HWC output tensor. Throws
/// MappingError when a map is missing or owned twice, or a partial has the
/// wrong size.
BitVector merge_outputs(const LayerSpec& layer, const std::vector<PartialOutput>& parts);

/// Initial weights of every layer: weight(l, k, p) in kStateFormat words.
class NetworkWeights {
 public:
  NetworkWeights() = default;
  /// Conv and fc weights are uniform in [w_lo, w_hi] from a counter-based
  /// generator keyed by (seed, layer, index); pool weights are 1 / (kH kW).
  NetworkWeights(const std::vector<LayerSpec>& layers, std::uint64_t seed, double w_lo, double w_hi);

  std::uint32_t word(std::size_t layer, std::size_t kernel, std::size_t position) const {
    return words_.at(layer).at(kernel * positions_.at(layer) + position);
  }
  std::size_t layers() const noexcept { return words_.size(); }

 private:
  std::vector<std::vector<std::uint32_t>> words_;
  std::vector<std::size_t> positions_;
};

}  // namespace remsim
