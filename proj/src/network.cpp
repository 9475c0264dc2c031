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

#include "remsim/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "remsim/error.hpp"
#include "remsim/fixed_point.hpp"
#include "remsim/rng.hpp"

namespace remsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a positive decimal integer occupying all of `s`.
bool parse_count(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out > 0;
}

std::vector<std::string> split_records(std::string_view text) {
  std::vector<std::string> records;
  std::string current;
  bool in_comment = false;
  auto flush = [&] {
    const std::string_view t = trim(current);
    if (!t.empty()) records.emplace_back(t);
    current.clear();
  };
  for (char ch : text) {
    if (ch == '\n') {
      in_comment = false;
      flush();
    } else if (in_comment) {
      continue;
    } else if (ch == '#') {
      in_comment = true;
    } else if (ch == '-') {
      flush();
    } else {
      current.push_back(ch);
    }
  }
  flush();
  return records;
}

std::size_t conv_extent(std::size_t in, std::size_t k, std::size_t stride, const char* axis) {
  if (k == 0 || k > in) {
    throw ShapeError(fmt::format("kernel {} {} exceeds input {} {}", axis, k, axis, in));
  }
  if (stride == 0 || (in - k) % stride != 0) {
    throw ShapeError(fmt::format("({} - {}) / {} along {} is not integral", in, k, stride, axis));
  }
  return (in - k) / stride + 1;
}

}  // namespace

std::string Shape3::to_string() const { return fmt::format("{}x{}x{}", h, w, c); }

std::string_view to_string(LayerKind kind) noexcept {
  switch (kind) {
    case LayerKind::Conv: return "conv";
    case LayerKind::Pool: return "pool";
    case LayerKind::Fc: return "fc";
  }
  return "?";
}

Shape3 LayerSpec::out_shape() const {
  switch (kind) {
    case LayerKind::Fc:
      if (out_maps == 0) throw ShapeError("fc layer needs at least one neuron");
      return {1, 1, out_maps};
    case LayerKind::Pool:
      return normalize_layer(*this).out_shape();
    case LayerKind::Conv:
      break;
  }
  if (out_maps == 0) throw ShapeError("conv layer needs at least one map");
  if (!depthwise && kernel.c != in_shape.c) {
    throw ShapeError(fmt::format("kernel depth {} does not match input depth {}", kernel.c, in_shape.c));
  }
  if (depthwise && out_maps != in_shape.c) {
    throw ShapeError("depthwise layer must keep the map count");
  }
  return {conv_extent(in_shape.h, kernel.h, stride, "height"), conv_extent(in_shape.w, kernel.w, stride, "width"),
          out_maps};
}

std::size_t LayerSpec::window_count() const {
  if (kind != LayerKind::Conv) return normalize_layer(*this).window_count();
  const Shape3 o = out_shape();
  return o.h * o.w;
}

NetworkSpec parse_network(std::string_view text, ModelKind default_model) {
  const std::vector<std::string> records = split_records(text);
  if (records.empty()) throw ShapeError("network description is empty");

  NetworkSpec net;
  {
    const std::string& r = records.front();
    std::size_t dims[3];
    std::string_view rest = r;
    for (int i = 0; i < 3; ++i) {
      const std::size_t cut = i < 2 ? rest.find('x') : rest.size();
      if (cut == std::string_view::npos || !parse_count(rest.substr(0, cut), dims[i])) {
        throw ShapeError(fmt::format("input record '{}' is not HxWxC", r));
      }
      rest = i < 2 ? rest.substr(cut + 1) : std::string_view{};
    }
    net.input = {dims[0], dims[1], dims[2]};
  }

  Shape3 shape = net.input;
  for (std::size_t i = 1; i < records.size(); ++i) {
    std::string_view rec = records[i];
    LayerSpec layer;
    layer.model = default_model;
    layer.in_shape = shape;
    if (const std::size_t at = rec.find('@'); at != std::string_view::npos) {
      layer.model = parse_model(trim(rec.substr(at + 1)));
      rec = trim(rec.substr(0, at));
    }
    if (rec.empty()) throw ShapeError(fmt::format("empty layer record '{}'", records[i]));
    const char tag = rec.back();
    std::size_t a = 0;
    std::size_t b = 0;
    if (tag == 'o' && parse_count(rec.substr(0, rec.size() - 1), a)) {
      layer.kind = LayerKind::Fc;
      layer.out_maps = a;
      layer.kernel = shape;
      layer.stride = 0;
    } else if (tag == 's' && parse_count(rec.substr(0, rec.size() - 1), a)) {
      if (a != 2) throw ShapeError(fmt::format("pool record '{}': only 2s pooling is supported", records[i]));
      layer.kind = LayerKind::Pool;
      layer.kernel = {2, 2, 1};
      layer.stride = 2;
      layer.out_maps = shape.c;
      layer.depthwise = true;
    } else if (const std::size_t c = rec.find('c');
               c != std::string_view::npos && parse_count(rec.substr(0, c), a) && parse_count(rec.substr(c + 1), b)) {
      layer.kind = LayerKind::Conv;
      layer.out_maps = a;
      layer.kernel = {b, b, shape.c};
      layer.stride = 1;
    } else {
      throw ShapeError(fmt::format("unrecognized layer record '{}'", records[i]));
    }
    try {
      shape = layer.out_shape();
    } catch (const ShapeError& e) {
      throw ShapeError(fmt::format("layer {} ('{}'): {}", i, records[i], e.what()));
    }
    net.layers.push_back(layer);
  }
  if (net.layers.empty()) throw ShapeError("network has no layers");
  return net;
}

NetworkSpec load_network(const std::filesystem::path& path, ModelKind default_model) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open network file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str(), default_model);
}

std::string format_network(const NetworkSpec& net) {
  std::string out = net.input.to_string();
  for (const LayerSpec& l : net.layers) {
    switch (l.kind) {
      case LayerKind::Fc: out += fmt::format("-{}o", l.out_maps); break;
      case LayerKind::Pool: out += "-2s"; break;
      case LayerKind::Conv: out += fmt::format("-{}c{}", l.out_maps, l.kernel.h); break;
    }
    if (l.model != ModelKind::Lif) out += fmt::format("@{}", to_string(l.model));
  }
  return out;
}

LayerSpec normalize_layer(const LayerSpec& spec) {
  LayerSpec out = spec;
  switch (spec.kind) {
    case LayerKind::Conv: break;
    case LayerKind::Pool:
      out.kernel = {2, 2, 1};
      out.stride = 2;
      out.out_maps = spec.in_shape.c;
      out.depthwise = true;
      break;
    case LayerKind::Fc:
      out.kernel = spec.in_shape;
      out.stride = 1;
      out.depthwise = false;
      break;
  }
  out.kind = LayerKind::Conv;
  (void)out.out_shape();
  return out;
}

std::vector<LayerSpec> normalize_network(const NetworkSpec& net) {
  std::vector<LayerSpec> out;
  out.reserve(net.layers.size());
  for (const LayerSpec& l : net.layers) out.push_back(normalize_layer(l));
  return out;
}

std::vector<Window> window_split(const Shape3& in, const Shape3& kernel, std::size_t stride) {
  const std::size_t oh = conv_extent(in.h, kernel.h, stride, "height");
  const std::size_t ow = conv_extent(in.w, kernel.w, stride, "width");
  std::vector<Window> out;
  out.reserve(oh * ow);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) out.push_back({y * stride, x * stride});
  }
  return out;
}

std::size_t window_input_index(const LayerSpec& layer, const Window& win, std::size_t p) noexcept {
  const std::size_t c_in = layer.in_shape.c;
  const std::size_t c = p % c_in;
  const std::size_t dx = (p / c_in) % layer.kernel.w;
  const std::size_t dy = p / (c_in * layer.kernel.w);
  return ((win.y + dy) * layer.in_shape.w + (win.x + dx)) * c_in + c;
}

BitVector window_bits(const LayerSpec& layer, const BitVector& input, const Window& win) {
  const std::size_t n = layer.window_bits();
  BitVector out(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (input.get(window_input_index(layer, win, p))) out.set(p);
  }
  return out;
}

std::size_t kernel_bytes(const LayerSpec& layer) {
  const std::size_t state_words = contract(layer.model).state_words;
  return (layer.positions() + layer.window_count() * state_words) * 4;
}

std::vector<PeAssignment> assign_pes(const std::vector<LayerSpec>& layers, const MappingParams& params) {
  if (params.reserve_bytes >= params.ram_bytes) {
    throw MappingError("the RAM reserve leaves no room for kernels");
  }
  const std::size_t room = params.ram_bytes - params.reserve_bytes;
  std::vector<PeAssignment> out;
  std::size_t next_pe = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec& layer = layers[l];
    const std::size_t kb = kernel_bytes(layer);
    if (kb > room) {
      throw MappingError(fmt::format("layer {} ({} maps of {} weights): one kernel needs {} B but a PE offers {} B",
                                     l, layer.out_maps, layer.positions(), kb, room));
    }
    std::size_t per_pe = room / kb;
    if (params.max_kernels_per_pe > 0) per_pe = std::min(per_pe, params.max_kernels_per_pe);
    PeAssignment a;
    a.layer = l;
    for (std::size_t k = 0; k < layer.out_maps; k += per_pe) {
      a.slices.push_back({next_pe++, k, std::min(layer.out_maps, k + per_pe)});
    }
    out.push_back(std::move(a));
  }
  return out;
}

BitVector merge_outputs(const LayerSpec& layer, const std::vector<PartialOutput>& parts) {
  const Shape3 o = layer.out_shape();
  const std::size_t windows = o.h * o.w;
  const std::size_t maps = o.c;
  std::vector<int> owner(maps, -1);
  BitVector out(o.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const PeSlice& s = parts[i].slice;
    if (s.kernel_begin >= s.kernel_end || s.kernel_end > maps) {
      throw MappingError(fmt::format("PE {} claims maps [{}, {}) of a {}-map layer", s.pe_id, s.kernel_begin,
                                     s.kernel_end, maps));
    }
    if (parts[i].bits.size() != windows * s.kernels()) {
      throw MappingError(fmt::format("PE {} returned {} bits, expected {}", s.pe_id, parts[i].bits.size(),
                                     windows * s.kernels()));
    }
    for (std::size_t k = s.kernel_begin; k < s.kernel_end; ++k) {
      if (owner[k] >= 0) {
        throw MappingError(fmt::format("map {} produced by more than one PE", k));
      }
      owner[k] = static_cast<int>(i);
    }
    const std::size_t nk = s.kernels();
    for (std::size_t w = 0; w < windows; ++w) {
      for (std::size_t j = 0; j < nk; ++j) {
        if (parts[i].bits.get(w * nk + j)) out.set(w * maps + s.kernel_begin + j);
      }
    }
  }
  for (std::size_t k = 0; k < maps; ++k) {
    if (owner[k] < 0) throw MappingError(fmt::format("output incomplete: no PE produced map {}", k));
  }
  return out;
}

NetworkWeights::NetworkWeights(const std::vector<LayerSpec>& layers, std::uint64_t seed, double w_lo, double w_hi) {
  if (!(w_lo >= -1.0 && w_lo <= w_hi && w_hi <= 1.0)) {
    throw ConfigError(fmt::format("initial weight range [{}, {}] must lie within [-1, 1]", w_lo, w_hi));
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec& layer = layers[l];
    const std::size_t p = layer.positions();
    const std::size_t n = p * layer.out_maps;
    std::vector<std::uint32_t> words(n);
    if (layer.depthwise) {
      const std::uint32_t avg = FixedPoint::from_real(1.0 / static_cast<double>(p), kStateFormat).to_word();
      std::fill(words.begin(), words.end(), avg);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double u = to_unit(counter_hash({seed, 0x77u, l, i}));
        words[i] = FixedPoint::from_real(w_lo + (w_hi - w_lo) * u, kStateFormat).to_word();
      }
    }
    words_.push_back(std::move(words));
    positions_.push_back(p);
  }
}

}  // namespace remsim
