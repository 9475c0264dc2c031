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

#include "remsim/scheduler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <queue>
#include <string>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "remsim/error.hpp"
#include "remsim/rng.hpp"

namespace remsim {

namespace {

std::string lower(std::string_view s) {
  std::string n(s);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  return n;
}

}  // namespace

std::string_view to_string(ScheduleMode mode) noexcept {
  return mode == ScheduleMode::Serial ? "serial" : "pipelined";
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  const std::string n = lower(name);
  if (n == "pipelined") return ScheduleMode::Pipelined;
  if (n == "serial") return ScheduleMode::Serial;
  throw ConfigError(fmt::format("unknown schedule mode '{}' (expected pipelined or serial)", name));
}

std::string_view to_string(PeOrder order) noexcept {
  switch (order) {
    case PeOrder::Forward: return "forward";
    case PeOrder::Reverse: return "reverse";
    case PeOrder::Shuffled: return "shuffled";
  }
  return "?";
}

PeOrder parse_pe_order(std::string_view name) {
  const std::string n = lower(name);
  if (n == "forward") return PeOrder::Forward;
  if (n == "reverse") return PeOrder::Reverse;
  if (n == "shuffled" || n == "shuffle") return PeOrder::Shuffled;
  throw ConfigError(fmt::format("unknown PE order '{}' (expected forward, reverse or shuffled)", name));
}

std::uint64_t bus_beats(const BusParams& bus, std::size_t bits) {
  if (bus.width_bits == 0) throw ConfigError("bus width must be > 0");
  return (bits + bus.width_bits - 1) / bus.width_bits;
}

double bus_time_ns(const BusParams& bus, std::size_t bits) {
  return static_cast<double>(bus_beats(bus, bits)) * bus.cycle_ns;
}

// ---------------------------------------------------------------------------
// GlobalMemory

void GlobalMemory::configure(std::size_t levels, std::size_t images, std::size_t timesteps) {
  levels_ = levels;
  images_ = images;
  timesteps_ = timesteps;
  slots_.assign(levels * images * timesteps, Slot{});
}

std::size_t GlobalMemory::index(std::size_t level, std::size_t image, std::size_t t) const {
  if (level >= levels_ || image >= images_ || t >= timesteps_) {
    throw SchedulingError(fmt::format("global memory slot ({}, {}, {}) out of range", level, image, t));
  }
  return (level * images_ + image) * timesteps_ + t;
}

void GlobalMemory::write(std::size_t level, std::size_t image, std::size_t t, BitVector bits, double time_ns) {
  Slot& s = slots_[index(level, image, t)];
  if (s.valid) {
    throw SchedulingError(fmt::format("global memory slot ({}, {}, {}) written twice", level, image, t));
  }
  s.bits = std::move(bits);
  s.time_ns = time_ns;
  s.valid = true;
}

const BitVector& GlobalMemory::read(std::size_t level, std::size_t image, std::size_t t, double time_ns) const {
  const Slot& s = slots_[index(level, image, t)];
  if (!s.valid) {
    throw SchedulingError(fmt::format("read of unwritten global memory slot ({}, {}, {})", level, image, t));
  }
  if (s.time_ns > time_ns) {
    throw SchedulingError(fmt::format("slot ({}, {}, {}) read at {} ns before its write at {} ns", level, image, t,
                                      time_ns, s.time_ns));
  }
  return s.bits;
}

bool GlobalMemory::contains(std::size_t level, std::size_t image, std::size_t t) const {
  return slots_[index(level, image, t)].valid;
}

double GlobalMemory::written_at(std::size_t level, std::size_t image, std::size_t t) const {
  return slots_[index(level, image, t)].time_ns;
}

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(const NetworkSpec& net, const SimConfig& config) : config_(config) {
  if (!(config_.bus.cycle_ns > 0.0) || config_.bus.width_bits == 0) {
    throw ConfigError("bus width and cycle time must be > 0");
  }
  layers_ = normalize_network(net);
  MappingParams mp;
  mp.ram_bytes = config_.memory.ram_bytes;
  mp.reserve_bytes = config_.memory.reserve_bytes;
  mp.max_kernels_per_pe = config_.max_kernels_per_pe;
  assignments_ = assign_pes(layers_, mp);
  const NetworkWeights weights(layers_, config_.weight_seed, config_.weight_min, config_.weight_max);

  kernels_.resize(3);
  runtime_.resize(layers_.size());
  for (const PeAssignment& a : assignments_) {
    const LayerSpec& layer = layers_[a.layer];
    auto& kernel = kernels_[static_cast<std::size_t>(layer.model)];
    if (!kernel) kernel = std::make_shared<const NeuronKernel>(layer.model, config_.neuron, config_.stdp);
    for (const PeSlice& s : a.slices) {
      PeConfig pc;
      pc.pe_id = s.pe_id;
      pc.layer_tag = a.layer;
      pc.layer = layer;
      pc.kernel_begin = s.kernel_begin;
      pc.kernel_end = s.kernel_end;
      pc.phase = config_.phase;
      runtime_[a.layer].pe_index.push_back(pes_.size());
      pes_.push_back(std::make_unique<PeInstance>(pc, kernel, config_.memory, weights, config_.core));
    }
  }
}

const NeuronKernel& Simulator::kernel(ModelKind kind) const {
  const auto& k = kernels_.at(static_cast<std::size_t>(kind));
  if (!k) throw ArgumentError(fmt::format("no layer uses the {} model", to_string(kind)));
  return *k;
}

std::vector<std::size_t> Simulator::ordered_pes(std::size_t layer) const {
  std::vector<std::size_t> idx = runtime_[layer].pe_index;
  switch (options_.pe_order) {
    case PeOrder::Forward: break;
    case PeOrder::Reverse: std::reverse(idx.begin(), idx.end()); break;
    case PeOrder::Shuffled:
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return counter_hash({options_.order_seed, a}) < counter_hash({options_.order_seed, b});
      });
      break;
  }
  return idx;
}

double Simulator::scatter(std::size_t layer, std::size_t image, std::size_t t, double now_ns) {
  if (layer >= layers_.size()) throw SchedulingError(fmt::format("no layer {}", layer));
  LayerRuntime& rt = runtime_[layer];
  if (rt.pe_index.empty()) throw SchedulingError(fmt::format("layer {} has no mapped PEs", layer));
  if (rt.scattered || rt.computed) {
    throw SchedulingError(fmt::format("scatter to layer {} before its previous task was gathered", layer));
  }
  if (layer == 0 && !gm_.contains(0, image, t)) {
    if (!input_) throw SchedulingError("no input source attached");
    gm_.write(0, image, t, input_(image, t), 0.0);
  }
  const BitVector& src = gm_.read(layer, image, t, now_ns);
  const LayerSpec& spec = layers_[layer];
  if (src.size() != spec.in_shape.size()) {
    throw SchedulingError(fmt::format("layer {} expects {} input bits, global memory holds {}", layer,
                                      spec.in_shape.size(), src.size()));
  }

  const std::vector<Window> windows = window_split(spec.in_shape, spec.kernel, spec.stride);
  const std::size_t wb = spec.window_bits();
  rt.stream = BitVector(windows.size() * wb);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    for (std::size_t p = 0; p < wb; ++p) {
      if (src.get(window_input_index(spec, windows[w], p))) rt.stream.set(w * wb + p);
    }
  }
  for (std::size_t i : rt.pe_index) pes_[i]->on_broadcast(layer, rt.stream);
  rt.scattered = std::make_pair(image, t);

  if (result_) {
    result_->scatter_bits += rt.stream.size();
    result_->bus_beats += bus_beats(config_.bus, rt.stream.size());
  }
  return bus_time_ns(config_.bus, rt.stream.size());
}

double Simulator::compute(std::size_t layer, std::size_t image, std::size_t t) {
  LayerRuntime& rt = runtime_.at(layer);
  if (rt.scattered != std::make_optional(std::make_pair(image, t))) {
    throw SchedulingError(fmt::format("compute of layer {} task ({}, {}) without its scatter", layer, image, t));
  }
  const std::vector<std::size_t> order = ordered_pes(layer);
  std::vector<double> latency(order.size(), 0.0);
  std::vector<std::exception_ptr> errors(order.size());

  auto work = [&](std::size_t i) {
    try {
      PeInstance& pe = *pes_[order[i]];
      double l = 0.0;
      if (t == 0) l += pe.reset_state().latency_ns;
      l += pe.step_timestep(static_cast<std::int64_t>(t)).latency_ns;
      latency[i] = l;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t threads = std::min<std::size_t>(std::max(1u, options_.threads), order.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < order.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        for (std::size_t i = k; i < order.size(); i += threads) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  rt.partials.clear();
  for (std::size_t i : rt.pe_index) rt.partials.push_back(pes_[i]->flush_outputs());
  rt.scattered.reset();
  rt.computed = std::make_pair(image, t);
  if (result_) result_->pe_steps += order.size();
  return *std::max_element(latency.begin(), latency.end());
}

double Simulator::gather(std::size_t layer, std::size_t image, std::size_t t, double now_ns) {
  LayerRuntime& rt = runtime_.at(layer);
  if (rt.computed != std::make_optional(std::make_pair(image, t))) {
    throw SchedulingError(
        fmt::format("out-of-order gather: layer {} task ({}, {}) has not been computed", layer, image, t));
  }
  if (rt.partials.size() != rt.pe_index.size()) {
    throw SchedulingError(fmt::format("layer {}: {} of {} PEs reported", layer, rt.partials.size(),
                                      rt.pe_index.size()));
  }
  BitVector out = merge_outputs(layers_[layer], rt.partials);
  const std::size_t bits = out.size();
  const double duration = bus_time_ns(config_.bus, bits);
  gm_.write(layer + 1, image, t, std::move(out), now_ns + duration);
  rt.partials.clear();
  rt.computed.reset();
  if (result_) {
    result_->gather_bits += bits;
    result_->bus_beats += bus_beats(config_.bus, bits);
  }
  return duration;
}

void Simulator::prepare(std::size_t images, std::size_t timesteps, const SimOptions& options) {
  if (ran_) throw SchedulingError("a Simulator runs once; build a new one for another run");
  if (images == 0 || timesteps == 0) throw ArgumentError("run needs at least one image and one time-step");
  ran_ = true;
  options_ = options;
  gm_.configure(layers_.size() + 1, images, timesteps);
}

SimResult Simulator::run(std::size_t images, std::size_t timesteps, const SimOptions& options) {
  prepare(images, timesteps, options);
  SimResult r;
  result_ = &r;
  if (options.record_tasks) r.task_log.resize(layers_.size() * images * timesteps);
  if (options.mode == ScheduleMode::Serial) {
    run_serial(r, images, timesteps);
  } else {
    run_pipelined(r, images, timesteps);
  }
  result_ = nullptr;
  r.tasks = layers_.size() * images * timesteps;
  return r;
}

void Simulator::run_serial(SimResult& r, std::size_t images, std::size_t timesteps) {
  double now = 0.0;
  for (std::size_t n = 0; n < images; ++n) {
    for (std::size_t t = 0; t < timesteps; ++t) {
      for (std::size_t l = 0; l < layers_.size(); ++l) {
        TaskRecord rec{l, n, t};
        rec.scatter_start = now;
        now += scatter(l, n, t, now);
        rec.scatter_end = now;
        now += compute(l, n, t);
        rec.compute_end = now;
        rec.gather_start = now;
        now += gather(l, n, t, now);
        rec.gather_end = now;
        r.bus_busy_ns += (rec.scatter_end - rec.scatter_start) + (rec.gather_end - rec.gather_start);
        if (!r.task_log.empty()) r.task_log[(l * images + n) * timesteps + t] = rec;
      }
    }
  }
  r.makespan_ns = now;
}

void Simulator::run_pipelined(SimResult& r, std::size_t images, std::size_t timesteps) {
  const std::size_t L = layers_.size();
  const std::size_t total = images * timesteps;

  enum class Kind { BusDone, ComputeDone };
  struct Event {
    double time;
    std::uint64_t seq;
    Kind kind;
    bool gather;
    std::size_t layer, image, t;
  };
  auto later = [](const Event& a, const Event& b) { return std::tie(a.time, a.seq) > std::tie(b.time, b.seq); };
  std::priority_queue<Event, std::vector<Event>, decltype(later)> events(later);
  std::uint64_t seq = 0;

  struct Request {
    double ready;
    std::size_t image, t, layer;
    bool gather;
  };
  std::vector<Request> requests;
  std::vector<std::size_t> next(L, 0);
  std::vector<bool> busy(L, false);
  std::vector<TaskRecord> open(L);
  double bus_free = 0.0;
  double now = 0.0;

  auto try_start = [&](std::size_t l) {
    if (busy[l] || next[l] == total) return;
    const std::size_t n = next[l] / timesteps;
    const std::size_t t = next[l] % timesteps;
    if (l > 0 && !gm_.contains(l, n, t)) return;
    busy[l] = true;
    requests.push_back({now, n, t, l, false});
  };

  for (std::size_t l = 0; l < L; ++l) try_start(l);
  for (;;) {
    if (bus_free <= now && !requests.empty()) {
      auto best = std::min_element(requests.begin(), requests.end(), [](const Request& a, const Request& b) {
        return std::tie(a.ready, a.image, a.t, a.layer) < std::tie(b.ready, b.image, b.t, b.layer);
      });
      const Request q = *best;
      requests.erase(best);
      TaskRecord& rec = open[q.layer];
      double d;
      if (q.gather) {
        rec.gather_start = now;
        d = gather(q.layer, q.image, q.t, now);
      } else {
        rec = TaskRecord{q.layer, q.image, q.t};
        rec.scatter_start = now;
        d = scatter(q.layer, q.image, q.t, now);
      }
      r.bus_busy_ns += d;
      bus_free = now + d;
      events.push({bus_free, seq++, Kind::BusDone, q.gather, q.layer, q.image, q.t});
    }
    if (events.empty()) break;
    now = events.top().time;
    while (!events.empty() && events.top().time == now) {
      const Event e = events.top();
      events.pop();
      TaskRecord& rec = open[e.layer];
      if (e.kind == Kind::ComputeDone) {
        rec.compute_end = now;
        requests.push_back({now, e.image, e.t, e.layer, true});
      } else if (!e.gather) {
        rec.scatter_end = now;
        events.push({now + compute(e.layer, e.image, e.t), seq++, Kind::ComputeDone, false, e.layer, e.image, e.t});
      } else {
        rec.gather_end = now;
        if (!r.task_log.empty()) r.task_log[(e.layer * images + e.image) * timesteps + e.t] = rec;
        busy[e.layer] = false;
        ++next[e.layer];
        try_start(e.layer);
        if (e.layer + 1 < L) try_start(e.layer + 1);
      }
    }
  }
  for (std::size_t l = 0; l < L; ++l) {
    if (next[l] != total) {
      throw SchedulingError(fmt::format("schedule stalled: layer {} finished {} of {} tasks", l, next[l], total));
    }
  }
  r.makespan_ns = now;
}

}  // namespace remsim
