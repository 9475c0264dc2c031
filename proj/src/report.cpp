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

#include "remsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "remsim/encoder_io.hpp"
#include "remsim/error.hpp"

namespace remsim {

EnergyBreakdown& EnergyBreakdown::operator+=(const EnergyBreakdown& o) noexcept {
  ram_dynamic_pj += o.ram_dynamic_pj;
  ram_leakage_pj += o.ram_leakage_pj;
  rom_dynamic_pj += o.rom_dynamic_pj;
  rom_leakage_pj += o.rom_leakage_pj;
  core_ops_pj += o.core_ops_pj;
  control_pj += o.control_pj;
  gm_pj += o.gm_pj;
  core_leakage_pj += o.core_leakage_pj;
  return *this;
}

namespace {

Dataset load_dataset(const ExperimentConfig& cfg) {
  Dataset ds;
  switch (cfg.dataset) {
    case DatasetKind::Synthetic: return synthetic_dataset(cfg.network.input, cfg.images, cfg.rate.seed);
    case DatasetKind::Mnist: ds = load_mnist(cfg.mnist_images, cfg.mnist_labels); break;
    case DatasetKind::Cifar10: ds = load_cifar10(cfg.cifar_batch); break;
  }
  if (!(ds.shape == cfg.network.input)) {
    throw ConfigError(fmt::format("dataset images are {}x{}x{} but the network expects {}x{}x{}", ds.shape.h,
                                  ds.shape.w, ds.shape.c, cfg.network.input.h, cfg.network.input.w,
                                  cfg.network.input.c));
  }
  if (ds.size() < cfg.images) {
    throw ConfigError(fmt::format("images = {} but the dataset holds {}", cfg.images, ds.size()));
  }
  return ds;
}

double pe_area(const ExperimentConfig& cfg, TechKind tech) {
  return array_area(cfg.profile(tech), cfg.sim.memory.ram_bytes, cfg.sim.memory.rom_bytes) + cfg.core.area_um2;
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

RunStats run_once(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset ds = load_dataset(cfg);
  Simulator sim(cfg.network, cfg.sim_config());
  const RateCodeParams rate = cfg.rate;
  sim.set_input([&ds, rate](std::size_t image, std::size_t t) { return encode_step(ds.image(image), rate, image, t); });

  RunStats r;
  r.name = cfg.name;
  r.tech = cfg.tech;
  r.phase = cfg.sim.phase;
  r.fp = cfg.rate.fp;
  r.images = cfg.images;
  r.timesteps = cfg.rate.timesteps;
  r.layers = sim.layers().size();
  r.sim = sim.run(cfg.images, cfg.rate.timesteps, cfg.options);

  const double makespan = r.sim.makespan_ns;
  for (const auto& pe : sim.pes()) {
    PeRow row;
    row.pe_id = pe->config().pe_id;
    row.layer = pe->config().layer_tag;
    row.kernel_begin = pe->config().kernel_begin;
    row.kernel_end = pe->config().kernel_end;
    row.ram = pe->ram_counters();
    row.rom = pe->rom_counters();
    row.stats = pe->stats();
    row.ram_words_used = pe->ram_words_used();

    const CostBreakdown main = access_cost(pe->ram_profile(), row.ram);
    const CostBreakdown dedicated =
        pe->embedded_rom() ? CostBreakdown{} : access_cost(pe->rom_profile(), row.rom);
    EnergyBreakdown& e = row.energy;
    e.ram_dynamic_pj = main.ram_energy_pj + dedicated.ram_energy_pj;
    e.rom_dynamic_pj = main.rom_energy_pj + dedicated.rom_energy_pj;
    e.ram_leakage_pj = pe->ram_leakage_mw() * makespan;
    e.rom_leakage_pj = pe->rom_leakage_mw() * makespan;
    e.core_ops_pj = static_cast<double>(row.stats.core_ops) * cfg.core.op_energy_pj;
    e.control_pj = static_cast<double>(row.stats.steps) * cfg.core.control_energy_pj;
    e.core_leakage_pj = cfg.core.leakage_mw * makespan;

    r.ram += row.ram;
    r.rom += row.rom;
    r.core_ops += row.stats.core_ops;
    r.synapse_reads += row.stats.synapse_weight_reads;
    r.neuron_updates += row.stats.neuron_updates;
    r.plasticity_updates += row.stats.plasticity_updates;
    r.input_spikes += row.stats.input_spikes;
    r.output_spikes += row.stats.output_spikes;
    r.gating_clamps += row.stats.gating_clamps;
    r.energy += e;
    r.pes.push_back(std::move(row));
  }
  r.energy.gm_pj = static_cast<double>(r.sim.bus_beats) * cfg.sim.bus.gm_word_energy_pj;
  r.pe_area_um2 = pe_area(cfg, cfg.tech);
  r.total_area_um2 = r.pe_area_um2 * static_cast<double>(r.pes.size());

  const LayerSpec& last = sim.layers().back();
  const Shape3 out = last.out_shape();
  const double forever = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < cfg.images; ++n) {
    std::vector<std::uint64_t> counts(out.c, 0);
    for (std::size_t t = 0; t < cfg.rate.timesteps; ++t) {
      const BitVector& bits = sim.memory().read(r.layers, n, t, forever);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.get(i)) ++counts[i % out.c];
      }
    }
    r.predictions.push_back(static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin()));
    if (n < ds.labels.size()) r.labels.push_back(ds.labels[n]);
  }
  return r;
}

ExperimentConfig baseline_config(const ExperimentConfig& cfg) {
  ExperimentConfig b = cfg;
  if (cfg.baseline) {
    b.name = cfg.baseline->name;
    if (cfg.baseline->tech) b.tech = *cfg.baseline->tech;
    if (cfg.baseline->fp) b.rate.fp = *cfg.baseline->fp;
    if (cfg.baseline->phase) b.sim.phase = *cfg.baseline->phase;
  }
  b.baseline.reset();
  return b;
}

RunStats run_experiment(const ExperimentConfig& cfg) {
  RunStats r = run_once(cfg);
  if (cfg.baseline) {
    const RunStats base = run_once(baseline_config(cfg));
    if (!(base.energy.total_pj() > 0.0)) throw ArgumentError("baseline run has zero total energy");
    r.baseline_name = cfg.baseline->name;
    r.baseline_total_pj = base.energy.total_pj();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Output formats

namespace {

constexpr const char* kCsvColumns[] = {
    "scope",          "pe",           "layer",           "kernel_begin",     "kernel_end",
    "ram_reads",      "ram_writes",   "rom_reads",       "buffered_row_ops", "rom_micro_reads",
    "rom_micro_writes", "core_ops",   "steps",           "input_spikes",     "synapse_reads",
    "neuron_updates", "plasticity_updates", "output_spikes", "ram_pj",       "rom_pj",
    "rest_pj",        "leakage_pj",   "total_pj",        "makespan_ns",      "bus_beats",
};

struct CsvCounters {
  MemCounters mem;
  std::uint64_t core_ops, steps, input_spikes, synapse_reads, neuron_updates, plasticity_updates, output_spikes;
};

std::string csv_line(std::string_view scope, std::string_view pe, std::string_view layer, std::string_view kb,
                     std::string_view ke, const CsvCounters& c, const EnergyBreakdown& e, std::string_view makespan,
                     std::string_view beats) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", scope, pe, layer,
                     kb, ke, c.mem.ram_reads, c.mem.ram_writes, c.mem.rom_reads, c.mem.buffered_row_ops,
                     c.mem.rom_micro_reads, c.mem.rom_micro_writes, c.core_ops, c.steps, c.input_spikes,
                     c.synapse_reads, c.neuron_updates, c.plasticity_updates, c.output_spikes, num(e.ram_pj()),
                     num(e.rom_pj()), num(e.rest_pj()), num(e.leakage_pj()), num(e.total_pj()), makespan, beats);
}

}  // namespace

std::span<const char* const> csv_columns() { return kCsvColumns; }

std::string stats_csv(const RunStats& s) {
  std::string out;
  for (std::size_t i = 0; i < std::size(kCsvColumns); ++i) {
    out += kCsvColumns[i];
    out += i + 1 < std::size(kCsvColumns) ? ',' : '\n';
  }
  std::uint64_t steps = 0;
  for (const PeRow& p : s.pes) {
    const CsvCounters c{p.ram + p.rom,
                        p.stats.core_ops,
                        p.stats.steps,
                        p.stats.input_spikes,
                        p.stats.synapse_weight_reads,
                        p.stats.neuron_updates,
                        p.stats.plasticity_updates,
                        p.stats.output_spikes};
    steps += p.stats.steps;
    out += csv_line("pe", std::to_string(p.pe_id), std::to_string(p.layer), std::to_string(p.kernel_begin),
                    std::to_string(p.kernel_end), c, p.energy, "", "");
  }
  const CsvCounters total{s.ram + s.rom,     s.core_ops,           steps,          s.input_spikes,
                          s.synapse_reads,  s.neuron_updates,     s.plasticity_updates, s.output_spikes};
  out += csv_line("total", "", "", "", "", total, s.energy, num(s.sim.makespan_ns), std::to_string(s.sim.bus_beats));
  return out;
}

std::string stats_json(const RunStats& s) {
  using nlohmann::ordered_json;
  auto counters = [](const MemCounters& m) {
    return ordered_json{{"ram_reads", m.ram_reads},
                        {"ram_writes", m.ram_writes},
                        {"rom_reads", m.rom_reads},
                        {"buffered_row_ops", m.buffered_row_ops},
                        {"rom_micro_reads", m.rom_micro_reads},
                        {"rom_micro_writes", m.rom_micro_writes}};
  };
  auto energy = [&](const EnergyBreakdown& e) {
    return ordered_json{{"ram_pj", e.ram_pj()},
                        {"rom_pj", e.rom_pj()},
                        {"rest_pj", e.rest_pj()},
                        {"leakage_pj", e.leakage_pj()},
                        {"total_pj", e.total_pj()},
                        {"ram_dynamic_pj", e.ram_dynamic_pj},
                        {"ram_leakage_pj", e.ram_leakage_pj},
                        {"rom_dynamic_pj", e.rom_dynamic_pj},
                        {"rom_leakage_pj", e.rom_leakage_pj},
                        {"core_ops_pj", e.core_ops_pj},
                        {"control_pj", e.control_pj},
                        {"gm_pj", e.gm_pj},
                        {"core_leakage_pj", e.core_leakage_pj}};
  };
  ordered_json j;
  j["name"] = s.name;
  j["tech"] = std::string(to_string(s.tech));
  j["phase"] = std::string(to_string(s.phase));
  j["fp"] = s.fp;
  j["images"] = s.images;
  j["timesteps"] = s.timesteps;
  j["layers"] = s.layers;
  j["pes"] = s.pes.size();
  j["makespan_ns"] = s.sim.makespan_ns;
  j["bus"] = {{"beats", s.sim.bus_beats},
              {"scatter_bits", s.sim.scatter_bits},
              {"gather_bits", s.sim.gather_bits},
              {"busy_ns", s.sim.bus_busy_ns}};
  j["counters"] = counters(s.ram + s.rom);
  j["counters"]["core_ops"] = s.core_ops;
  j["counters"]["synapse_reads"] = s.synapse_reads;
  j["counters"]["neuron_updates"] = s.neuron_updates;
  j["counters"]["plasticity_updates"] = s.plasticity_updates;
  j["counters"]["input_spikes"] = s.input_spikes;
  j["counters"]["output_spikes"] = s.output_spikes;
  j["counters"]["gating_clamps"] = s.gating_clamps;
  j["energy"] = energy(s.energy);
  if (s.baseline_name) {
    j["normalized"] = {{"baseline", *s.baseline_name},
                       {"baseline_total_pj", s.baseline_total_pj},
                       {"ram", s.normalized(s.energy.ram_pj())},
                       {"rom", s.normalized(s.energy.rom_pj())},
                       {"rest", s.normalized(s.energy.rest_pj())},
                       {"total", s.normalized(s.energy.total_pj())}};
  }
  j["area_um2"] = {{"per_pe", s.pe_area_um2}, {"total", s.total_area_um2}};
  j["predictions"] = s.predictions;
  ordered_json pes = ordered_json::array();
  for (const PeRow& p : s.pes) {
    ordered_json row{{"pe", p.pe_id}, {"layer", p.layer}, {"kernels", {p.kernel_begin, p.kernel_end}}};
    row["counters"] = counters(p.ram + p.rom);
    row["counters"]["core_ops"] = p.stats.core_ops;
    row["energy"] = energy(p.energy);
    pes.push_back(std::move(row));
  }
  j["per_pe"] = std::move(pes);
  return j.dump(2) + "\n";
}

std::string report_text(const RunStats& s, const ExperimentConfig& cfg) {
  std::string out;
  auto line = [&](std::string_view k, const auto& v) { out += fmt::format("  {:<22} {}\n", k, v); };
  out += fmt::format("run {}\n", s.name);
  line("network", format_network(cfg.network));
  line("technology", to_string(s.tech));
  line("phase", to_string(s.phase));
  line("fp", s.fp);
  line("images x timesteps", fmt::format("{} x {}", s.images, s.timesteps));
  line("layers / PEs", fmt::format("{} / {}", s.layers, s.pes.size()));
  line("schedule", to_string(cfg.options.mode));

  out += "\ncounters\n";
  const MemCounters m = s.ram + s.rom;
  line("ram_reads", m.ram_reads);
  line("ram_writes", m.ram_writes);
  line("rom_reads", m.rom_reads);
  line("buffered_row_ops", m.buffered_row_ops);
  line("rom micro-ops (r/w)", fmt::format("{} / {}", m.rom_micro_reads, m.rom_micro_writes));
  line("core_ops", s.core_ops);
  line("synapse_reads", s.synapse_reads);
  line("neuron_updates", s.neuron_updates);
  line("plasticity_updates", s.plasticity_updates);
  line("input / output spikes", fmt::format("{} / {}", s.input_spikes, s.output_spikes));
  if (s.gating_clamps > 0) line("gating_clamps", s.gating_clamps);

  out += "\ntiming\n";
  line("makespan_ns", num(s.sim.makespan_ns));
  line("bus_busy_ns", num(s.sim.bus_busy_ns));
  line("bus_beats", s.sim.bus_beats);

  out += "\nenergy (pJ)\n";
  const EnergyBreakdown& e = s.energy;
  line("RAM", fmt::format("{:.6g}  (access {:.6g}, leakage {:.6g})", e.ram_pj(), e.ram_dynamic_pj, e.ram_leakage_pj));
  line("ROM", fmt::format("{:.6g}  (access {:.6g}, leakage {:.6g})", e.rom_pj(), e.rom_dynamic_pj, e.rom_leakage_pj));
  line("Rest", fmt::format("{:.6g}  (ops {:.6g}, control {:.6g}, global memory {:.6g}, leakage {:.6g})", e.rest_pj(),
                           e.core_ops_pj, e.control_pj, e.gm_pj, e.core_leakage_pj));
  line("total", fmt::format("{:.6g}", e.total_pj()));
  if (s.baseline_name) {
    out += fmt::format("\nnormalized to '{}' ({:.6g} pJ)\n", *s.baseline_name, s.baseline_total_pj);
    line("RAM", fmt::format("{:.6f}", s.normalized(e.ram_pj())));
    line("ROM", fmt::format("{:.6f}", s.normalized(e.rom_pj())));
    line("Rest", fmt::format("{:.6f}", s.normalized(e.rest_pj())));
    line("total", fmt::format("{:.6f}", s.normalized(e.total_pj())));
  }

  out += "\narea (um^2)\n";
  line("per PE", fmt::format("{:.6g}", s.pe_area_um2));
  line("total", fmt::format("{:.6g}", s.total_area_um2));
  out += "  R-SRAM ROM reads are charged as 2 RAM reads + 3 RAM writes at full row cost\n";

  if (!s.labels.empty()) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
      hits += static_cast<int>(s.predictions[i]) == s.labels[i];
    }
    out += "\nclassification (untrained readout)\n";
    line("argmax matches", fmt::format("{} / {}", hits, s.labels.size()));
  }
  out += "\nconfiguration\n";
  out += format_config(cfg);
  return out;
}

// ---------------------------------------------------------------------------
// Area

const AreaRow& AreaReport::row(TechKind tech) const {
  for (const AreaRow& r : rows) {
    if (r.tech == tech) return r;
  }
  throw ArgumentError(fmt::format("no area row for {}", to_string(tech)));
}

AreaReport area_report(const ExperimentConfig& cfg) {
  AreaReport r;
  r.ram_bytes = cfg.sim.memory.ram_bytes;
  r.rom_bytes = cfg.sim.memory.rom_bytes;
  MappingParams mp;
  mp.ram_bytes = cfg.sim.memory.ram_bytes;
  mp.reserve_bytes = cfg.sim.memory.reserve_bytes;
  mp.max_kernels_per_pe = cfg.sim.max_kernels_per_pe;
  for (const PeAssignment& a : assign_pes(normalize_network(cfg.network), mp)) r.pes += a.slices.size();
  for (TechKind t : {TechKind::Sram, TechKind::RSram, TechKind::SttMram, TechKind::RMram}) {
    r.rows.push_back({t, array_area(cfg.profile(t), r.ram_bytes, r.rom_bytes), cfg.core.area_um2});
  }
  r.sram_over_rsram = r.row(TechKind::Sram).pe_um2() / r.row(TechKind::RSram).pe_um2();
  r.stt_over_rmram = r.row(TechKind::SttMram).pe_um2() / r.row(TechKind::RMram).pe_um2();
  return r;
}

std::string area_text(const AreaReport& r) {
  std::string out = fmt::format("iso-storage area, RAM {} B + ROM {} B per PE, {} PEs\n", r.ram_bytes, r.rom_bytes,
                                r.pes);
  out += fmt::format("  {:<6} {:>14} {:>12} {:>14} {:>16}\n", "tech", "array_um2", "core_um2", "pe_um2", "total_um2");
  for (const AreaRow& row : r.rows) {
    out += fmt::format("  {:<6} {:>14.2f} {:>12.2f} {:>14.2f} {:>16.2f}\n", to_string(row.tech), row.array_um2,
                       row.core_um2, row.pe_um2(), row.pe_um2() * static_cast<double>(r.pes));
  }
  out += fmt::format("  SRAM / R-SRAM per-PE ratio  {:.4f}\n", r.sram_over_rsram);
  out += fmt::format("  STT / R-MRAM per-PE ratio   {:.4f}\n", r.stt_over_rmram);
  return out;
}

// ---------------------------------------------------------------------------
// Iso-area performance

const PerfRow& PerfReport::row(TechKind tech) const {
  for (const PerfRow& r : rows) {
    if (r.tech == tech) return r;
  }
  throw ArgumentError(fmt::format("no performance row for {}", to_string(tech)));
}

double balanced_stage_time(std::span<const double> work, std::span<const double> cap, double budget) {
  if (work.size() != cap.size() || work.empty()) throw ArgumentError("work and cap must be non-empty and equal length");
  if (!(budget > 0.0)) throw ArgumentError("PE budget must be > 0");
  double floor_t = 0.0;  // every layer at its cap
  double cap_sum = 0.0;
  bool unbounded = false;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!(work[i] >= 0.0) || !(cap[i] > 0.0)) throw ArgumentError("work must be >= 0 and caps > 0");
    if (std::isinf(cap[i])) {
      unbounded = true;
    } else {
      floor_t = std::max(floor_t, work[i] / cap[i]);
      cap_sum += cap[i];
    }
  }
  if (!unbounded && cap_sum <= budget) return floor_t;
  const double total = std::accumulate(work.begin(), work.end(), 0.0);
  bool all_unbounded = true;
  for (double c : cap) all_unbounded = all_unbounded && std::isinf(c);
  if (all_unbounded) return total / budget;

  auto used = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) s += std::min(cap[i], work[i] / t);
    return s;
  };
  double hi = std::max(total / budget, floor_t);
  while (used(hi) > budget) hi *= 2.0;
  double lo = floor_t > 0.0 ? floor_t : hi * 1e-12;
  for (int i = 0; i < 200 && hi - lo > hi * 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (used(mid) > budget ? lo : hi) = mid;
  }
  return hi;
}

PerfReport perf_report(const ExperimentConfig& cfg) {
  PerfReport r;
  r.unlimited = cfg.perf.unlimited_parallelism;
  const std::vector<LayerSpec> layers = normalize_network(cfg.network);
  MappingParams mp;
  mp.ram_bytes = cfg.sim.memory.ram_bytes;
  mp.reserve_bytes = cfg.sim.memory.reserve_bytes;
  mp.max_kernels_per_pe = cfg.sim.max_kernels_per_pe;
  const std::vector<PeAssignment> mapping = assign_pes(layers, mp);

  std::vector<double> work;
  std::vector<double> cap;
  std::size_t min_total = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec& s = layers[l];
    const ModelContract c = contract(s.model);
    LayerWork w;
    w.layer = l;
    w.work = static_cast<double>(s.neuron_count()) * (c.ram_reads + c.ram_writes + c.rom_reads + c.core_ops) +
             static_cast<double>(s.out_maps * s.window_count() * s.positions());
    w.max_pes = r.unlimited ? std::numeric_limits<double>::infinity() : static_cast<double>(s.out_maps);
    w.min_pes = mapping[l].slices.size();
    min_total += w.min_pes;
    work.push_back(w.work);
    cap.push_back(w.max_pes);
    r.layers.push_back(w);
  }

  r.chip_area_um2 = cfg.perf.chip_area_um2 > 0.0 ? cfg.perf.chip_area_um2 : 64.0 * pe_area(cfg, TechKind::Sram);
  for (TechKind t : {TechKind::Sram, TechKind::RSram, TechKind::SttMram, TechKind::RMram}) {
    PerfRow row;
    row.tech = t;
    row.pe_area_um2 = pe_area(cfg, t);
    row.pe_budget = r.chip_area_um2 / row.pe_area_um2;
    row.stage_time = balanced_stage_time(work, cap, row.pe_budget);
    row.throughput = 1.0 / row.stage_time;
    row.fits = row.pe_budget >= static_cast<double>(min_total);
    r.rows.push_back(row);
  }
  auto relate = [&](TechKind embedded, TechKind plain) {
    PerfRow& e = r.rows[static_cast<std::size_t>(embedded)];
    const PerfRow& p = r.rows[static_cast<std::size_t>(plain)];
    e.speedup = e.throughput / p.throughput;
    e.area_ratio = p.pe_area_um2 / e.pe_area_um2;
  };
  relate(TechKind::RSram, TechKind::Sram);
  relate(TechKind::RMram, TechKind::SttMram);
  return r;
}

std::string perf_text(const PerfReport& r) {
  std::string out = fmt::format("iso-area projection, chip area {:.1f} um^2, layer parallelism {}\n", r.chip_area_um2,
                                r.unlimited ? "unlimited" : "capped at output maps");
  for (const LayerWork& w : r.layers) {
    out += fmt::format("  layer {}: work {:.0f}, min PEs {}, cap {}\n", w.layer, w.work, w.min_pes,
                       std::isinf(w.max_pes) ? std::string("none") : fmt::format("{:.0f}", w.max_pes));
  }
  out += fmt::format("  {:<6} {:>12} {:>10} {:>14} {:>9} {:>11} {}\n", "tech", "pe_um2", "PEs", "stage_time", "speedup",
                     "area_ratio", "fits");
  for (const PerfRow& row : r.rows) {
    out += fmt::format("  {:<6} {:>12.2f} {:>10.2f} {:>14.4f} {:>9.4f} {:>11.4f} {}\n", to_string(row.tech),
                       row.pe_area_um2, row.pe_budget, row.stage_time, row.speedup, row.area_ratio,
                       row.fits ? "yes" : "no");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

std::vector<SweepPoint> sweep(const ExperimentConfig& cfg, std::span<const double> fps,
                              std::span<const TechKind> techs) {
  std::vector<SweepPoint> out;
  for (TechKind t : techs) {
    for (double fp : fps) {
      ExperimentConfig c = cfg;
      c.tech = t;
      c.rate.fp = fp;
      c.name = fmt::format("{}-{}-fp{}", cfg.name, to_string(t), fp);
      out.push_back({t, fp, run_experiment(c)});
    }
  }
  return out;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out =
      "tech,fp,phase,ram_reads,ram_writes,rom_reads,core_ops,ram_pj,rom_pj,rest_pj,leakage_pj,total_pj,"
      "normalized_total,makespan_ns\n";
  for (const SweepPoint& p : points) {
    const RunStats& s = p.stats;
    const MemCounters m = s.ram + s.rom;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(p.tech), num(p.fp),
                       to_string(s.phase), m.ram_reads, m.ram_writes, m.rom_reads, s.core_ops, num(s.energy.ram_pj()),
                       num(s.energy.rom_pj()), num(s.energy.rest_pj()), num(s.energy.leakage_pj()),
                       num(s.energy.total_pj()), num(s.normalized(s.energy.total_pj())), num(s.sim.makespan_ns));
  }
  return out;
}

}  // namespace remsim
