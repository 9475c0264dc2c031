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

#include "remsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "remsim/error.hpp"

namespace remsim {

std::string_view to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::Synthetic: return "synthetic";
    case DatasetKind::Mnist: return "mnist";
    case DatasetKind::Cifar10: return "cifar10";
  }
  return "?";
}

namespace {

constexpr TechKind kAllTech[] = {TechKind::Sram, TechKind::RSram, TechKind::SttMram, TechKind::RMram, TechKind::Rom};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string n(s);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  return n;
}

// Value being parsed, for error messages.
struct Item {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;

  [[noreturn]] void fail(std::string_view why) const {
    throw ConfigError(fmt::format("line {}: [{}] {} = '{}': {}", line, section, key, value, why));
  }

  double real() const {
    double v = 0.0;
    const char* end = value.data() + value.size();
    const auto [p, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v)) fail("expected a number");
    return v;
  }
  double real_at_least(double lo) const {
    const double v = real();
    if (v < lo) fail(fmt::format("must be >= {}", lo));
    return v;
  }
  double positive() const {
    const double v = real();
    if (!(v > 0.0)) fail("must be > 0");
    return v;
  }
  std::uint64_t u64() const {
    std::uint64_t v = 0;
    const char* end = value.data() + value.size();
    const auto [p, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || p != end) fail("expected a non-negative integer");
    return v;
  }
  std::size_t count(std::size_t lo = 0) const {
    const std::uint64_t v = u64();
    if (v < lo) fail(fmt::format("must be >= {}", lo));
    return static_cast<std::size_t>(v);
  }
  int integer(int lo, int hi) const {
    const std::uint64_t v = u64();
    if (v < static_cast<std::uint64_t>(lo) || v > static_cast<std::uint64_t>(hi)) {
      fail(fmt::format("must lie in [{}, {}]", lo, hi));
    }
    return static_cast<int>(v);
  }
  template <class F>
  auto parsed(F&& parse) const {
    try {
      return parse(value);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
};

using Handler = std::function<void(ExperimentConfig&, const Item&)>;
using Table = std::map<std::string, Handler, std::less<>>;

Table experiment_keys() {
  return {
      {"name", [](ExperimentConfig& c, const Item& it) { c.name = it.value; }},
      {"network", [](ExperimentConfig& c, const Item& it) { c.network_source = it.value; }},
      {"dataset",
       [](ExperimentConfig& c, const Item& it) {
         const std::string v = lower(it.value);
         if (v == "synthetic") {
           c.dataset = DatasetKind::Synthetic;
         } else if (v == "mnist") {
           c.dataset = DatasetKind::Mnist;
         } else if (v == "cifar10" || v == "cifar") {
           c.dataset = DatasetKind::Cifar10;
         } else {
           it.fail("expected synthetic, mnist or cifar10");
         }
       }},
      {"mnist_images", [](ExperimentConfig& c, const Item& it) { c.mnist_images = it.value; }},
      {"mnist_labels", [](ExperimentConfig& c, const Item& it) { c.mnist_labels = it.value; }},
      {"cifar_batch", [](ExperimentConfig& c, const Item& it) { c.cifar_batch = it.value; }},
      {"images", [](ExperimentConfig& c, const Item& it) { c.images = it.count(1); }},
      {"timesteps", [](ExperimentConfig& c, const Item& it) { c.rate.timesteps = it.count(1); }},
      {"fp",
       [](ExperimentConfig& c, const Item& it) {
         const double v = it.real();
         if (!(v > 0.0 && v <= 1.0)) it.fail("out of range (0, 1]");
         c.rate.fp = v;
       }},
      {"seed", [](ExperimentConfig& c, const Item& it) { c.rate.seed = it.u64(); }},
      {"phase", [](ExperimentConfig& c, const Item& it) { c.sim.phase = it.parsed(parse_phase); }},
      {"tech", [](ExperimentConfig& c, const Item& it) { c.tech = it.parsed(parse_tech); }},
      {"model", [](ExperimentConfig& c, const Item& it) { c.default_model = it.parsed(parse_model); }},
  };
}

Table memory_keys() {
  return {
      {"ram_bytes", [](ExperimentConfig& c, const Item& it) { c.sim.memory.ram_bytes = it.count(4); }},
      {"rom_bytes", [](ExperimentConfig& c, const Item& it) { c.sim.memory.rom_bytes = it.count(); }},
      {"row_words", [](ExperimentConfig& c, const Item& it) { c.sim.memory.row_words = it.count(1); }},
      {"reserve_bytes", [](ExperimentConfig& c, const Item& it) { c.sim.memory.reserve_bytes = it.count(); }},
      {"max_kernels_per_pe", [](ExperimentConfig& c, const Item& it) { c.sim.max_kernels_per_pe = it.count(); }},
  };
}

using TechHandler = std::function<void(TechnologyProfile&, const Item&)>;

std::map<std::string, TechHandler, std::less<>> tech_keys() {
  return {
      {"ram_read_energy_pj", [](TechnologyProfile& p, const Item& it) { p.ram_read.energy_pj = it.real_at_least(0); }},
      {"ram_read_latency_ns", [](TechnologyProfile& p, const Item& it) { p.ram_read.latency_ns = it.real_at_least(0); }},
      {"ram_write_energy_pj", [](TechnologyProfile& p, const Item& it) { p.ram_write.energy_pj = it.real_at_least(0); }},
      {"ram_write_latency_ns",
       [](TechnologyProfile& p, const Item& it) { p.ram_write.latency_ns = it.real_at_least(0); }},
      {"rom_sense_energy_pj", [](TechnologyProfile& p, const Item& it) { p.rom_sense.energy_pj = it.real_at_least(0); }},
      {"rom_sense_latency_ns",
       [](TechnologyProfile& p, const Item& it) { p.rom_sense.latency_ns = it.real_at_least(0); }},
      {"leakage_mw_per_kib", [](TechnologyProfile& p, const Item& it) { p.leakage_mw_per_kib = it.real_at_least(0); }},
      {"area_per_byte_um2", [](TechnologyProfile& p, const Item& it) { p.area_per_byte_um2 = it.real_at_least(0); }},
      {"rom_overhead_factor", [](TechnologyProfile& p, const Item& it) { p.rom_overhead_factor = it.real_at_least(1); }},
      {"peripheral_overhead_factor",
       [](TechnologyProfile& p, const Item& it) { p.peripheral_overhead_factor = it.real_at_least(1); }},
      {"rom_power_overhead_factor",
       [](TechnologyProfile& p, const Item& it) { p.rom_power_overhead_factor = it.real_at_least(1); }},
  };
}

Table neuron_keys() {
  auto real = [](double NeuronParams::*field) {
    return [field](ExperimentConfig& c, const Item& it) { c.sim.neuron.*field = it.real(); };
  };
  auto lif = [](double LifParams::*field) {
    return [field](ExperimentConfig& c, const Item& it) { c.sim.neuron.lif.*field = it.real(); };
  };
  auto izh = [](double IzhParams::*field) {
    return [field](ExperimentConfig& c, const Item& it) { c.sim.neuron.izh.*field = it.real(); };
  };
  auto hh = [](double HhParams::*field) {
    return [field](ExperimentConfig& c, const Item& it) { c.sim.neuron.hh.*field = it.real(); };
  };
  return {
      {"dt_ms", real(&NeuronParams::dt)},
      {"hh_dt_ms", real(&NeuronParams::hh_dt)},
      {"refractory_steps",
       [](ExperimentConfig& c, const Item& it) { c.sim.neuron.refractory_steps = it.integer(0, 65535); }},
      {"q_frac", [](ExperimentConfig& c, const Item& it) { c.sim.neuron.q_frac = it.integer(8, 24); }},
      {"lif_tau_m", lif(&LifParams::tau_m)},
      {"lif_v_rest", lif(&LifParams::v_rest)},
      {"lif_v_reset", lif(&LifParams::v_reset)},
      {"lif_v_th", lif(&LifParams::v_th)},
      {"lif_r_m", lif(&LifParams::r_m)},
      {"izh_a", izh(&IzhParams::a)},
      {"izh_b", izh(&IzhParams::b)},
      {"izh_c", izh(&IzhParams::c)},
      {"izh_d", izh(&IzhParams::d)},
      {"izh_v_th", izh(&IzhParams::v_th)},
      {"hh_c_m", hh(&HhParams::c_m)},
      {"hh_g_na", hh(&HhParams::g_na)},
      {"hh_g_k", hh(&HhParams::g_k)},
      {"hh_g_l", hh(&HhParams::g_l)},
      {"hh_e_na", hh(&HhParams::e_na)},
      {"hh_e_k", hh(&HhParams::e_k)},
      {"hh_e_l", hh(&HhParams::e_l)},
      {"hh_v_th", hh(&HhParams::v_th)},
      {"hh_hysteresis", hh(&HhParams::hysteresis)},
  };
}

Table stdp_keys() {
  auto real = [](double StdpParams::*field) {
    return [field](ExperimentConfig& c, const Item& it) { c.sim.stdp.*field = it.real(); };
  };
  return {
      {"eta", real(&StdpParams::eta)},
      {"tau_ms", real(&StdpParams::tau)},
      {"w_min", real(&StdpParams::w_min)},
      {"w_max", real(&StdpParams::w_max)},
      {"window_taus", real(&StdpParams::window_taus)},
  };
}

Table lut_keys() {
  return {
      {"exp_k", [](ExperimentConfig& c, const Item& it) { c.sim.neuron.exp_k = it.integer(0, 12); }},
      {"hh_rows", [](ExperimentConfig& c, const Item& it) { c.sim.neuron.hh.lut_rows = it.count(2); }},
      {"hh_v_min", [](ExperimentConfig& c, const Item& it) { c.sim.neuron.hh.v_min = it.real(); }},
      {"hh_v_max", [](ExperimentConfig& c, const Item& it) { c.sim.neuron.hh.v_max = it.real(); }},
  };
}

Table core_keys() {
  return {
      {"cycle_ns", [](ExperimentConfig& c, const Item& it) { c.sim.core.cycle_ns = it.real_at_least(0); }},
      {"cycles_per_op", [](ExperimentConfig& c, const Item& it) { c.sim.core.cycles_per_op = it.real_at_least(0); }},
      {"op_energy_pj", [](ExperimentConfig& c, const Item& it) { c.core.op_energy_pj = it.real_at_least(0); }},
      {"control_energy_pj",
       [](ExperimentConfig& c, const Item& it) { c.core.control_energy_pj = it.real_at_least(0); }},
      {"leakage_mw", [](ExperimentConfig& c, const Item& it) { c.core.leakage_mw = it.real_at_least(0); }},
      {"area_um2", [](ExperimentConfig& c, const Item& it) { c.core.area_um2 = it.real_at_least(0); }},
  };
}

Table bus_keys() {
  return {
      {"width_bits", [](ExperimentConfig& c, const Item& it) { c.sim.bus.width_bits = it.count(1); }},
      {"cycle_ns", [](ExperimentConfig& c, const Item& it) { c.sim.bus.cycle_ns = it.positive(); }},
      {"gm_energy_pj", [](ExperimentConfig& c, const Item& it) { c.sim.bus.gm_word_energy_pj = it.real_at_least(0); }},
  };
}

Table sim_keys() {
  return {
      {"mode", [](ExperimentConfig& c, const Item& it) { c.options.mode = it.parsed(parse_schedule_mode); }},
      {"threads",
       [](ExperimentConfig& c, const Item& it) { c.options.threads = static_cast<unsigned>(it.integer(1, 1024)); }},
      {"pe_order", [](ExperimentConfig& c, const Item& it) { c.options.pe_order = it.parsed(parse_pe_order); }},
      {"order_seed", [](ExperimentConfig& c, const Item& it) { c.options.order_seed = it.u64(); }},
      {"weight_min", [](ExperimentConfig& c, const Item& it) { c.sim.weight_min = it.real(); }},
      {"weight_max", [](ExperimentConfig& c, const Item& it) { c.sim.weight_max = it.real(); }},
      {"weight_seed", [](ExperimentConfig& c, const Item& it) { c.sim.weight_seed = it.u64(); }},
  };
}

Table perf_keys() {
  return {
      {"chip_area_um2", [](ExperimentConfig& c, const Item& it) { c.perf.chip_area_um2 = it.real_at_least(0); }},
      {"parallelism",
       [](ExperimentConfig& c, const Item& it) {
         const std::string v = lower(it.value);
         if (v == "unlimited") {
           c.perf.unlimited_parallelism = true;
         } else if (v == "capped") {
           c.perf.unlimited_parallelism = false;
         } else {
           it.fail("expected unlimited or capped");
         }
       }},
  };
}

Table baseline_keys() {
  auto spec = [](ExperimentConfig& c) -> BaselineSpec& {
    if (!c.baseline) c.baseline.emplace();
    return *c.baseline;
  };
  return {
      {"name", [spec](ExperimentConfig& c, const Item& it) { spec(c).name = it.value; }},
      {"tech", [spec](ExperimentConfig& c, const Item& it) { spec(c).tech = it.parsed(parse_tech); }},
      {"fp",
       [spec](ExperimentConfig& c, const Item& it) {
         const double v = it.real();
         if (!(v > 0.0 && v <= 1.0)) it.fail("out of range (0, 1]");
         spec(c).fp = v;
       }},
      {"phase", [spec](ExperimentConfig& c, const Item& it) { spec(c).phase = it.parsed(parse_phase); }},
  };
}

const std::map<std::string, Table, std::less<>>& section_tables() {
  static const std::map<std::string, Table, std::less<>> tables = {
      {"experiment", experiment_keys()}, {"memory", memory_keys()}, {"neuron", neuron_keys()},
      {"stdp", stdp_keys()},             {"lut", lut_keys()},       {"core", core_keys()},
      {"bus", bus_keys()},               {"sim", sim_keys()},       {"perf", perf_keys()},
      {"baseline", baseline_keys()},
  };
  return tables;
}

std::optional<TechKind> tech_section(std::string_view section) {
  if (!section.starts_with("tech.")) return std::nullopt;
  const std::string_view name = section.substr(5);
  if (name == "rom") return TechKind::Rom;
  return parse_tech(name);
}

}  // namespace

SimConfig ExperimentConfig::sim_config(std::optional<TechKind> kind) const {
  SimConfig s = sim;
  s.memory.tech = profile(kind.value_or(tech));
  s.memory.rom_tech = profile(TechKind::Rom);
  return s;
}

void ExperimentConfig::validate() const {
  try {
    rate.validate();
    sim.neuron.validate();
    sim.stdp.validate();
    for (const auto& [kind, p] : profiles) p.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("config '{}': {}", name, e.what()));
  }
  if (network.layers.empty()) throw ConfigError("config: [experiment] network is required");
  if (tech == TechKind::Rom) throw ConfigError("config: tech 'rom' is only a LUT store, not a PE memory");
  if (sim.memory.ram_bytes % 4 != 0 || sim.memory.rom_bytes % 4 != 0) {
    throw ConfigError("config: [memory] ram_bytes and rom_bytes must be multiples of 4");
  }
  if (!(sim.weight_min >= -1.0 && sim.weight_min <= sim.weight_max && sim.weight_max <= 1.0)) {
    throw ConfigError("config: [sim] weights need -1 <= weight_min <= weight_max <= 1");
  }
  if (dataset == DatasetKind::Mnist && (mnist_images.empty() || mnist_labels.empty())) {
    throw ConfigError("config: dataset mnist needs mnist_images and mnist_labels");
  }
  if (dataset == DatasetKind::Cifar10 && cifar_batch.empty()) {
    throw ConfigError("config: dataset cifar10 needs cifar_batch");
  }
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  for (TechKind k : kAllTech) c.profiles[k] = TechnologyProfile::defaults(k);
  return c;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg = default_config();
  const auto& tables = section_tables();
  const auto techs = tech_keys();
  std::string section;
  std::map<std::string, int, std::less<>> seen;  // "section.key" -> line
  int network_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find_first_of("#;");
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("line {}: malformed section header '{}'", line_no, line));
      section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      bool known = tables.contains(section);
      if (!known) {
        try {
          known = tech_section(section).has_value();
        } catch (const ConfigError&) {
          known = false;
        }
      }
      if (!known) throw ConfigError(fmt::format("line {}: unknown section [{}]", line_no, section));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    }
    Item it{section, lower(trim(std::string_view(line).substr(0, eq))), trim(std::string_view(line).substr(eq + 1)),
            line_no};
    if (section.empty()) throw ConfigError(fmt::format("line {}: key '{}' outside any section", line_no, it.key));
    const std::string full = section + "." + it.key;
    if (auto prev = seen.find(full); prev != seen.end()) {
      throw ConfigError(fmt::format("line {}: key '{}' in [{}] already set on line {}", line_no, it.key, section,
                                    prev->second));
    }
    seen.emplace(full, line_no);
    if (it.value.empty()) it.fail("missing value");

    if (const auto tech = tech_section(section)) {
      const auto h = techs.find(it.key);
      if (h == techs.end()) throw ConfigError(fmt::format("line {}: unknown key '{}' in [{}]", line_no, it.key, section));
      h->second(cfg.profiles[*tech], it);
      continue;
    }
    const Table& table = tables.at(section);
    const auto h = table.find(it.key);
    if (h == table.end()) throw ConfigError(fmt::format("line {}: unknown key '{}' in [{}]", line_no, it.key, section));
    h->second(cfg, it);
    if (full == "experiment.network") network_line = line_no;
  }

  if (cfg.network_source.empty()) throw ConfigError("config: missing required key 'network' in [experiment]");
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative() && !base_dir.empty()) p = base_dir / p;
  };
  resolve(cfg.mnist_images);
  resolve(cfg.mnist_labels);
  resolve(cfg.cifar_batch);
  try {
    std::filesystem::path file = cfg.network_source;
    resolve(file);
    const bool looks_inline = cfg.network_source.find('x') != std::string::npos &&
                              cfg.network_source.find_first_of("/\\.") == std::string::npos;
    if (!looks_inline && std::filesystem::is_regular_file(file)) {
      cfg.network = load_network(file, cfg.default_model);
    } else {
      cfg.network = parse_network(cfg.network_source, cfg.default_model);
    }
  } catch (const Error& e) {
    throw ConfigError(fmt::format("line {}: [experiment] network = '{}': {}", network_line, cfg.network_source,
                                  e.what()));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string format_config(const ExperimentConfig& c) {
  std::string out;
  auto kv = [&](std::string_view k, const auto& v) { out += fmt::format("{} = {}\n", k, v); };
  out += "[experiment]\n";
  kv("name", c.name);
  kv("network", format_network(c.network));
  kv("dataset", to_string(c.dataset));
  kv("images", c.images);
  kv("timesteps", c.rate.timesteps);
  kv("fp", c.rate.fp);
  kv("seed", c.rate.seed);
  kv("phase", to_string(c.sim.phase));
  kv("tech", to_string(c.tech));
  out += "\n[memory]\n";
  kv("ram_bytes", c.sim.memory.ram_bytes);
  kv("rom_bytes", c.sim.memory.rom_bytes);
  kv("row_words", c.sim.memory.row_words);
  kv("reserve_bytes", c.sim.memory.reserve_bytes);
  kv("max_kernels_per_pe", c.sim.max_kernels_per_pe);
  for (const auto& [kind, p] : c.profiles) {
    out += fmt::format("\n[tech.{}]\n", to_string(kind));
    kv("ram_read_energy_pj", p.ram_read.energy_pj);
    kv("ram_read_latency_ns", p.ram_read.latency_ns);
    kv("ram_write_energy_pj", p.ram_write.energy_pj);
    kv("ram_write_latency_ns", p.ram_write.latency_ns);
    kv("rom_sense_energy_pj", p.rom_sense.energy_pj);
    kv("rom_sense_latency_ns", p.rom_sense.latency_ns);
    kv("leakage_mw_per_kib", p.leakage_mw_per_kib);
    kv("area_per_byte_um2", p.area_per_byte_um2);
    kv("rom_overhead_factor", p.rom_overhead_factor);
    kv("peripheral_overhead_factor", p.peripheral_overhead_factor);
    kv("rom_power_overhead_factor", p.rom_power_overhead_factor);
  }
  const NeuronParams& n = c.sim.neuron;
  out += "\n[neuron]\n";
  kv("dt_ms", n.dt);
  kv("hh_dt_ms", n.hh_dt);
  kv("refractory_steps", n.refractory_steps);
  kv("q_frac", n.q_frac);
  kv("lif_tau_m", n.lif.tau_m);
  kv("lif_v_rest", n.lif.v_rest);
  kv("lif_v_reset", n.lif.v_reset);
  kv("lif_v_th", n.lif.v_th);
  kv("lif_r_m", n.lif.r_m);
  kv("izh_a", n.izh.a);
  kv("izh_b", n.izh.b);
  kv("izh_c", n.izh.c);
  kv("izh_d", n.izh.d);
  kv("izh_v_th", n.izh.v_th);
  kv("hh_c_m", n.hh.c_m);
  kv("hh_g_na", n.hh.g_na);
  kv("hh_g_k", n.hh.g_k);
  kv("hh_g_l", n.hh.g_l);
  kv("hh_e_na", n.hh.e_na);
  kv("hh_e_k", n.hh.e_k);
  kv("hh_e_l", n.hh.e_l);
  kv("hh_v_th", n.hh.v_th);
  kv("hh_hysteresis", n.hh.hysteresis);
  out += "\n[stdp]\n";
  kv("eta", c.sim.stdp.eta);
  kv("tau_ms", c.sim.stdp.tau);
  kv("w_min", c.sim.stdp.w_min);
  kv("w_max", c.sim.stdp.w_max);
  kv("window_taus", c.sim.stdp.window_taus);
  out += "\n[lut]\n";
  kv("exp_k", n.exp_k);
  kv("hh_rows", n.hh.lut_rows);
  kv("hh_v_min", n.hh.v_min);
  kv("hh_v_max", n.hh.v_max);
  out += "\n[core]\n";
  kv("cycle_ns", c.sim.core.cycle_ns);
  kv("cycles_per_op", c.sim.core.cycles_per_op);
  kv("op_energy_pj", c.core.op_energy_pj);
  kv("control_energy_pj", c.core.control_energy_pj);
  kv("leakage_mw", c.core.leakage_mw);
  kv("area_um2", c.core.area_um2);
  out += "\n[bus]\n";
  kv("width_bits", c.sim.bus.width_bits);
  kv("cycle_ns", c.sim.bus.cycle_ns);
  kv("gm_energy_pj", c.sim.bus.gm_word_energy_pj);
  out += "\n[sim]\n";
  kv("mode", to_string(c.options.mode));
  kv("weight_min", c.sim.weight_min);
  kv("weight_max", c.sim.weight_max);
  kv("weight_seed", c.sim.weight_seed);
  out += "\n[perf]\n";
  kv("chip_area_um2", c.perf.chip_area_um2);
  kv("parallelism", c.perf.unlimited_parallelism ? "unlimited" : "capped");
  if (c.baseline) {
    out += "\n[baseline]\n";
    kv("name", c.baseline->name);
    if (c.baseline->tech) kv("tech", to_string(*c.baseline->tech));
    if (c.baseline->fp) kv("fp", *c.baseline->fp);
    if (c.baseline->phase) kv("phase", to_string(*c.baseline->phase));
  }
  return out;
}

}  // namespace remsim
