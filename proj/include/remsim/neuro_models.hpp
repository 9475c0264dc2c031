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
 * @file neuro_models.hpp
 * @brief Fixed-point LIF, Izhikevich and Hodgkin-Huxley neurons, synaptic
 * accumulation and exponential STDP.
 *
 * Units: potentials in mV, time in ms, HH currents in uA/cm^2, conductances
 * in mS/cm^2, capacitance in uF/cm^2. Synaptic current is the sum of the
 * weights of the inputs that spiked this time-step.
 *
 * Model equations:
 *
 *   LIF     tau dv/dt = -(v - v_rest) + r_m i
 *           integrated exactly for piecewise constant i:
 *           v' = v_rest + (v - v_rest) a + (1 - a) r_m i,  a = e^(-dt/tau)
 *   Izh     dv/dt = 0.04 v^2 + 5 v + 140 - u + i,  du/dt = a (b v - u)
 *           v >= v_th: v <- c, u <- u + d
 *   HH      c_m dv/dt = i - g_na m^3 h (v - e_na) - g_k n^4 (v - e_k) - g_l (v - e_l)
 *           dx/dt = a_x(v) (1 - x) - b_x(v) x,  x in {m, n, h}
 *
 * Each update is split into memory plumbing (the *_update functions, which
 * own the access contract) and a pure datapath that only sees the fetched
 * words. The datapaths are shared with reference evaluators.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "remsim/fixed_point.hpp"
#include "remsim/lut_directory.hpp"
#include "remsim/memory_model.hpp"

namespace remsim {

/// Parameters and fixed-point constants that are not stored in memory words.
inline constexpr QFormat kParamFormat{20, 40};

enum class ModelKind : std::uint8_t { Lif, Izhikevich, HodgkinHuxley };

std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "lif", "izh"/"izhikevich", "hh".
ModelKind parse_model(std::string_view name);

/// Per-update memory traffic and datapath work of a neuron model.
struct ModelContract {
  unsigned rom_reads;
  unsigned ram_reads;
  unsigned ram_writes;
  unsigned state_words;
  unsigned core_ops;
};

ModelContract contract(ModelKind kind) noexcept;

inline constexpr unsigned kSynapseCoreOps = 1;      // one add per weight
inline constexpr unsigned kPlasticityCoreOps = 4;   // delta, scale, add, clamp

struct LifParams {
  double tau_m = 20.0;  // ms
  double v_rest = -65.0;
  double v_reset = -65.0;
  double v_th = -52.0;
  double r_m = 10.0;  // mV per unit of synaptic current
};

struct IzhParams {
  double a = 0.02;
  double b = 0.2;
  double c = -65.0;
  double d = 8.0;
  double v_th = 30.0;
};

struct HhParams {
  double c_m = 1.0;
  double g_na = 120.0;
  double g_k = 36.0;
  double g_l = 0.3;
  double e_na = 50.0;
  double e_k = -77.0;
  double e_l = -54.387;
  double v_th = 0.0;
  double hysteresis = 10.0;  // re-arm once v falls this far below v_th
  double v_min = -100.0;     // rate LUT domain
  double v_max = 60.0;
  std::size_t lut_rows = 1024;
};

struct NeuronParams {
  LifParams lif;
  IzhParams izh;
  HhParams hh;
  double dt = 1.0;      // ms, LIF and Izhikevich
  double hh_dt = 0.01;  // ms
  int refractory_steps = 2;
  int exp_k = 6;
  int q_frac = 16;  // exponential LUT and argument precision

  /// Throws ConfigError for dt <= 0, v_th <= v_reset and similar.
  void validate() const;
};

struct StdpParams {
  double eta = 0.01;
  double tau = 20.0;  // ms
  double w_min = -1.0;
  double w_max = 1.0;
  double window_taus = 8.0;  // pre-spike timestamps expire after window_taus * tau

  void validate() const;
};

/// Registers of the PE core that travel with a neuron but are not memory words.
struct NeuronAux {
  std::uint16_t refractory = 0;
  bool above_threshold = false;  // HH hysteresis latch
};

struct HhState {
  FixedPoint v;  // kStateFormat
  FixedPoint m;  // kGatingFormat
  FixedPoint n;
  FixedPoint h;
};

struct HhRates {
  FixedPoint alpha_m, beta_m, alpha_n, beta_n, alpha_h, beta_h;  // 1/ms
};

struct IonRow {
  FixedPoint g;  // mS/cm^2
  FixedPoint e;  // mV
};

struct UpdateResult {
  bool spiked = false;
  unsigned gating_clamps = 0;
};

/// x / (e^(x/y) - 1), continuous through x = 0 where it equals y.
double vtrap(double x, double y) noexcept;
/// Standard squid-axon rate functions (1/ms) for the six rate LUT kinds.
double hh_rate(LutKind kind, double v);
/// Steady state x_inf = a / (a + b) of a gating variable at potential v.
double hh_steady_state(LutKind alpha_kind, LutKind beta_kind, double v);

/// Everything a neuron population needs: parameters, their fixed-point
/// images and the LUTs its ROM plane must hold.
class NeuronKernel {
 public:
  NeuronKernel(ModelKind kind, const NeuronParams& params, const StdpParams& stdp);

  ModelKind kind() const noexcept { return kind_; }
  const NeuronParams& params() const noexcept { return params_; }
  const StdpParams& stdp() const noexcept { return stdp_; }
  ModelContract model_contract() const noexcept { return contract(kind_); }

  /// LUTs in installation order (exponential first).
  const std::vector<LutTable>& tables() const noexcept { return tables_; }
  const LutTable& table(LutKind kind) const;
  const LutTable& exp_table() const { return table(LutKind::Exp); }
  /// ROM words needed, including row alignment, for `row_words`-wide array rows.
  std::size_t rom_words_needed(std::size_t row_words) const;
  /// Writes every table into `rom`'s ROM plane.
  void install(MemArray& rom) const;

  /// Memory image of a freshly reset neuron (contract().state_words words).
  std::vector<std::uint32_t> initial_state() const;

  // Fixed-point constants used by the datapaths.
  FixedPoint lif_decay_arg;  // -dt/tau_m in the exponential LUT format
  FixedPoint lif_v_rest, lif_v_reset, lif_v_th, lif_r_m;
  FixedPoint izh_dt, izh_c, izh_d, izh_v_th;
  FixedPoint hh_dt, hh_dt_over_cm, hh_v_th, hh_v_rearm;
  FixedPoint stdp_eta, stdp_w_min, stdp_w_max;
  double step_ms = 1.0;  // network time-step length for this model

 private:
  ModelKind kind_;
  NeuronParams params_;
  StdpParams stdp_;
  std::vector<LutTable> tables_;
};

// ---------------------------------------------------------------------------
// Pure datapaths. Inputs are the words the memory plumbing fetched.

/// `alpha` is e^(-dt/tau) as returned by eval_exp.
bool lif_datapath(const NeuronKernel& k, FixedPoint& v, const FixedPoint& alpha, const FixedPoint& i_syn,
                  NeuronAux& aux, FixedStatus& status);

/// `membrane` = {0.04, 5, 140}, `recovery` = {a, b} as held in ROM.
bool izh_datapath(const NeuronKernel& k, FixedPoint& v, FixedPoint& u, std::span<const FixedPoint, 3> membrane,
                  std::span<const FixedPoint, 2> recovery, const FixedPoint& i_syn, NeuronAux& aux,
                  FixedStatus& status);

/// `ions` = {Na, K, leak}.
UpdateResult hh_datapath(const NeuronKernel& k, HhState& s, const HhRates& rates, const std::array<IonRow, 3>& ions,
                         const FixedPoint& i_syn, NeuronAux& aux, FixedStatus& status);

/// Signed weight change for `exp_value` = e^(-|dt|/tau); potentiation when `causal`.
FixedPoint stdp_datapath(const NeuronKernel& k, const FixedPoint& exp_value, bool causal, FixedStatus& status);
/// -|delta_t| / tau in the exponential LUT format (saturating at the format minimum).
FixedPoint stdp_exp_arg(const NeuronKernel& k, double delta_t_ms);
/// clamp(w + dw, w_min, w_max) in kStateFormat.
FixedPoint stdp_apply(const NeuronKernel& k, const FixedPoint& w, const FixedPoint& dw, FixedStatus& status);

// ---------------------------------------------------------------------------
// Memory-backed updates. `ram` holds weights and state, `rom` the LUTs; both
// may be the same array.

/// Adds the `fanout` weights stored at [row_addr, row_addr + fanout) into
/// acc[0..fanout): exactly `fanout` RAM reads.
void synapse_accumulate(std::size_t row_addr, std::size_t fanout, MemArray& ram, std::span<FixedPoint> acc,
                        FixedStatus& status);

/// {1 ROM, 1 RAM read, 1 RAM write}.
bool lif_update(const NeuronKernel& k, std::size_t state_addr, const FixedPoint& i_syn, NeuronAux& aux,
                MemArray& ram, MemArray& rom, FixedStatus& status);
/// {2 ROM, 2 RAM read, 2 RAM write}.
bool izh_update(const NeuronKernel& k, std::size_t state_addr, const FixedPoint& i_syn, NeuronAux& aux,
                MemArray& ram, MemArray& rom, FixedStatus& status);
/// {9 ROM, 4 RAM read, 4 RAM write}.
UpdateResult hh_update(const NeuronKernel& k, std::size_t state_addr, const FixedPoint& i_syn, NeuronAux& aux,
                       MemArray& ram, MemArray& rom, FixedStatus& status);
/// Dispatches on k.kind().
UpdateResult neuron_update(const NeuronKernel& k, std::size_t state_addr, const FixedPoint& i_syn, NeuronAux& aux,
                           MemArray& ram, MemArray& rom, FixedStatus& status);

/// +eta e^(-dt/tau) for dt >= 0, -eta e^(dt/tau) otherwise. One ROM read.
FixedPoint stdp_delta(const NeuronKernel& k, double delta_t_ms, MemArray& rom, FixedStatus& status);

struct PreSynapse {
  std::size_t weight_addr = 0;
  std::int64_t last_spike_step = -1;  // < 0: no recorded spike
};

/// Updates every synapse whose pre-spike lies within the STDP window of
/// `t_post_step`: {1 RAM read, 1 ROM read, 1 RAM write} each. Returns the
/// number of synapses updated.
std::size_t apply_plasticity(const NeuronKernel& k, std::span<const PreSynapse> pre, std::int64_t t_post_step,
                             MemArray& ram, MemArray& rom, FixedStatus& status);

/// True when a pre-spike at `pre_step` is still eligible at `post_step`.
bool stdp_eligible(const NeuronKernel& k, std::int64_t pre_step, std::int64_t post_step) noexcept;

}  // namespace remsim
