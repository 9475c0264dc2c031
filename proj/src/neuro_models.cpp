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

#include "remsim/neuro_models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "remsim/error.hpp"
#include "remsim/lut_math.hpp"

namespace remsim {

namespace {

// Products of gating variables (m^3 h, n^4), all in [0, 1].
constexpr QFormat kWideGating{2, 58};

FixedPoint fx(double v, QFormat f) { return FixedPoint::from_real(v, f); }

FixedPoint word_value(std::span<const std::uint32_t> row, std::size_t i, QFormat f) {
  return FixedPoint::from_word(row[i], f);
}

unsigned clamp_gating(FixedPoint& x) {
  static const FixedPoint zero = FixedPoint::zero(kGatingFormat);
  static const FixedPoint one = FixedPoint::one(kGatingFormat);
  if (x < zero) {
    x = zero;
    return 1;
  }
  if (x > one) {
    x = one;
    return 1;
  }
  return 0;
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Lif: return "lif";
    case ModelKind::Izhikevich: return "izh";
    case ModelKind::HodgkinHuxley: return "hh";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "lif") return ModelKind::Lif;
  if (n == "izh" || n == "izhikevich") return ModelKind::Izhikevich;
  if (n == "hh" || n == "hodgkinhuxley" || n == "hodgkin-huxley") return ModelKind::HodgkinHuxley;
  throw ConfigError(fmt::format("unknown neuron model '{}'", name));
}

ModelContract contract(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Lif: return {1, 1, 1, 1, 6};
    case ModelKind::Izhikevich: return {2, 2, 2, 2, 12};
    case ModelKind::HodgkinHuxley: return {9, 4, 4, 4, 40};
  }
  return {0, 0, 0, 0, 0};
}

void NeuronParams::validate() const {
  require(dt > 0.0 && std::isfinite(dt), "neuron: dt must be > 0");
  require(hh_dt > 0.0 && std::isfinite(hh_dt), "neuron: hh_dt must be > 0");
  require(lif.tau_m > 0.0, "neuron: lif tau_m must be > 0");
  require(lif.v_th > lif.v_reset, "neuron: lif v_th must exceed v_reset");
  require(izh.v_th > izh.c, "neuron: izh v_th must exceed c");
  require(hh.c_m > 0.0, "neuron: hh c_m must be > 0");
  require(hh.v_min < hh.v_max, "neuron: hh v_min must be below v_max");
  require(hh.lut_rows >= 2, "neuron: hh lut_rows must be >= 2");
  require(hh.hysteresis >= 0.0, "neuron: hh hysteresis must be >= 0");
  require(refractory_steps >= 0 && refractory_steps < 65536, "neuron: refractory_steps out of range");
}

void StdpParams::validate() const {
  require(eta >= 0.0 && eta <= 1.0, "stdp: eta must lie in [0, 1]");
  require(tau > 0.0, "stdp: tau must be > 0");
  require(w_min < w_max, "stdp: w_min must be below w_max");
  require(w_min >= -1.0 && w_max <= 1.0, "stdp: weight bounds must lie in [-1, 1]");
  require(window_taus > 0.0, "stdp: window_taus must be > 0");
}

// ---------------------------------------------------------------------------
// Hodgkin-Huxley rate functions

double vtrap(double x, double y) noexcept {
  const double z = x / y;
  if (std::abs(z) < 1e-6) return y * (1.0 - z / 2.0);
  return x / std::expm1(z);
}

double hh_rate(LutKind kind, double v) {
  switch (kind) {
    case LutKind::HhAlphaM: return 0.1 * vtrap(-(v + 40.0), 10.0);
    case LutKind::HhBetaM: return 4.0 * std::exp(-(v + 65.0) / 18.0);
    case LutKind::HhAlphaN: return 0.01 * vtrap(-(v + 55.0), 10.0);
    case LutKind::HhBetaN: return 0.125 * std::exp(-(v + 65.0) / 80.0);
    case LutKind::HhAlphaH: return 0.07 * std::exp(-(v + 65.0) / 20.0);
    case LutKind::HhBetaH: return 1.0 / (1.0 + std::exp(-(v + 35.0) / 10.0));
    default: break;
  }
  throw ArgumentError(fmt::format("{} is not a rate function", to_string(kind)));
}

double hh_steady_state(LutKind alpha_kind, LutKind beta_kind, double v) {
  const double a = hh_rate(alpha_kind, v);
  const double b = hh_rate(beta_kind, v);
  return a / (a + b);
}

// ---------------------------------------------------------------------------
// NeuronKernel

NeuronKernel::NeuronKernel(ModelKind kind, const NeuronParams& params, const StdpParams& stdp)
    : kind_(kind), params_(params), stdp_(stdp) {
  params_.validate();
  stdp_.validate();
  tables_.push_back(build_exp_lut(params_.exp_k, params_.q_frac));
  const QFormat exp_fmt = tables_.front().format;
  step_ms = kind == ModelKind::HodgkinHuxley ? params_.hh_dt : params_.dt;

  FixedStatus ignore;
  lif_decay_arg = FixedPoint::saturating(-params_.dt / params_.lif.tau_m, exp_fmt, ignore);
  lif_v_rest = fx(params_.lif.v_rest, kStateFormat);
  lif_v_reset = fx(params_.lif.v_reset, kStateFormat);
  lif_v_th = fx(params_.lif.v_th, kStateFormat);
  lif_r_m = fx(params_.lif.r_m, kParamFormat);
  izh_dt = fx(params_.dt, kParamFormat);
  izh_c = fx(params_.izh.c, kStateFormat);
  izh_d = fx(params_.izh.d, kStateFormat);
  izh_v_th = fx(params_.izh.v_th, kStateFormat);
  hh_dt = fx(params_.hh_dt, kParamFormat);
  hh_dt_over_cm = fx(params_.hh_dt / params_.hh.c_m, kParamFormat);
  hh_v_th = fx(params_.hh.v_th, kStateFormat);
  hh_v_rearm = fx(params_.hh.v_th - params_.hh.hysteresis, kStateFormat);
  stdp_eta = fx(stdp_.eta, kParamFormat);
  stdp_w_min = fx(stdp_.w_min, kStateFormat);
  stdp_w_max = fx(stdp_.w_max, kStateFormat);

  if (kind == ModelKind::Izhikevich) {
    const double membrane[] = {0.04, 5.0, 140.0};
    const double recovery[] = {params_.izh.a, params_.izh.b};
    tables_.push_back(build_coeff_lut(LutKind::IzhMembrane, membrane));
    tables_.push_back(build_coeff_lut(LutKind::IzhRecovery, recovery));
  } else if (kind == ModelKind::HodgkinHuxley) {
    const HhParams& h = params_.hh;
    for (LutKind rk : {LutKind::HhAlphaM, LutKind::HhBetaM, LutKind::HhAlphaN, LutKind::HhBetaN, LutKind::HhAlphaH,
                       LutKind::HhBetaH}) {
      tables_.push_back(build_rate_lut(rk, [rk](double v) { return hh_rate(rk, v); }, h.v_min, h.v_max, h.lut_rows));
    }
    const double na[] = {h.g_na, h.e_na};
    const double k[] = {h.g_k, h.e_k};
    const double leak[] = {h.g_l, h.e_l};
    tables_.push_back(build_coeff_lut(LutKind::IonNa, na));
    tables_.push_back(build_coeff_lut(LutKind::IonK, k));
    tables_.push_back(build_coeff_lut(LutKind::IonLeak, leak));
  }
}

const LutTable& NeuronKernel::table(LutKind kind) const {
  for (const LutTable& t : tables_) {
    if (t.kind == kind) return t;
  }
  throw DirectoryError(fmt::format("{} model has no {} table", to_string(kind_), to_string(kind)));
}

std::size_t NeuronKernel::rom_words_needed(std::size_t row_words) const {
  std::size_t total = 0;
  for (const LutTable& t : tables_) {
    total += (t.words.size() + row_words - 1) / row_words * row_words;
  }
  return total;
}

void NeuronKernel::install(MemArray& rom) const {
  for (const LutTable& t : tables_) rom.install_lut(t);
}

std::vector<std::uint32_t> NeuronKernel::initial_state() const {
  switch (kind_) {
    case ModelKind::Lif: return {lif_v_rest.to_word()};
    case ModelKind::Izhikevich: {
      const double v0 = params_.izh.c;
      return {fx(v0, kStateFormat).to_word(), fx(params_.izh.b * v0, kStateFormat).to_word()};
    }
    case ModelKind::HodgkinHuxley: {
      const double v0 = -65.0;
      return {fx(v0, kStateFormat).to_word(),
              fx(hh_steady_state(LutKind::HhAlphaM, LutKind::HhBetaM, v0), kGatingFormat).to_word(),
              fx(hh_steady_state(LutKind::HhAlphaN, LutKind::HhBetaN, v0), kGatingFormat).to_word(),
              fx(hh_steady_state(LutKind::HhAlphaH, LutKind::HhBetaH, v0), kGatingFormat).to_word()};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Datapaths

bool lif_datapath(const NeuronKernel& k, FixedPoint& v, const FixedPoint& alpha, const FixedPoint& i_syn,
                  NeuronAux& aux, FixedStatus& st) {
  if (aux.refractory > 0) {
    --aux.refractory;
    v = k.lif_v_reset;
    return false;
  }
  const FixedPoint one = FixedPoint::one(kAccFormat);
  const FixedPoint decayed = mul(sub(v, k.lif_v_rest, kAccFormat, st), alpha, kAccFormat, st);
  const FixedPoint drive = mul(mul(k.lif_r_m, i_syn, kAccFormat, st), sub(one, alpha, kAccFormat, st), kAccFormat, st);
  FixedPoint next = add(add(k.lif_v_rest, decayed, kAccFormat, st), drive, kAccFormat, st).to(kStateFormat, st);
  const FixedPoint floor = std::min(k.lif_v_reset, k.lif_v_rest);
  if (next < floor) next = floor;
  if (next >= k.lif_v_th) {
    v = k.lif_v_reset;
    aux.refractory = static_cast<std::uint16_t>(k.params().refractory_steps);
    return true;
  }
  v = next;
  return false;
}

bool izh_datapath(const NeuronKernel& k, FixedPoint& v, FixedPoint& u, std::span<const FixedPoint, 3> membrane,
                  std::span<const FixedPoint, 2> recovery, const FixedPoint& i_syn, NeuronAux& aux,
                  FixedStatus& st) {
  // du = a (b v - u)
  const FixedPoint bv_u = sub(mul(recovery[1], v, kAccFormat, st), u, kAccFormat, st);
  const FixedPoint du = mul(recovery[0], bv_u, kAccFormat, st);
  FixedPoint u_next = add(u, mul(k.izh_dt, du, kAccFormat, st), kAccFormat, st).to(kStateFormat, st);

  if (aux.refractory > 0) {
    --aux.refractory;
    v = k.izh_c;
    u = u_next;
    return false;
  }
  // dv = 0.04 v^2 + 5 v + 140 - u + i
  const FixedPoint v2 = mul(v, v, kAccFormat, st);
  FixedPoint dv = mul(membrane[0], v2, kAccFormat, st);
  dv = add(dv, mul(membrane[1], v, kAccFormat, st), kAccFormat, st);
  dv = add(dv, membrane[2], kAccFormat, st);
  dv = sub(dv, u, kAccFormat, st);
  dv = add(dv, i_syn, kAccFormat, st);
  const FixedPoint v_next = add(v, mul(k.izh_dt, dv, kAccFormat, st), kAccFormat, st).to(kStateFormat, st);

  if (v_next >= k.izh_v_th) {
    v = k.izh_c;
    u = add(u_next, k.izh_d, kStateFormat, st);
    aux.refractory = static_cast<std::uint16_t>(k.params().refractory_steps);
    return true;
  }
  v = v_next;
  u = u_next;
  return false;
}

UpdateResult hh_datapath(const NeuronKernel& k, HhState& s, const HhRates& r, const std::array<IonRow, 3>& ions,
                         const FixedPoint& i_syn, NeuronAux& aux, FixedStatus& st) {
  UpdateResult out;
  const FixedPoint one = FixedPoint::one(kGatingFormat);

  auto gate = [&](const FixedPoint& x, const FixedPoint& a, const FixedPoint& b) {
    const FixedPoint up = mul(a, sub(one, x, kGatingFormat, st), kAccFormat, st);
    const FixedPoint down = mul(b, x, kAccFormat, st);
    const FixedPoint dx = mul(k.hh_dt, sub(up, down, kAccFormat, st), kAccFormat, st);
    FixedPoint next = add(x, dx, kAccFormat, st).to(kGatingFormat, st);
    out.gating_clamps += clamp_gating(next);
    return next;
  };

  // Ionic currents use the gating values from the start of the step.
  const FixedPoint m2 = mul(s.m, s.m, kWideGating, st);
  const FixedPoint m3h = mul(mul(m2, s.m, kWideGating, st), s.h, kWideGating, st);
  const FixedPoint n2 = mul(s.n, s.n, kWideGating, st);
  const FixedPoint n4 = mul(n2, n2, kWideGating, st);
  const FixedPoint one_wide = FixedPoint::one(kWideGating);
  const FixedPoint open[3] = {m3h, n4, one_wide};

  FixedPoint i_ion = FixedPoint::zero(kAccFormat);
  for (std::size_t c = 0; c < 3; ++c) {
    const FixedPoint drive = sub(s.v, ions[c].e, kAccFormat, st);
    const FixedPoint g_eff = mul(ions[c].g, open[c], kAccFormat, st);
    i_ion = add(i_ion, mul(g_eff, drive, kAccFormat, st), kAccFormat, st);
  }
  const FixedPoint dv = mul(k.hh_dt_over_cm, sub(i_syn, i_ion, kAccFormat, st), kAccFormat, st);
  const FixedPoint v_next = add(s.v, dv, kAccFormat, st).to(kStateFormat, st);

  s.m = gate(s.m, r.alpha_m, r.beta_m);
  s.n = gate(s.n, r.alpha_n, r.beta_n);
  s.h = gate(s.h, r.alpha_h, r.beta_h);
  s.v = v_next;

  if (!aux.above_threshold && s.v >= k.hh_v_th) {
    aux.above_threshold = true;
    out.spiked = true;
  } else if (aux.above_threshold && s.v < k.hh_v_rearm) {
    aux.above_threshold = false;
  }
  return out;
}

FixedPoint stdp_exp_arg(const NeuronKernel& k, double delta_t_ms) {
  FixedStatus ignore;
  return FixedPoint::saturating(-std::abs(delta_t_ms) / k.stdp().tau, k.exp_table().format, ignore);
}

FixedPoint stdp_datapath(const NeuronKernel& k, const FixedPoint& exp_value, bool causal, FixedStatus& st) {
  const FixedPoint mag = mul(k.stdp_eta, exp_value, kStateFormat, st);
  return causal ? mag : sub(FixedPoint::zero(kStateFormat), mag, kStateFormat, st);
}

FixedPoint stdp_apply(const NeuronKernel& k, const FixedPoint& w, const FixedPoint& dw, FixedStatus& st) {
  return clamp(add(w, dw, kStateFormat, st), k.stdp_w_min, k.stdp_w_max);
}

// ---------------------------------------------------------------------------
// Memory-backed updates

void synapse_accumulate(std::size_t row_addr, std::size_t fanout, MemArray& ram, std::span<FixedPoint> acc,
                        FixedStatus& st) {
  if (acc.size() < fanout) {
    throw ArgumentError(fmt::format("accumulator holds {} neurons, fan-out is {}", acc.size(), fanout));
  }
  for (std::size_t j = 0; j < fanout; ++j) {
    const FixedPoint w = FixedPoint::from_word(ram.ram_read(row_addr + j), kStateFormat);
    acc[j] = add(acc[j], w, kStateFormat, st);
  }
}

bool lif_update(const NeuronKernel& k, std::size_t addr, const FixedPoint& i_syn, NeuronAux& aux, MemArray& ram,
                MemArray& rom, FixedStatus& st) {
  FixedPoint v = FixedPoint::from_word(ram.ram_read(addr), kStateFormat);
  const ExpResult alpha = eval_exp(k.lif_decay_arg, k.exp_table(), rom);
  if (alpha.saturated) st.flag();
  const bool spiked = lif_datapath(k, v, alpha.value, i_syn, aux, st);
  ram.ram_write(addr, v.to_word());
  return spiked;
}

bool izh_update(const NeuronKernel& k, std::size_t addr, const FixedPoint& i_syn, NeuronAux& aux, MemArray& ram,
                MemArray& rom, FixedStatus& st) {
  FixedPoint v = FixedPoint::from_word(ram.ram_read(addr), kStateFormat);
  FixedPoint u = FixedPoint::from_word(ram.ram_read(addr + 1), kStateFormat);
  const QFormat cf = k.table(LutKind::IzhMembrane).format;
  auto row = fetch_lut(rom, LutKind::IzhMembrane, 0);
  const std::array<FixedPoint, 3> membrane = {word_value(row, 0, cf), word_value(row, 1, cf), word_value(row, 2, cf)};
  row = fetch_lut(rom, LutKind::IzhRecovery, 0);
  const std::array<FixedPoint, 2> recovery = {word_value(row, 0, cf), word_value(row, 1, cf)};
  const bool spiked = izh_datapath(k, v, u, membrane, recovery, i_syn, aux, st);
  ram.ram_write(addr, v.to_word());
  ram.ram_write(addr + 1, u.to_word());
  return spiked;
}

UpdateResult hh_update(const NeuronKernel& k, std::size_t addr, const FixedPoint& i_syn, NeuronAux& aux,
                       MemArray& ram, MemArray& rom, FixedStatus& st) {
  HhState s;
  s.v = FixedPoint::from_word(ram.ram_read(addr), kStateFormat);
  s.m = FixedPoint::from_word(ram.ram_read(addr + 1), kGatingFormat);
  s.n = FixedPoint::from_word(ram.ram_read(addr + 2), kGatingFormat);
  s.h = FixedPoint::from_word(ram.ram_read(addr + 3), kGatingFormat);

  const LutTable& grid = k.table(LutKind::HhAlphaM);
  const std::size_t idx = rate_lut_index(grid, s.v);
  auto rate = [&](LutKind kind) { return word_value(fetch_lut(rom, kind, idx), 0, grid.format); };
  HhRates r;
  r.alpha_m = rate(LutKind::HhAlphaM);
  r.beta_m = rate(LutKind::HhBetaM);
  r.alpha_n = rate(LutKind::HhAlphaN);
  r.beta_n = rate(LutKind::HhBetaN);
  r.alpha_h = rate(LutKind::HhAlphaH);
  r.beta_h = rate(LutKind::HhBetaH);

  const QFormat cf = k.table(LutKind::IonNa).format;
  std::array<IonRow, 3> ions;
  const LutKind ion_kinds[3] = {LutKind::IonNa, LutKind::IonK, LutKind::IonLeak};
  for (std::size_t c = 0; c < 3; ++c) {
    const auto row = fetch_lut(rom, ion_kinds[c], 0);
    ions[c] = IonRow{word_value(row, 0, cf), word_value(row, 1, cf)};
  }

  const UpdateResult out = hh_datapath(k, s, r, ions, i_syn, aux, st);
  ram.ram_write(addr, s.v.to_word());
  ram.ram_write(addr + 1, s.m.to_word());
  ram.ram_write(addr + 2, s.n.to_word());
  ram.ram_write(addr + 3, s.h.to_word());
  return out;
}

UpdateResult neuron_update(const NeuronKernel& k, std::size_t addr, const FixedPoint& i_syn, NeuronAux& aux,
                           MemArray& ram, MemArray& rom, FixedStatus& st) {
  switch (k.kind()) {
    case ModelKind::Lif: return {lif_update(k, addr, i_syn, aux, ram, rom, st), 0};
    case ModelKind::Izhikevich: return {izh_update(k, addr, i_syn, aux, ram, rom, st), 0};
    case ModelKind::HodgkinHuxley: return hh_update(k, addr, i_syn, aux, ram, rom, st);
  }
  return {};
}

FixedPoint stdp_delta(const NeuronKernel& k, double delta_t_ms, MemArray& rom, FixedStatus& st) {
  const ExpResult e = eval_exp(stdp_exp_arg(k, delta_t_ms), k.exp_table(), rom);
  return stdp_datapath(k, e.value, delta_t_ms >= 0.0, st);
}

bool stdp_eligible(const NeuronKernel& k, std::int64_t pre_step, std::int64_t post_step) noexcept {
  if (pre_step < 0 || pre_step > post_step) return false;
  return static_cast<double>(post_step - pre_step) * k.step_ms <= k.stdp().window_taus * k.stdp().tau;
}

std::size_t apply_plasticity(const NeuronKernel& k, std::span<const PreSynapse> pre, std::int64_t t_post_step,
                             MemArray& ram, MemArray& rom, FixedStatus& st) {
  std::size_t updated = 0;
  for (const PreSynapse& p : pre) {
    if (!stdp_eligible(k, p.last_spike_step, t_post_step)) continue;
    const FixedPoint w = FixedPoint::from_word(ram.ram_read(p.weight_addr), kStateFormat);
    const double dt_ms = static_cast<double>(t_post_step - p.last_spike_step) * k.step_ms;
    const FixedPoint dw = stdp_delta(k, dt_ms, rom, st);
    ram.ram_write(p.weight_addr, stdp_apply(k, w, dw, st).to_word());
    ++updated;
  }
  return updated;
}

}  // namespace remsim
