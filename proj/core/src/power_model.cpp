#include "ruenergy/power_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"
#include "ruenergy/units.hpp"

namespace ruenergy {

namespace {

constexpr std::array kAllClasses = {CellClass::Macro, CellClass::Micro, CellClass::Pico,
                                    CellClass::Femto, CellClass::MmWaveSmallCell};

bool is_fraction(double v) { return v >= 0.0 && v < 1.0; }

}  // namespace

std::span<const CellClass> all_cell_classes() { return kAllClasses; }

std::string_view to_string(CellClass c) {
  switch (c) {
    case CellClass::Macro:
      return "macro";
    case CellClass::Micro:
      return "micro";
    case CellClass::Pico:
      return "pico";
    case CellClass::Femto:
      return "femto";
    case CellClass::MmWaveSmallCell:
      return "mmwave";
  }
  return "unknown";
}

CellClass parse_cell_class(std::string_view name) {
  for (CellClass c : kAllClasses) {
    if (name == to_string(c)) return c;
  }
  if (name == "mmwave_small_cell") return CellClass::MmWaveSmallCell;
  throw InvalidArgument("unknown cell class '" + std::string(name) +
                        "' (valid: macro, micro, pico, femto, mmwave)");
}

std::string describe(const RuState& state) {
  if (const auto* a = std::get_if<Active>(&state)) {
    return "active(" + format_number(a->p_tx_dbm) + " dBm)";
  }
  return "standby";
}

void check_losses(const LossFactors& l) {
  if (!is_fraction(l.delta_dc)) throw InvalidArgument("delta_dc must lie in [0, 1)");
  if (!is_fraction(l.delta_ms)) throw InvalidArgument("delta_ms must lie in [0, 1)");
  if (!is_fraction(l.delta_cool)) throw InvalidArgument("delta_cool must lie in [0, 1)");
  if (!is_fraction(l.delta_af)) throw InvalidArgument("delta_af must lie in [0, 1)");
}

void check_profile(const RuHardwareProfile& p) {
  auto fail = [](const std::string& what) { throw ConfigError("invalid RU profile: " + what); };
  if (p.n_trx < 1) fail("n_trx must be >= 1");
  if (!(p.eta_pa > 0.0 && p.eta_pa <= 1.0)) fail("eta_pa must lie in (0, 1]");
  if (!(p.v_dc > 0.0) || !std::isfinite(p.v_dc)) fail("v_dc must be > 0");
  try {
    check_losses(p.losses);
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
  const double powers[] = {p.p_rf_w, p.p_bb_w, p.p_mmwave_w, p.p_sleep_w};
  for (double w : powers) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail("power fields must be finite and >= 0");
  }
  if (!(p.p_sleep_w < fixed_overhead_p0(p))) {
    fail("p_sleep_w must be below P0 = p_rf_w + p_bb_w + p_mmwave_w");
  }
  if (p.mmwave_breakdown) {
    const auto& b = *p.mmwave_breakdown;
    if (!(b.p_precoding >= 0.0 && b.p_routing >= 0.0 && b.p_calib >= 0.0)) {
      fail("mmwave breakdown components must be >= 0");
    }
    const double sum = mmwave_overhead(b);
    if (std::abs(sum - p.p_mmwave_w) > 1e-12 * std::max(std::abs(sum), 1.0)) {
      fail("p_mmwave_w must equal p_precoding + p_routing + p_calib");
    }
  }
}

double pa_power(double p_tx_w, double eta_pa, double delta_af) {
  if (!(eta_pa > 0.0 && eta_pa <= 1.0)) throw InvalidArgument("pa_power: eta_pa must lie in (0, 1]");
  if (!is_fraction(delta_af)) throw InvalidArgument("pa_power: delta_af must lie in [0, 1)");
  if (!(p_tx_w >= 0.0)) throw InvalidArgument("pa_power: transmit power must be >= 0 W");
  return p_tx_w / (eta_pa * (1.0 - delta_af));
}

double mmwave_overhead(const MmWaveBreakdown& b) { return b.p_precoding + b.p_routing + b.p_calib; }

double fixed_overhead_p0(const RuHardwareProfile& p) { return p.p_rf_w + p.p_bb_w + p.p_mmwave_w; }

double loss_divisor(const LossFactors& l) {
  return (1.0 - l.delta_dc) * (1.0 - l.delta_ms) * (1.0 - l.delta_cool);
}

double active_power(const RuHardwareProfile& profile, double p_tx_dbm) {
  check_profile(profile);
  const double p_pa = pa_power(dbm_to_watts(p_tx_dbm), profile.eta_pa, profile.losses.delta_af);
  // n_trx is applied first so that doubling n_trx doubles the result bit-exactly.
  return profile.n_trx * (p_pa + fixed_overhead_p0(profile)) / loss_divisor(profile.losses);
}

double standby_power(const RuHardwareProfile& profile) {
  check_profile(profile);
  return profile.n_trx * profile.p_sleep_w;
}

double total_power(const RuHardwareProfile& profile, const RuState& state) {
  if (const auto* a = std::get_if<Active>(&state)) return active_power(profile, a->p_tx_dbm);
  return standby_power(profile);
}

double ru_current(const RuHardwareProfile& profile, const RuState& state) {
  return total_power(profile, state) / profile.v_dc;
}

PowerBreakdown power_breakdown(const RuHardwareProfile& profile, const RuState& state) {
  PowerBreakdown b;
  b.n_trx = profile.n_trx;
  b.p0_w = fixed_overhead_p0(profile);
  b.p_sleep_w = profile.p_sleep_w;
  b.loss_divisor = loss_divisor(profile.losses);
  if (const auto* a = std::get_if<Active>(&state)) {
    b.active = true;
    b.p_tx_w = dbm_to_watts(a->p_tx_dbm);
    b.p_pa_w = pa_power(b.p_tx_w, profile.eta_pa, profile.losses.delta_af);
  } else {
    b.active = false;
  }
  b.total_w = total_power(profile, state);
  b.current_a = b.total_w / profile.v_dc;
  return b;
}

}  // namespace ruenergy
