#pragma once

// Component-wise radio unit (RU) power and current model.
//
// Active RU power:
//
//            n_trx * (P_PA + P_RF + P_BB + P_mmWave)
//   P_act = -----------------------------------------
//            (1 - d_DC) (1 - d_MS) (1 - d_cool)
//
// with P_PA = P_tx / (eta_PA (1 - d_af)). In standby every transceiver draws
// P_sleep instead, and the current is the total power over the DC bus voltage.
//
// P_tx is the per-transceiver transmit power; the radiated total is n_trx * P_tx.
// Everything here is a pure function and safe to call concurrently.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace ruenergy {

enum class CellClass : std::uint8_t { Macro, Micro, Pico, Femto, MmWaveSmallCell };

std::span<const CellClass> all_cell_classes();

/// Lower-case name used in config files and on the command line ("mmwave" for MmWaveSmallCell).
std::string_view to_string(CellClass c);

/// Accepts the names produced by to_string plus "mmwave_small_cell". Throws InvalidArgument
/// listing the valid names otherwise.
CellClass parse_cell_class(std::string_view name);

/// Multiplicative supply-chain losses, each a fraction in [0, 1).
struct LossFactors {
  double delta_dc = 0.0;    // DC-DC conversion
  double delta_ms = 0.0;    // mains supply
  double delta_cool = 0.0;  // active cooling
  double delta_af = 0.0;    // antenna feeder, linear domain

  friend bool operator==(const LossFactors&, const LossFactors&) = default;
};

/// Components of the mmWave processing overhead, watts.
struct MmWaveBreakdown {
  double p_precoding = 0.0;
  double p_routing = 0.0;
  double p_calib = 0.0;

  friend bool operator==(const MmWaveBreakdown&, const MmWaveBreakdown&) = default;
};

struct RuHardwareProfile {
  CellClass cell_class = CellClass::Macro;
  int n_trx = 1;
  double eta_pa = 1.0;
  LossFactors losses;
  double p_rf_w = 0.0;
  double p_bb_w = 0.0;
  double p_mmwave_w = 0.0;
  std::optional<MmWaveBreakdown> mmwave_breakdown;
  double p_sleep_w = 0.0;  // per transceiver
  double v_dc = 48.0;

  friend bool operator==(const RuHardwareProfile&, const RuHardwareProfile&) = default;
};

struct Active {
  double p_tx_dbm = 0.0;
};
struct Standby {};

using RuState = std::variant<Active, Standby>;

std::string describe(const RuState& state);

/// Throws InvalidArgument when any loss fraction is outside [0, 1).
void check_losses(const LossFactors& losses);

/// Throws ConfigError naming the first violated profile invariant.
void check_profile(const RuHardwareProfile& profile);

/// P_tx / (eta_pa (1 - delta_af)).
double pa_power(double p_tx_w, double eta_pa, double delta_af);

double mmwave_overhead(const MmWaveBreakdown& b);

/// P0 = P_RF + P_BB + P_mmWave, the transmit-power independent part of the active draw.
double fixed_overhead_p0(const RuHardwareProfile& profile);

/// (1 - d_DC)(1 - d_MS)(1 - d_cool); always in (0, 1].
double loss_divisor(const LossFactors& losses);

double active_power(const RuHardwareProfile& profile, double p_tx_dbm);
double standby_power(const RuHardwareProfile& profile);
double total_power(const RuHardwareProfile& profile, const RuState& state);

/// Total RU current in amperes drawn from the DC bus.
double ru_current(const RuHardwareProfile& profile, const RuState& state);

/// Intermediate terms of one power evaluation. For Active,
/// total_w == n_trx * (p_pa_w + p0_w) / loss_divisor; for Standby, n_trx * p_sleep_w.
struct PowerBreakdown {
  bool active = true;
  int n_trx = 0;
  double p_tx_w = 0.0;  // per transceiver, 0 in standby
  double p_pa_w = 0.0;  // per transceiver
  double p0_w = 0.0;    // per transceiver
  double p_sleep_w = 0.0;
  double loss_divisor = 1.0;
  double total_w = 0.0;
  double current_a = 0.0;
};

PowerBreakdown power_breakdown(const RuHardwareProfile& profile, const RuState& state);

}  // namespace ruenergy
