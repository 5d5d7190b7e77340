#pragma once

// Per-cell-class parameter envelopes for massive-MIMO / mmWave RU deployments,
// the midpoint presets built from them, and range validation of arbitrary profiles.

#include <optional>
#include <string>
#include <vector>

#include "ruenergy/power_model.hpp"

namespace ruenergy {

/// Closed interval; both bounds inclusive.
struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v) const { return v >= min && v <= max; }
  double midpoint() const { return min + (max - min) / 2.0; }

  friend bool operator==(const Range&, const Range&) = default;
};

struct CellClassRanges {
  CellClass cell_class;
  Range p_tx_max_dbm;
  Range backoff_db;
  Range pa_peak_dbm;
  Range eta_pa;
  Range p_pa_w;
  Range p_rf_w;
  Range p_bb_w;
  Range p_mmwave_w;  // [0, 0] for sub-6 GHz classes
  Range misc_overhead_frac;
  Range power_per_trx_w;
  Range n_antennas;
  Range n_trx;
  Range total_bs_power_kw;
};

const CellClassRanges& class_ranges(CellClass c);

/// Midpoint preset for a class. Integer fields are rounded to nearest, P_sleep is 10 % of
/// the class's midpoint P0, cooling loss only applies to Macro, feeder loss is off.
RuHardwareProfile builtin_profile(CellClass c);

/// The 64-transceiver worked example used as the default profile: eta_pa 0.3,
/// P_RF 30 W, P_BB 20 W, mmWave 15 + 15 + 10 W, macro-style supply losses, 48 V bus.
RuHardwareProfile reference_profile();

enum class CheckStatus { Pass, Fail, Unchecked };

std::string_view to_string(CheckStatus s);

struct FieldCheck {
  std::string field;
  CheckStatus status = CheckStatus::Unchecked;
  double value = 0.0;
  std::optional<Range> range;
};

struct ValidationReport {
  CellClass cell_class = CellClass::Macro;
  std::vector<FieldCheck> checks;
  /// Advisory findings that never fail validation (transmit power above the class
  /// maximum, derived PA peak or per-TRX power outside the envelope, ...).
  std::vector<std::string> warnings;

  bool ok() const;
  std::vector<FieldCheck> failures() const;
};

/// Checks every profile field that has a class envelope. When p_tx_dbm is given the
/// operating point is also compared against the envelope and reported as warnings.
/// Throws InvalidArgument when ranges belong to another class.
ValidationReport validate_profile_against_class(const RuHardwareProfile& profile,
                                                const CellClassRanges& ranges,
                                                std::optional<double> p_tx_dbm = std::nullopt);

}  // namespace ruenergy
