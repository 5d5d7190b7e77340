#include "ruenergy/cell_classes.hpp"

#include <cmath>
#include <string>

#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"
#include "ruenergy/units.hpp"

namespace ruenergy {

namespace {

// clang-format off
const CellClassRanges kMacro{CellClass::Macro,
    {43, 49}, {9, 12}, {58, 65}, {0.25, 0.35}, {200, 400}, {30, 50}, {100, 200}, {0, 0},
    {0.10, 0.20}, {380, 750}, {64, 256}, {16, 64}, {6, 20}};
const CellClassRanges kMicro{CellClass::Micro,
    {38, 43}, {9, 12}, {50, 55}, {0.30, 0.40}, {40, 100}, {20, 35}, {50, 100}, {0, 0},
    {0.10, 0.15}, {140, 295}, {32, 128}, {8, 32}, {1, 4}};
const CellClassRanges kPico{CellClass::Pico,
    {30, 35}, {8, 10}, {38, 45}, {0.35, 0.45}, {10, 30}, {8, 15}, {20, 40}, {0, 0},
    {0.08, 0.12}, {50, 105}, {16, 64}, {4, 16}, {0.2, 1}};
const CellClassRanges kFemto{CellClass::Femto,
    {20, 25}, {6, 8}, {26, 33}, {0.40, 0.50}, {1, 5}, {2, 8}, {5, 15}, {0, 0},
    {0.05, 0.10}, {10, 30}, {4, 16}, {2, 8}, {0.02, 0.24}};
const CellClassRanges kMmWave{CellClass::MmWaveSmallCell,
    {20, 33}, {8, 10}, {30, 43}, {0.25, 0.40}, {5, 25}, {10, 20}, {15, 50}, {20, 40},
    {0.10, 0.15}, {50, 135}, {64, 256}, {16, 128}, {1, 6}};
// clang-format on

// Typical supply losses: DC-DC 5-7 %, mains 9 %, cooling 10 % on macro sites only.
constexpr double kDeltaDc = 0.06;
constexpr double kDeltaMs = 0.09;
constexpr double kDeltaCoolMacro = 0.10;
constexpr double kSleepFractionOfP0 = 0.10;
constexpr double kBusVoltage = 48.0;

const MmWaveBreakdown kDigitalBeamforming64{15.0, 15.0, 10.0};

std::string range_text(const Range& r) {
  return "[" + format_number(r.min) + ", " + format_number(r.max) + "]";
}

}  // namespace

const CellClassRanges& class_ranges(CellClass c) {
  switch (c) {
    case CellClass::Macro:
      return kMacro;
    case CellClass::Micro:
      return kMicro;
    case CellClass::Pico:
      return kPico;
    case CellClass::Femto:
      return kFemto;
    case CellClass::MmWaveSmallCell:
      return kMmWave;
  }
  throw InvalidArgument("unknown cell class");
}

RuHardwareProfile builtin_profile(CellClass c) {
  const CellClassRanges& r = class_ranges(c);
  RuHardwareProfile p;
  p.cell_class = c;
  p.n_trx = static_cast<int>(std::lround(r.n_trx.midpoint()));
  p.eta_pa = r.eta_pa.midpoint();
  p.losses.delta_dc = kDeltaDc;
  p.losses.delta_ms = kDeltaMs;
  p.losses.delta_cool = c == CellClass::Macro ? kDeltaCoolMacro : 0.0;
  p.losses.delta_af = 0.0;
  p.p_rf_w = r.p_rf_w.midpoint();
  p.p_bb_w = r.p_bb_w.midpoint();
  if (c == CellClass::MmWaveSmallCell) {
    p.mmwave_breakdown = kDigitalBeamforming64;
    p.p_mmwave_w = mmwave_overhead(kDigitalBeamforming64);
  }
  const double p0_midpoint = r.p_rf_w.midpoint() + r.p_bb_w.midpoint() + r.p_mmwave_w.midpoint();
  p.p_sleep_w = kSleepFractionOfP0 * p0_midpoint;
  p.v_dc = kBusVoltage;
  return p;
}

RuHardwareProfile reference_profile() {
  RuHardwareProfile p;
  p.cell_class = CellClass::MmWaveSmallCell;
  p.n_trx = 64;
  p.eta_pa = 0.3;
  p.losses = {kDeltaDc, kDeltaMs, kDeltaCoolMacro, 0.0};
  p.p_rf_w = 30.0;
  p.p_bb_w = 20.0;
  p.mmwave_breakdown = kDigitalBeamforming64;
  p.p_mmwave_w = mmwave_overhead(kDigitalBeamforming64);
  p.p_sleep_w = 9.0;
  p.v_dc = kBusVoltage;
  return p;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Unchecked:
      return "unchecked";
  }
  return "unknown";
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

std::vector<FieldCheck> ValidationReport::failures() const {
  std::vector<FieldCheck> out;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) out.push_back(c);
  }
  return out;
}

ValidationReport validate_profile_against_class(const RuHardwareProfile& profile,
                                                const CellClassRanges& ranges,
                                                std::optional<double> p_tx_dbm) {
  if (profile.cell_class != ranges.cell_class) {
    throw InvalidArgument("cannot validate a " + std::string(to_string(profile.cell_class)) +
                          " profile against " + std::string(to_string(ranges.cell_class)) +
                          " ranges");
  }
  ValidationReport report;
  report.cell_class = profile.cell_class;

  auto check = [&](std::string field, double value, const Range& range) {
    report.checks.push_back({std::move(field),
                             range.contains(value) ? CheckStatus::Pass : CheckStatus::Fail, value,
                             range});
  };
  auto unchecked = [&](std::string field, double value) {
    report.checks.push_back({std::move(field), CheckStatus::Unchecked, value, std::nullopt});
  };

  check("n_trx", profile.n_trx, ranges.n_trx);
  check("eta_pa", profile.eta_pa, ranges.eta_pa);
  check("p_rf_w", profile.p_rf_w, ranges.p_rf_w);
  check("p_bb_w", profile.p_bb_w, ranges.p_bb_w);
  check("p_mmwave_w", profile.p_mmwave_w, ranges.p_mmwave_w);
  unchecked("delta_dc", profile.losses.delta_dc);
  unchecked("delta_ms", profile.losses.delta_ms);
  unchecked("delta_cool", profile.losses.delta_cool);
  unchecked("delta_af", profile.losses.delta_af);
  unchecked("p_sleep_w", profile.p_sleep_w);
  unchecked("v_dc", profile.v_dc);

  if (p_tx_dbm) {
    const double p = *p_tx_dbm;
    if (p > ranges.p_tx_max_dbm.max) {
      report.warnings.push_back("p_tx " + format_number(p) + " dBm exceeds the class maximum " +
                                format_number(ranges.p_tx_max_dbm.max) + " dBm");
    }
    const double peak = peak_pa_output_dbm(p, ranges.backoff_db.midpoint());
    if (!ranges.pa_peak_dbm.contains(peak)) {
      report.warnings.push_back("PA peak " + format_number(peak) + " dBm (p_tx + " +
                                format_number(ranges.backoff_db.midpoint()) +
                                " dB back-off) outside " + range_text(ranges.pa_peak_dbm));
    }
    const double p_pa = pa_power(dbm_to_watts(p), profile.eta_pa, profile.losses.delta_af);
    if (!ranges.p_pa_w.contains(p_pa * profile.n_trx)) {
      report.warnings.push_back("total PA draw " + format_number(p_pa * profile.n_trx) +
                                " W outside " + range_text(ranges.p_pa_w));
    }
    const double total = active_power(profile, p);
    const double per_trx = total / profile.n_trx;
    if (!ranges.power_per_trx_w.contains(per_trx)) {
      report.warnings.push_back("power per TRX chain " + format_number(per_trx) + " W outside " +
                                range_text(ranges.power_per_trx_w));
    }
    if (!ranges.total_bs_power_kw.contains(total / 1000.0)) {
      report.warnings.push_back("total RU power " + format_number(total / 1000.0) +
                                " kW outside " + range_text(ranges.total_bs_power_kw));
    }
  }
  return report;
}

}  // namespace ruenergy
