#pragma once

// Transmit-power sweep: one scenario run per grid point, energy efficiency per
// row, finite-difference gradients along the dBm axis, and the peak-efficiency point.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruenergy/cell_classes.hpp"
#include "ruenergy/power_model.hpp"
#include "ruenergy/scenario.hpp"

namespace ruenergy {

struct SweepSpec {
  double p_tx_start_dbm = 20.0;
  double p_tx_end_dbm = 49.0;
  double step_db = 1.0;
  ScenarioConfig scenario;
  RuHardwareProfile profile = reference_profile();
};

/// Throws ConfigError when start > end, step <= 0 or a bound is not finite.
void check_sweep_spec(const SweepSpec& spec);

/// start, start + step, ... up to end; end is included when (end - start) is a whole
/// number of steps (to within 1e-9 of a step).
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepRow {
  double p_tx_dbm = 0.0;
  double consumed_j = 0.0;
  double total_bits = 0.0;
  std::optional<double> efficiency_kbit_per_j;  // absent when nothing was consumed
  std::optional<double> dE_dp;                  // J/dB, absent for single-point sweeps
  std::optional<double> deta_dp;                // (kbit/J)/dB
  bool depleted = false;                        // some RU ran out of energy

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct PeakPoint {
  double p_tx_dbm = 0.0;
  double efficiency_kbit_per_j = 0.0;

  friend bool operator==(const PeakPoint&, const PeakPoint&) = default;
};

struct SweepMetadata {
  std::string timestamp_utc;
  std::string tool_version;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::optional<PeakPoint> peak_efficiency_point;
  SweepMetadata metadata;
};

/// Runs every grid point. threads == 0 uses std::thread::hardware_concurrency(); the
/// result does not depend on the thread count. A failing grid point aborts the sweep
/// with a ConfigError naming that point.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// Central differences at interior points, one-sided differences at both ends.
/// x must be strictly increasing; throws InsufficientData for fewer than two points.
std::vector<double> finite_difference(std::span<const double> x, std::span<const double> y);

/// Row with the highest efficiency, preferring the lowest p_tx on ties. Throws
/// UndefinedEfficiency when no row has a defined efficiency.
PeakPoint peak_efficiency(std::span<const SweepRow> rows);

enum class TableFormat { Csv, Doc };

/// "csv" or "doc"; anything else throws InvalidArgument listing the supported formats.
TableFormat parse_table_format(std::string_view name);

inline constexpr std::string_view kSweepCsvHeader =
    "p_tx_dbm,consumed_j,total_bits,efficiency_kbit_per_j,dE_dp,deta_dp";

/// CSV (header + one line per row, absent values as empty fields) or a JSON document
/// mirroring SweepResult. Numbers use the shortest round-trip representation.
std::string emit_tables(const SweepResult& result, TableFormat format);

/// Parses the CSV produced by emit_tables back into rows (depleted flags are not part
/// of the CSV and come back false).
std::vector<SweepRow> parse_sweep_csv(std::string_view csv);

}  // namespace ruenergy
