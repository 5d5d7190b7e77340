#pragma once

// Sectioned key-value documents (INI style):
//
//   [profile]            RU hardware fields, or `builtin = <class>`
//   [scenario]           ScenarioConfig fields
//   [sweep]              p_tx_start_dbm, p_tx_end_dbm, step_db
//   [output]             format = csv|doc, path, events_path
//
// Keys are the snake_case field names; LossFactors and MmWaveBreakdown members are
// flattened into the profile section (delta_dc, ..., p_precoding, p_routing, p_calib).
// Unknown sections and keys are rejected with an error naming them.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ruenergy/energy_ledger.hpp"
#include "ruenergy/power_model.hpp"
#include "ruenergy/scenario.hpp"
#include "ruenergy/sweep.hpp"

namespace ruenergy {

/// `[profile]` document with every RuHardwareProfile field.
std::string profile_to_ini(const RuHardwareProfile& profile);

/// Strict inverse of profile_to_ini: all fields except the mmWave breakdown are required.
RuHardwareProfile profile_from_ini(std::string_view text);

/// `[ledger]` document with initial_j, remaining_j, voltage_v, depleted.
std::string ledger_to_ini(const EnergySource& source);
EnergySource ledger_from_ini(std::string_view text);

/// "ru:start:end" entries separated by commas, e.g. "0:0:30, 1:10:20".
std::vector<SleepWindow> parse_sleep_schedule(std::string_view text);
std::string format_sleep_schedule(const std::vector<SleepWindow>& windows);

struct OutputOptions {
  TableFormat format = TableFormat::Csv;
  std::string path;         // empty: stdout
  std::string events_path;  // scenario event log; empty: not written
};

struct CliConfig {
  RuHardwareProfile profile = reference_profile();
  std::string profile_source = "reference";  // "reference", "builtin:<class>" or "explicit"
  ScenarioConfig scenario;
  double p_tx_start_dbm = 20.0;
  double p_tx_end_dbm = 49.0;
  double step_db = 1.0;
  OutputOptions output;
};

/// Missing sections and keys keep their defaults. Explicit profile keys override the
/// reference profile and cannot be combined with `builtin`. Throws ConfigError.
CliConfig parse_cli_config(std::string_view text);

/// Reads and parses a file; IoError when it cannot be read.
CliConfig load_cli_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ruenergy
