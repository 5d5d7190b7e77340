#pragma once

// Desk-scale two-cell scenario: RUs on a line, UEs bouncing between them at constant
// speed, forced periodic nearest-RU re-attachment, a deterministic on/off traffic
// source per UE, optional RU sleep windows, and one energy ledger per RU.
//
// There is no radio channel: delivered bits depend on the traffic source, attachment
// and RU state only, never on transmit power.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ruenergy/power_model.hpp"

namespace ruenergy {

struct SleepWindow {
  std::size_t ru_index = 0;
  double start_s = 0.0;
  double end_s = 0.0;

  friend bool operator==(const SleepWindow&, const SleepWindow&) = default;
};

struct ScenarioConfig {
  double sim_time_s = 30.0;
  int enb_count = 2;
  int ue_count = 4;
  double ue_speed_mps = 1.5;
  double handover_interval_s = 15.0;
  double enb_spacing_m = 50.0;
  double traffic_peak_bps = 10'000'000.0;
  double traffic_duty_cycle = 0.5;  // fraction of each period spent "on"
  double traffic_period_s = 1.0;
  double handover_gap_s = 0.0;
  double initial_energy_j = 100'000.0;
  std::vector<SleepWindow> sleep_schedule;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError describing the first invalid field or overlapping sleep windows.
void check_config(const ScenarioConfig& config);

struct UeNode {
  std::size_t index = 0;
  double position_m = 0.0;
  double velocity_mps = 0.0;
  std::size_t serving_ru = 0;
};

struct RuNode {
  std::size_t index = 0;
  double position_m = 0.0;
};

std::vector<RuNode> place_rus(const ScenarioConfig& config);

/// UEs sit at the centres of ue_count equal cells of [0, span]; even-indexed UEs move
/// towards +x, odd ones towards -x. Each starts attached to its nearest RU.
std::vector<UeNode> place_ues(const ScenarioConfig& config);

/// Nearest RU by distance; ties resolve to the lower index.
std::size_t nearest_ru(double position_m, const ScenarioConfig& config);

/// Moves the UE for dt seconds inside [0, span_m], reflecting at both ends.
UeNode step_mobility(UeNode ue, double dt_s, double span_m);

struct HandoverEvent {
  double time_s = 0.0;
  std::size_t ue_index = 0;
  std::size_t from_ru = 0;
  std::size_t to_ru = 0;

  bool is_cell_change() const { return from_ru != to_ru; }
};

/// One batch per multiple of handover_interval_s strictly inside (0, sim_time_s). Every
/// UE re-attaches to its nearest RU; entries with from_ru == to_ru are kept.
std::vector<HandoverEvent> schedule_handovers(const ScenarioConfig& config);

struct StateSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  RuState state;
};

/// Active/Standby timeline of one RU over [0, sim_time_s]. Throws ConfigError for
/// windows outside the run or overlapping windows on the same RU.
std::vector<StateSegment> apply_sleep_schedule(std::size_t ru_index,
                                               std::span<const SleepWindow> windows,
                                               double sim_time_s, double p_tx_dbm);

enum class EventType { StateChange, Handover, HandoverGapEnd, Depletion };

std::string_view to_string(EventType t);

struct LogEvent {
  double time_s = 0.0;
  EventType type = EventType::StateChange;
  std::optional<std::size_t> ru_index;
  std::optional<std::size_t> ue_index;
  std::string detail;

  friend bool operator==(const LogEvent&, const LogEvent&) = default;
};

struct RuResult {
  double consumed_j = 0.0;
  double delivered_bits = 0.0;
  /// What the RU would have drawn without a capacity limit.
  double demanded_j = 0.0;
  std::optional<double> depleted_at_s;

  friend bool operator==(const RuResult&, const RuResult&) = default;
};

struct ScenarioResult {
  std::vector<RuResult> rus;
  double total_bits = 0.0;
  double total_consumed_j = 0.0;
  std::vector<LogEvent> events;

  bool any_depleted() const;

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

/// Runs the scenario with every active RU transmitting at p_tx_dbm per transceiver.
/// Deterministic. Depletion is not an error: the RU stops drawing and the event is logged.
ScenarioResult run_scenario(const ScenarioConfig& config, const RuHardwareProfile& profile,
                            double p_tx_dbm);

/// Event log as CSV: time_s,event_type,ru_index,ue_index,detail.
std::string event_log_csv(const ScenarioResult& result);

/// JSON document mirroring ScenarioResult.
std::string scenario_result_json(const ScenarioResult& result, const ScenarioConfig& config,
                                 double p_tx_dbm);

}  // namespace ruenergy
