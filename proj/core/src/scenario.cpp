#include "ruenergy/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "ruenergy/energy_ledger.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"
#include "ruenergy/units.hpp"

namespace ruenergy {

namespace {

double span_of(const ScenarioConfig& c) { return (c.enb_count - 1) * c.enb_spacing_m; }

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// Ties at equal time resolve in this order; a gap that ends exactly when a new
// handover starts must be closed before the new one opens.
enum class QueueKind : std::uint8_t { StateChange, GapEnd, Handover, TrafficOn, TrafficOff, End };

struct QueuedEvent {
  double time_s;
  QueueKind kind;
  std::uint64_t seq;
  std::size_t a = 0;  // RU index, UE index or handover index
  std::size_t b = 0;  // segment index or traffic cycle

  bool operator>(const QueuedEvent& o) const {
    if (time_s != o.time_s) return time_s > o.time_s;
    if (kind != o.kind) return kind > o.kind;
    return seq > o.seq;
  }
};

}  // namespace

void check_config(const ScenarioConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError("invalid scenario: " + what); };
  if (!(c.sim_time_s > 0.0) || !std::isfinite(c.sim_time_s)) fail("sim_time_s must be > 0");
  if (c.enb_count < 1) fail("enb_count must be >= 1");
  if (c.ue_count < 0) fail("ue_count must be >= 0");
  if (!finite_nonneg(c.ue_speed_mps)) fail("ue_speed_mps must be >= 0");
  if (!(c.handover_interval_s > 0.0)) fail("handover_interval_s must be > 0");
  if (!(c.enb_spacing_m > 0.0) || !std::isfinite(c.enb_spacing_m)) {
    fail("enb_spacing_m must be > 0");
  }
  if (!finite_nonneg(c.traffic_peak_bps)) fail("traffic_peak_bps must be >= 0");
  if (!(c.traffic_duty_cycle > 0.0 && c.traffic_duty_cycle <= 1.0)) {
    fail("traffic_duty_cycle must lie in (0, 1]");
  }
  if (!(c.traffic_period_s > 0.0) || !std::isfinite(c.traffic_period_s)) {
    fail("traffic_period_s must be > 0");
  }
  if (!finite_nonneg(c.handover_gap_s)) fail("handover_gap_s must be >= 0");
  if (!finite_nonneg(c.initial_energy_j)) fail("initial_energy_j must be >= 0");
  for (const auto& w : c.sleep_schedule) {
    if (w.ru_index >= static_cast<std::size_t>(c.enb_count)) {
      fail("sleep window names RU " + std::to_string(w.ru_index) + " but enb_count is " +
           std::to_string(c.enb_count));
    }
  }
  for (int r = 0; r < c.enb_count; ++r) {
    apply_sleep_schedule(static_cast<std::size_t>(r), c.sleep_schedule, c.sim_time_s, 0.0);
  }
}

std::vector<RuNode> place_rus(const ScenarioConfig& config) {
  std::vector<RuNode> rus;
  for (int i = 0; i < config.enb_count; ++i) {
    rus.push_back({static_cast<std::size_t>(i), i * config.enb_spacing_m});
  }
  return rus;
}

std::size_t nearest_ru(double position_m, const ScenarioConfig& config) {
  std::size_t best = 0;
  double best_distance = std::abs(position_m);
  for (int i = 1; i < config.enb_count; ++i) {
    const double d = std::abs(position_m - i * config.enb_spacing_m);
    if (d < best_distance) {
      best = static_cast<std::size_t>(i);
      best_distance = d;
    }
  }
  return best;
}

std::vector<UeNode> place_ues(const ScenarioConfig& config) {
  const double span = span_of(config);
  std::vector<UeNode> ues;
  for (int i = 0; i < config.ue_count; ++i) {
    UeNode ue;
    ue.index = static_cast<std::size_t>(i);
    ue.position_m = (i + 0.5) * span / config.ue_count;
    ue.velocity_mps = (i % 2 == 0) ? config.ue_speed_mps : -config.ue_speed_mps;
    ue.serving_ru = nearest_ru(ue.position_m, config);
    ues.push_back(ue);
  }
  return ues;
}

UeNode step_mobility(UeNode ue, double dt_s, double span_m) {
  if (!(dt_s >= 0.0)) throw InvalidArgument("step_mobility: dt must be >= 0");
  if (dt_s == 0.0) return ue;
  if (!(span_m > 0.0)) {
    ue.position_m = 0.0;
    return ue;
  }
  // Unfold the reflecting segment [0, L] into a circle of circumference 2L.
  const double period = 2.0 * span_m;
  double m = std::fmod(ue.position_m + ue.velocity_mps * dt_s, period);
  if (m < 0.0) m += period;
  const double speed = std::abs(ue.velocity_mps);
  if (m == 0.0) {
    ue.position_m = 0.0;
    ue.velocity_mps = speed;
  } else if (m == span_m) {
    ue.position_m = span_m;
    ue.velocity_mps = -speed;
  } else if (m < span_m) {
    ue.position_m = m;
  } else {
    ue.position_m = period - m;
    ue.velocity_mps = -ue.velocity_mps;
  }
  return ue;
}

std::vector<HandoverEvent> schedule_handovers(const ScenarioConfig& config) {
  std::vector<HandoverEvent> events;
  const auto initial = place_ues(config);
  auto ues = initial;
  const double span = span_of(config);
  for (long k = 1;; ++k) {
    const double t = k * config.handover_interval_s;
    if (!(t < config.sim_time_s)) break;
    for (auto& ue : ues) {
      // Positions are evaluated in closed form from t = 0 so no drift accumulates.
      const UeNode moved = step_mobility(initial[ue.index], t, span);
      const std::size_t to = nearest_ru(moved.position_m, config);
      events.push_back({t, ue.index, ue.serving_ru, to});
      ue.serving_ru = to;
    }
  }
  return events;
}

std::vector<StateSegment> apply_sleep_schedule(std::size_t ru_index,
                                               std::span<const SleepWindow> windows,
                                               double sim_time_s, double p_tx_dbm) {
  std::vector<SleepWindow> mine;
  for (const auto& w : windows) {
    if (w.ru_index != ru_index) continue;
    if (!(w.start_s >= 0.0 && w.start_s < w.end_s && w.end_s <= sim_time_s)) {
      throw ConfigError("sleep window [" + format_number(w.start_s) + ", " +
                        format_number(w.end_s) + "] on RU " + std::to_string(ru_index) +
                        " must satisfy 0 <= start < end <= sim_time_s");
    }
    mine.push_back(w);
  }
  std::sort(mine.begin(), mine.end(),
            [](const SleepWindow& a, const SleepWindow& b) { return a.start_s < b.start_s; });
  for (std::size_t i = 1; i < mine.size(); ++i) {
    if (mine[i].start_s < mine[i - 1].end_s) {
      throw ConfigError("overlapping sleep windows on RU " + std::to_string(ru_index));
    }
  }

  std::vector<StateSegment> timeline;
  double cursor = 0.0;
  for (const auto& w : mine) {
    if (w.start_s > cursor) timeline.push_back({cursor, w.start_s, Active{p_tx_dbm}});
    if (!timeline.empty() && std::holds_alternative<Standby>(timeline.back().state) &&
        timeline.back().end_s == w.start_s) {
      timeline.back().end_s = w.end_s;  // back-to-back windows merge
    } else {
      timeline.push_back({w.start_s, w.end_s, Standby{}});
    }
    cursor = w.end_s;
  }
  if (cursor < sim_time_s) timeline.push_back({cursor, sim_time_s, Active{p_tx_dbm}});
  return timeline;
}

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::StateChange:
      return "state_change";
    case EventType::Handover:
      return "handover";
    case EventType::HandoverGapEnd:
      return "handover_gap_end";
    case EventType::Depletion:
      return "depletion";
  }
  return "unknown";
}

bool ScenarioResult::any_depleted() const {
  return std::any_of(rus.begin(), rus.end(),
                     [](const RuResult& r) { return r.depleted_at_s.has_value(); });
}

ScenarioResult run_scenario(const ScenarioConfig& config, const RuHardwareProfile& profile,
                            double p_tx_dbm) {
  check_config(config);
  check_profile(profile);
  dbm_to_watts(p_tx_dbm);

  const auto n_ru = static_cast<std::size_t>(config.enb_count);
  const double end_s = config.sim_time_s;

  std::vector<std::vector<StateSegment>> timelines;
  std::vector<EnergyLedger> ledgers;
  std::vector<EnergyLedger::DeviceId> devices;
  std::vector<bool> active(n_ru, true);
  for (std::size_t r = 0; r < n_ru; ++r) {
    timelines.push_back(apply_sleep_schedule(r, config.sleep_schedule, end_s, p_tx_dbm));
    ledgers.emplace_back(config.initial_energy_j, profile.v_dc);
    devices.push_back(ledgers.back().attach_device());
  }

  auto ues = place_ues(config);
  const auto handovers = schedule_handovers(config);
  std::vector<bool> in_gap(ues.size(), false);
  std::vector<double> gap_until(ues.size(), 0.0);

  ScenarioResult result;
  result.rus.resize(n_ru);

  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, std::greater<>> queue;
  std::uint64_t seq = 0;
  auto push = [&](double t, QueueKind kind, std::size_t a = 0, std::size_t b = 0) {
    queue.push({t, kind, seq++, a, b});
  };

  auto enter_state = [&](double t, std::size_t r, const RuState& state) {
    active[r] = std::holds_alternative<Active>(state);
    ledgers[r].set_current(devices[r], ru_current(profile, state));
    result.events.push_back({t, EventType::StateChange, r, std::nullopt, describe(state)});
  };

  for (std::size_t r = 0; r < n_ru; ++r) {
    enter_state(0.0, r, timelines[r].front().state);
    for (std::size_t s = 1; s < timelines[r].size(); ++s) {
      push(timelines[r][s].start_s, QueueKind::StateChange, r, s);
    }
  }
  for (std::size_t h = 0; h < handovers.size(); ++h) {
    if (handovers[h].is_cell_change()) push(handovers[h].time_s, QueueKind::Handover, h);
  }
  const double period = config.traffic_period_s;
  const double on_len = config.traffic_duty_cycle * period;
  bool traffic_on = true;
  if (config.traffic_duty_cycle < 1.0 && on_len < end_s) push(on_len, QueueKind::TrafficOff, 0, 0);
  push(end_s, QueueKind::End);

  auto integrate = [&](double t0, double t1) {
    const double dt = t1 - t0;
    if (!(dt > 0.0)) return;
    std::vector<LogEvent> depletions;
    for (std::size_t r = 0; r < n_ru; ++r) {
      const AdvanceReport rep = ledgers[r].advance(dt);
      result.rus[r].demanded_j += rep.demanded_j;
      if (rep.depleted_after_s) {
        const double at = t0 + *rep.depleted_after_s;
        result.rus[r].depleted_at_s = at;
        depletions.push_back({at, EventType::Depletion, r, std::nullopt,
                              "capacity " + format_number(config.initial_energy_j) + " J exhausted"});
      }
    }
    std::stable_sort(depletions.begin(), depletions.end(),
                     [](const LogEvent& a, const LogEvent& b) { return a.time_s < b.time_s; });
    result.events.insert(result.events.end(), depletions.begin(), depletions.end());
    if (!traffic_on) return;
    for (const auto& ue : ues) {
      if (in_gap[ue.index] || !active[ue.serving_ru]) continue;
      result.rus[ue.serving_ru].delivered_bits += config.traffic_peak_bps * dt;
    }
  };

  double now = 0.0;
  while (!queue.empty()) {
    const QueuedEvent ev = queue.top();
    queue.pop();
    integrate(now, ev.time_s);
    now = ev.time_s;
    if (ev.kind == QueueKind::End) break;
    switch (ev.kind) {
      case QueueKind::StateChange:
        enter_state(now, ev.a, timelines[ev.a][ev.b].state);
        break;
      case QueueKind::Handover: {
        const HandoverEvent& h = handovers[ev.a];
        ues[h.ue_index].serving_ru = h.to_ru;
        result.events.push_back({now, EventType::Handover, h.to_ru, h.ue_index,
                                 "from RU " + std::to_string(h.from_ru) + " to RU " +
                                     std::to_string(h.to_ru)});
        if (config.handover_gap_s > 0.0) {
          in_gap[h.ue_index] = true;
          gap_until[h.ue_index] = now + config.handover_gap_s;
          if (gap_until[h.ue_index] < end_s) {
            push(gap_until[h.ue_index], QueueKind::GapEnd, h.ue_index);
          }
        }
        break;
      }
      case QueueKind::GapEnd:
        if (in_gap[ev.a] && now >= gap_until[ev.a]) {
          in_gap[ev.a] = false;
          result.events.push_back({now, EventType::HandoverGapEnd, ues[ev.a].serving_ru, ev.a,
                                   "service resumed"});
        }
        break;
      case QueueKind::TrafficOff: {
        traffic_on = false;
        const double next_on = static_cast<double>(ev.b + 1) * period;
        if (next_on < end_s) push(next_on, QueueKind::TrafficOn, 0, ev.b + 1);
        break;
      }
      case QueueKind::TrafficOn: {
        traffic_on = true;
        const double next_off = static_cast<double>(ev.b) * period + on_len;
        if (next_off < end_s) push(next_off, QueueKind::TrafficOff, 0, ev.b);
        break;
      }
      case QueueKind::End:
        break;
    }
  }

  for (std::size_t r = 0; r < n_ru; ++r) {
    result.rus[r].consumed_j = ledgers[r].consumed_j();
    result.total_bits += result.rus[r].delivered_bits;
    result.total_consumed_j += result.rus[r].consumed_j;
  }
  return result;
}

std::string event_log_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "time_s,event_type,ru_index,ue_index,detail\n";
  for (const auto& e : result.events) {
    out << format_number(e.time_s) << ',' << to_string(e.type) << ','
        << (e.ru_index ? std::to_string(*e.ru_index) : "") << ','
        << (e.ue_index ? std::to_string(*e.ue_index) : "") << ',' << csv_field(e.detail) << '\n';
  }
  return out.str();
}

std::string scenario_result_json(const ScenarioResult& result, const ScenarioConfig& config,
                                 double p_tx_dbm) {
  using nlohmann::json;
  json doc;
  doc["p_tx_dbm"] = p_tx_dbm;
  json cfg{{"sim_time_s", config.sim_time_s},
           {"enb_count", config.enb_count},
           {"ue_count", config.ue_count},
           {"ue_speed_mps", config.ue_speed_mps},
           {"handover_interval_s", config.handover_interval_s},
           {"enb_spacing_m", config.enb_spacing_m},
           {"traffic_peak_bps", config.traffic_peak_bps},
           {"traffic_duty_cycle", config.traffic_duty_cycle},
           {"traffic_period_s", config.traffic_period_s},
           {"handover_gap_s", config.handover_gap_s},
           {"initial_energy_j", config.initial_energy_j}};
  json windows = json::array();
  for (const auto& w : config.sleep_schedule) {
    windows.push_back({{"ru_index", w.ru_index}, {"start_s", w.start_s}, {"end_s", w.end_s}});
  }
  cfg["sleep_schedule"] = windows;
  doc["config"] = cfg;

  json rus = json::array();
  for (std::size_t i = 0; i < result.rus.size(); ++i) {
    const auto& r = result.rus[i];
    rus.push_back({{"index", i},
                   {"consumed_j", r.consumed_j},
                   {"delivered_bits", r.delivered_bits},
                   {"demanded_j", r.demanded_j},
                   {"depleted_at_s", r.depleted_at_s ? json(*r.depleted_at_s) : json(nullptr)}});
  }
  doc["rus"] = rus;
  doc["total_bits"] = result.total_bits;
  doc["total_consumed_j"] = result.total_consumed_j;
  json events = json::array();
  for (const auto& e : result.events) {
    events.push_back({{"time_s", e.time_s},
                      {"event_type", to_string(e.type)},
                      {"ru_index", e.ru_index ? json(*e.ru_index) : json(nullptr)},
                      {"ue_index", e.ue_index ? json(*e.ue_index) : json(nullptr)},
                      {"detail", e.detail}});
  }
  doc["events"] = events;
  return doc.dump(2) + "\n";
}

}  // namespace ruenergy
