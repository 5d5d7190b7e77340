#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruenergy/cell_classes.hpp"
#include "ruenergy/config_io.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"
#include "ruenergy/power_model.hpp"
#include "ruenergy/scenario.hpp"
#include "ruenergy/sweep.hpp"
#include "ruenergy/units.hpp"
#include "ruenergy/version.hpp"

namespace ruenergy::cli {

namespace {

// Options shared by every command that needs a profile and scenario.
struct CommonOptions {
  std::string config_path;
  std::string builtin;
  std::optional<double> feeder_loss_db;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--config", o.config_path, "Sectioned config file (profile/scenario/sweep/output)");
  cmd.add_option("--builtin", o.builtin, "Use a builtin profile: macro, micro, pico, femto, mmwave");
  cmd.add_option("--feeder-loss-db", o.feeder_loss_db,
                 "Antenna feeder loss in dB applied on top of the profile (e.g. 3)");
}

// flag > file > default
CliConfig resolve(const CommonOptions& o) {
  CliConfig cfg = o.config_path.empty() ? CliConfig{} : load_cli_config(o.config_path);
  if (!o.builtin.empty()) {
    const CellClass c = parse_cell_class(o.builtin);
    cfg.profile = builtin_profile(c);
    cfg.profile_source = "builtin:" + std::string(to_string(c));
  }
  if (o.feeder_loss_db) cfg.profile.losses.delta_af = db_loss_to_fraction(*o.feeder_loss_db);
  check_profile(cfg.profile);
  return cfg;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

unsigned threads_from_env() {
  if (const char* v = std::getenv("RUENERGY_THREADS")) {
    if (auto n = parse_integer(v); n && *n >= 0) return static_cast<unsigned>(*n);
  }
  return 0;
}

// ---------------------------------------------------------------- power

struct PowerOptions {
  CommonOptions common;
  std::string state = "active";
  std::optional<double> tx_dbm;
  std::string format = "text";
};

int cmd_power(const PowerOptions& o, std::ostream& out) {
  const CliConfig cfg = resolve(o.common);
  RuState state;
  if (o.state == "standby") {
    state = Standby{};
  } else if (o.state == "active") {
    if (!o.tx_dbm) throw InvalidArgument("--tx-dbm is required for the active state");
    state = Active{*o.tx_dbm};
  } else {
    throw InvalidArgument("unknown state '" + o.state + "' (valid: active, standby)");
  }
  const PowerBreakdown b = power_breakdown(cfg.profile, state);

  if (o.format == "json") {
    nlohmann::json doc{{"profile", cfg.profile_source},
                       {"cell_class", to_string(cfg.profile.cell_class)},
                       {"state", describe(state)},
                       {"n_trx", b.n_trx},
                       {"p_tx_w", b.p_tx_w},
                       {"p_pa_w", b.p_pa_w},
                       {"p0_w", b.p0_w},
                       {"p_sleep_w", b.p_sleep_w},
                       {"loss_divisor", b.loss_divisor},
                       {"p_total_w", b.total_w},
                       {"current_a", b.current_a},
                       {"v_dc", cfg.profile.v_dc}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  if (o.format != "text") throw InvalidArgument("unknown format '" + o.format + "' (valid: text, json)");

  out << "profile: " << cfg.profile_source << " (" << to_string(cfg.profile.cell_class) << ")\n"
      << "state: " << describe(state) << '\n'
      << "n_trx: " << b.n_trx << '\n';
  if (b.active) {
    out << "p_tx_w: " << format_number(b.p_tx_w) << '\n'
        << "p_pa_w: " << format_number(b.p_pa_w) << '\n'
        << "p0_w: " << format_number(b.p0_w) << '\n'
        << "loss_divisor: " << format_number(b.loss_divisor) << '\n';
  } else {
    out << "p_sleep_w: " << format_number(b.p_sleep_w) << '\n';
  }
  out << "p_total_w: " << format_number(b.total_w) << '\n'
      << "v_dc: " << format_number(cfg.profile.v_dc) << '\n'
      << "current_a: " << format_number(b.current_a) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- profiles

struct ProfilesOptions {
  std::string cell_class;
  bool validate = false;
  std::optional<double> tx_dbm;
};

std::string range_note(const Range& r) {
  return "class range [" + format_number(r.min) + ", " + format_number(r.max) + "], midpoint";
}

void print_profile(const RuHardwareProfile& p, std::ostream& out) {
  const CellClassRanges& r = class_ranges(p.cell_class);
  auto line = [&](std::string_view key, const std::string& value, const std::string& note) {
    out << "  " << std::left << std::setw(12) << key << std::setw(10) << value << note << '\n';
  };
  out << to_string(p.cell_class) << '\n';
  line("n_trx", std::to_string(p.n_trx), range_note(r.n_trx) + " (rounded)");
  line("eta_pa", format_number(p.eta_pa), range_note(r.eta_pa));
  line("p_rf_w", format_number(p.p_rf_w), range_note(r.p_rf_w));
  line("p_bb_w", format_number(p.p_bb_w), range_note(r.p_bb_w));
  if (p.mmwave_breakdown) {
    line("p_mmwave_w", format_number(p.p_mmwave_w),
         "precoding " + format_number(p.mmwave_breakdown->p_precoding) + " + routing " +
             format_number(p.mmwave_breakdown->p_routing) + " + calibration " +
             format_number(p.mmwave_breakdown->p_calib) + ", within [" +
             format_number(r.p_mmwave_w.min) + ", " + format_number(r.p_mmwave_w.max) + "]");
  } else {
    line("p_mmwave_w", format_number(p.p_mmwave_w), "sub-6 GHz, no mmWave processing");
  }
  line("delta_dc", format_number(p.losses.delta_dc), "typical DC-DC loss 5-7 %");
  line("delta_ms", format_number(p.losses.delta_ms), "typical mains supply loss 9 %");
  line("delta_cool", format_number(p.losses.delta_cool), "10 % active cooling on macro sites only");
  line("delta_af", format_number(p.losses.delta_af), "feeder loss off (remote radio head)");
  line("p_sleep_w", format_number(p.p_sleep_w), "10 % of the class midpoint P0");
  line("v_dc", format_number(p.v_dc), "DC bus voltage");
  out << "  " << std::left << std::setw(12) << "p_tx_max" << std::setw(10)
      << format_number(r.p_tx_max_dbm.midpoint()) << "dBm, class range ["
      << format_number(r.p_tx_max_dbm.min) << ", " << format_number(r.p_tx_max_dbm.max) << "]\n";
}

int cmd_profiles(const ProfilesOptions& o, std::ostream& out) {
  std::vector<CellClass> classes(all_cell_classes().begin(), all_cell_classes().end());
  if (!o.cell_class.empty()) classes = {parse_cell_class(o.cell_class)};
  bool all_ok = true;
  for (CellClass c : classes) {
    const RuHardwareProfile p = builtin_profile(c);
    print_profile(p, out);
    if (o.validate) {
      const ValidationReport rep = validate_profile_against_class(p, class_ranges(c), o.tx_dbm);
      out << "  validation: " << (rep.ok() ? "pass" : "FAIL") << '\n';
      for (const auto& chk : rep.checks) {
        out << "    " << std::left << std::setw(12) << chk.field << std::setw(10)
            << to_string(chk.status) << format_number(chk.value);
        if (chk.range) {
          out << " in [" << format_number(chk.range->min) << ", " << format_number(chk.range->max)
              << "]";
        }
        out << '\n';
      }
      for (const auto& w : rep.warnings) out << "    warning: " << w << '\n';
      all_ok = all_ok && rep.ok();
    }
  }
  return all_ok ? kExitOk : kExitDomainError;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  CommonOptions common;
  std::optional<double> tx_dbm;
  std::string result_path;
  std::string events_path;
  std::optional<double> sim_time_s;
  std::optional<double> initial_energy_j;
  std::optional<double> handover_gap_s;
  std::optional<std::string> sleep_schedule;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  CliConfig cfg = resolve(o.common);
  if (o.sim_time_s) cfg.scenario.sim_time_s = *o.sim_time_s;
  if (o.initial_energy_j) cfg.scenario.initial_energy_j = *o.initial_energy_j;
  if (o.handover_gap_s) cfg.scenario.handover_gap_s = *o.handover_gap_s;
  if (o.sleep_schedule) cfg.scenario.sleep_schedule = parse_sleep_schedule(*o.sleep_schedule);
  if (!o.tx_dbm) throw InvalidArgument("--tx-dbm is required");

  const ScenarioResult result = run_scenario(cfg.scenario, cfg.profile, *o.tx_dbm);

  const std::string result_path = o.result_path.empty() ? cfg.output.path : o.result_path;
  const std::string events_path = o.events_path.empty() ? cfg.output.events_path : o.events_path;
  emit(result_path, scenario_result_json(result, cfg.scenario, *o.tx_dbm), out);
  if (!events_path.empty()) emit(events_path, event_log_csv(result), out);

  std::ostream& summary = (result_path.empty() || result_path == "-") ? err : out;
  summary << "consumed " << format_number(result.total_consumed_j) << " J, delivered "
          << format_number(result.total_bits) << " bits";
  if (result.any_depleted()) summary << " (energy depleted, see event log)";
  summary << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  CommonOptions common;
  std::optional<double> start_dbm;
  std::optional<double> end_dbm;
  std::optional<double> step_db;
  std::string format;
  std::string out_path;
  std::optional<unsigned> threads;
  std::optional<double> initial_energy_j;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  CliConfig cfg = resolve(o.common);
  if (o.initial_energy_j) cfg.scenario.initial_energy_j = *o.initial_energy_j;

  SweepSpec spec;
  spec.p_tx_start_dbm = o.start_dbm.value_or(cfg.p_tx_start_dbm);
  spec.p_tx_end_dbm = o.end_dbm.value_or(cfg.p_tx_end_dbm);
  spec.step_db = o.step_db.value_or(cfg.step_db);
  spec.scenario = cfg.scenario;
  spec.profile = cfg.profile;
  const TableFormat format = o.format.empty() ? cfg.output.format : parse_table_format(o.format);
  const std::string path = o.out_path.empty() ? cfg.output.path : o.out_path;

  const SweepResult result = run_sweep(spec, o.threads.value_or(threads_from_env()));
  emit(path, emit_tables(result, format), out);

  std::ostream& summary = (path.empty() || path == "-") ? err : out;
  if (result.peak_efficiency_point) {
    summary << "peak: " << format_number(result.peak_efficiency_point->p_tx_dbm) << " dBm, "
            << format_number(result.peak_efficiency_point->efficiency_kbit_per_j) << " kbit/J\n";
  } else {
    summary << "peak: undefined (no energy consumed)\n";
  }
  const auto depleted = std::count_if(result.rows.begin(), result.rows.end(),
                                      [](const SweepRow& r) { return r.depleted; });
  if (depleted > 0) {
    summary << "note: " << depleted << " of " << result.rows.size()
            << " grid points exhausted the RU energy source\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RU power, energy and Tx-power sweep toolkit", "ru-energy"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  PowerOptions power;
  auto* power_cmd = app.add_subcommand("power", "Power and current of one RU operating point");
  add_common(*power_cmd, power.common);
  power_cmd->add_option("--state", power.state, "active or standby")->capture_default_str();
  power_cmd->add_option("--tx-dbm", power.tx_dbm, "Per-transceiver transmit power in dBm");
  power_cmd->add_option("--format", power.format, "text or json")->capture_default_str();

  ProfilesOptions profiles;
  auto* profiles_cmd = app.add_subcommand("profiles", "List builtin cell-class profiles");
  profiles_cmd->add_option("--class", profiles.cell_class, "Only this class");
  profiles_cmd->add_flag("--validate", profiles.validate, "Validate each preset against its class ranges");
  profiles_cmd->add_option("--tx-dbm", profiles.tx_dbm, "Operating point for validation warnings");

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the two-cell scenario at one Tx power");
  add_common(*simulate_cmd, simulate.common);
  simulate_cmd->add_option("--tx-dbm", simulate.tx_dbm, "Per-transceiver transmit power in dBm");
  simulate_cmd->add_option("--result", simulate.result_path, "Result document path (default stdout)");
  simulate_cmd->add_option("--events", simulate.events_path, "Event log CSV path");
  simulate_cmd->add_option("--sim-time", simulate.sim_time_s, "Simulated seconds");
  simulate_cmd->add_option("--initial-energy-j", simulate.initial_energy_j, "Energy per RU source");
  simulate_cmd->add_option("--handover-gap", simulate.handover_gap_s, "Service gap per handover, s");
  simulate_cmd->add_option("--sleep", simulate.sleep_schedule, "Sleep windows ru:start:end,...");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tx-power sweep with efficiency and gradients");
  add_common(*sweep_cmd, sweep.common);
  sweep_cmd->add_option("--start", sweep.start_dbm, "First grid point, dBm");
  sweep_cmd->add_option("--end", sweep.end_dbm, "Last grid point, dBm");
  sweep_cmd->add_option("--step", sweep.step_db, "Grid step, dB");
  sweep_cmd->add_option("--format", sweep.format, "csv or doc");
  sweep_cmd->add_option("--out", sweep.out_path, "Output path (default stdout)");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "Worker threads; 0 = all cores (env RUENERGY_THREADS)");
  sweep_cmd->add_option("--initial-energy-j", sweep.initial_energy_j, "Energy per RU source");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomainError;
  }

  try {
    if (*power_cmd) return cmd_power(power, out);
    if (*profiles_cmd) return cmd_profiles(profiles, out);
    if (*simulate_cmd) return cmd_simulate(simulate, out, err);
    if (*sweep_cmd) return cmd_sweep(sweep, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitDomainError;
}

}  // namespace ruenergy::cli
