#include "ruenergy/config_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"

namespace ruenergy {

namespace {

namespace pt = boost::property_tree;

pt::ptree parse_ini(std::string_view text) {
  std::istringstream in{std::string(text)};
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [key, node] : tree) {
    if (node.empty()) throw ConfigError("key '" + key + "' must appear inside a [section]");
  }
  return tree;
}

double to_number(const std::string& section, const std::string& key, const std::string& value) {
  if (auto v = parse_number(value)) return *v;
  throw ConfigError("[" + section + "] " + key + ": expected a number, got '" + value + "'");
}

int to_int(const std::string& section, const std::string& key, const std::string& value) {
  if (auto v = parse_integer(value)) return static_cast<int>(*v);
  throw ConfigError("[" + section + "] " + key + ": expected an integer, got '" + value + "'");
}

bool to_bool(const std::string& section, const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("[" + section + "] " + key + ": expected true or false, got '" + value + "'");
}

using Setter = std::function<void(const std::string&)>;

// Applies each key of a section through its setter; unknown keys are an error.
void apply_section(const std::string& section, const pt::ptree& node,
                   const std::map<std::string, Setter>& setters) {
  for (const auto& [key, child] : node) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("[" + section + "] unknown key '" + key + "'");
    }
    it->second(child.data());
  }
}

struct ProfileKeys {
  RuHardwareProfile& p;
  std::optional<MmWaveBreakdown> breakdown_override;
  std::set<std::string> seen;

  std::map<std::string, Setter> setters() {
    const std::string s = "profile";
    auto num = [this, s](const char* key, double& field) {
      return std::pair<std::string, Setter>{key, [this, s, key, &field](const std::string& v) {
                                              field = to_number(s, key, v);
                                              seen.insert(key);
                                            }};
    };
    auto part = [this, s](const char* key, double MmWaveBreakdown::*member) {
      return std::pair<std::string, Setter>{key, [this, s, key, member](const std::string& v) {
                                              if (!breakdown_override) breakdown_override.emplace();
                                              (*breakdown_override).*member = to_number(s, key, v);
                                              seen.insert(key);
                                            }};
    };
    return {
        {"cell_class",
         [this](const std::string& v) {
           try {
             p.cell_class = parse_cell_class(v);
           } catch (const InvalidArgument& e) {
             throw ConfigError(std::string("[profile] cell_class: ") + e.what());
           }
           seen.insert("cell_class");
         }},
        {"n_trx",
         [this, s](const std::string& v) {
           p.n_trx = to_int(s, "n_trx", v);
           seen.insert("n_trx");
         }},
        num("eta_pa", p.eta_pa),
        num("delta_dc", p.losses.delta_dc),
        num("delta_ms", p.losses.delta_ms),
        num("delta_cool", p.losses.delta_cool),
        num("delta_af", p.losses.delta_af),
        num("p_rf_w", p.p_rf_w),
        num("p_bb_w", p.p_bb_w),
        num("p_mmwave_w", p.p_mmwave_w),
        part("p_precoding", &MmWaveBreakdown::p_precoding),
        part("p_routing", &MmWaveBreakdown::p_routing),
        part("p_calib", &MmWaveBreakdown::p_calib),
        num("p_sleep_w", p.p_sleep_w),
        num("v_dc", p.v_dc),
    };
  }

  // Reconciles P_mmWave with its breakdown after all keys are read.
  void finish() {
    const bool any_part = seen.count("p_precoding") || seen.count("p_routing") || seen.count("p_calib");
    if (any_part) {
      if (!(seen.count("p_precoding") && seen.count("p_routing") && seen.count("p_calib"))) {
        throw ConfigError("[profile] p_precoding, p_routing and p_calib must be given together");
      }
      p.mmwave_breakdown = breakdown_override;
      if (!seen.count("p_mmwave_w")) p.p_mmwave_w = mmwave_overhead(*breakdown_override);
    } else if (seen.count("p_mmwave_w")) {
      p.mmwave_breakdown.reset();
    }
  }
};

const char* const kRequiredProfileKeys[] = {"cell_class", "n_trx",  "eta_pa",     "delta_dc",
                                            "delta_ms",   "delta_cool", "delta_af", "p_rf_w",
                                            "p_bb_w",     "p_mmwave_w", "p_sleep_w", "v_dc"};

const pt::ptree& only_section(const pt::ptree& tree, const std::string& name) {
  for (const auto& [key, node] : tree) {
    if (key != name) throw ConfigError("unknown section [" + key + "], expected [" + name + "]");
  }
  auto it = tree.find(name);
  if (it == tree.not_found()) throw ConfigError("missing [" + name + "] section");
  return it->second;
}

void rethrow_as_config(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string profile_to_ini(const RuHardwareProfile& p) {
  std::ostringstream out;
  out << "[profile]\n"
      << "cell_class = " << to_string(p.cell_class) << '\n'
      << "n_trx = " << p.n_trx << '\n'
      << "eta_pa = " << format_number(p.eta_pa) << '\n'
      << "delta_dc = " << format_number(p.losses.delta_dc) << '\n'
      << "delta_ms = " << format_number(p.losses.delta_ms) << '\n'
      << "delta_cool = " << format_number(p.losses.delta_cool) << '\n'
      << "delta_af = " << format_number(p.losses.delta_af) << '\n'
      << "p_rf_w = " << format_number(p.p_rf_w) << '\n'
      << "p_bb_w = " << format_number(p.p_bb_w) << '\n'
      << "p_mmwave_w = " << format_number(p.p_mmwave_w) << '\n';
  if (p.mmwave_breakdown) {
    out << "p_precoding = " << format_number(p.mmwave_breakdown->p_precoding) << '\n'
        << "p_routing = " << format_number(p.mmwave_breakdown->p_routing) << '\n'
        << "p_calib = " << format_number(p.mmwave_breakdown->p_calib) << '\n';
  }
  out << "p_sleep_w = " << format_number(p.p_sleep_w) << '\n'
      << "v_dc = " << format_number(p.v_dc) << '\n';
  return out.str();
}

RuHardwareProfile profile_from_ini(std::string_view text) {
  const pt::ptree tree = parse_ini(text);
  const pt::ptree& section = only_section(tree, "profile");
  RuHardwareProfile p;
  ProfileKeys keys{p, std::nullopt, {}};
  apply_section("profile", section, keys.setters());
  for (const char* k : kRequiredProfileKeys) {
    if (!keys.seen.count(k)) throw ConfigError(std::string("[profile] missing key '") + k + "'");
  }
  keys.finish();
  check_profile(p);
  return p;
}

std::string ledger_to_ini(const EnergySource& s) {
  std::ostringstream out;
  out << "[ledger]\n"
      << "initial_j = " << format_number(s.initial_j) << '\n'
      << "remaining_j = " << format_number(s.remaining_j) << '\n'
      << "voltage_v = " << format_number(s.voltage_v) << '\n'
      << "depleted = " << (s.depleted ? "true" : "false") << '\n';
  return out.str();
}

EnergySource ledger_from_ini(std::string_view text) {
  const pt::ptree tree = parse_ini(text);
  const pt::ptree& section = only_section(tree, "ledger");
  EnergySource s;
  std::set<std::string> seen;
  const std::string name = "ledger";
  auto num = [&](const char* key, double& field) {
    return std::pair<std::string, Setter>{key, [&, key](const std::string& v) {
                                            field = to_number(name, key, v);
                                            seen.insert(key);
                                          }};
  };
  apply_section(name, section,
                {num("initial_j", s.initial_j), num("remaining_j", s.remaining_j),
                 num("voltage_v", s.voltage_v),
                 {"depleted", [&](const std::string& v) {
                    s.depleted = to_bool(name, "depleted", v);
                    seen.insert("depleted");
                  }}});
  for (const char* k : {"initial_j", "remaining_j", "voltage_v", "depleted"}) {
    if (!seen.count(k)) throw ConfigError(std::string("[ledger] missing key '") + k + "'");
  }
  check_source(s);
  return s;
}

std::vector<SleepWindow> parse_sleep_schedule(std::string_view text) {
  std::vector<SleepWindow> windows;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view entry = trim(text.substr(start, comma - start));
    start = comma + 1;
    if (entry.empty()) {
      if (comma == text.size()) break;
      continue;
    }
    const std::size_t c1 = entry.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : entry.find(':', c1 + 1);
    auto bad = [&] {
      return ConfigError("[scenario] sleep_schedule: entry '" + std::string(entry) +
                         "' is not ru:start_s:end_s");
    };
    if (c2 == std::string_view::npos) throw bad();
    const auto ru = parse_integer(trim(entry.substr(0, c1)));
    const auto t0 = parse_number(trim(entry.substr(c1 + 1, c2 - c1 - 1)));
    const auto t1 = parse_number(trim(entry.substr(c2 + 1)));
    if (!ru || *ru < 0 || !t0 || !t1) throw bad();
    windows.push_back({static_cast<std::size_t>(*ru), *t0, *t1});
  }
  return windows;
}

std::string format_sleep_schedule(const std::vector<SleepWindow>& windows) {
  std::string out;
  for (const auto& w : windows) {
    if (!out.empty()) out += ", ";
    out += std::to_string(w.ru_index) + ":" + format_number(w.start_s) + ":" + format_number(w.end_s);
  }
  return out;
}

CliConfig parse_cli_config(std::string_view text) {
  const pt::ptree tree = parse_ini(text);
  CliConfig cfg;
  for (const auto& [name, node] : tree) {
    if (name == "profile") {
      auto builtin = node.find("builtin");
      if (builtin != node.not_found()) {
        if (node.size() != 1) {
          throw ConfigError("[profile] builtin cannot be combined with explicit profile fields");
        }
        rethrow_as_config([&] {
          const CellClass c = parse_cell_class(builtin->second.data());
          cfg.profile = builtin_profile(c);
          cfg.profile_source = "builtin:" + std::string(to_string(c));
        });
      } else {
        ProfileKeys keys{cfg.profile, std::nullopt, {}};
        apply_section("profile", node, keys.setters());
        keys.finish();
        cfg.profile_source = "explicit";
      }
      check_profile(cfg.profile);
    } else if (name == "scenario") {
      ScenarioConfig& sc = cfg.scenario;
      const std::string s = "scenario";
      auto num = [&](const char* key, double& field) {
        return std::pair<std::string, Setter>{
            key, [&, key](const std::string& v) { field = to_number(s, key, v); }};
      };
      auto integer = [&](const char* key, int& field) {
        return std::pair<std::string, Setter>{
            key, [&, key](const std::string& v) { field = to_int(s, key, v); }};
      };
      apply_section(s, node,
                    {num("sim_time_s", sc.sim_time_s), integer("enb_count", sc.enb_count),
                     integer("ue_count", sc.ue_count), num("ue_speed_mps", sc.ue_speed_mps),
                     num("handover_interval_s", sc.handover_interval_s),
                     num("enb_spacing_m", sc.enb_spacing_m),
                     num("traffic_peak_bps", sc.traffic_peak_bps),
                     num("traffic_duty_cycle", sc.traffic_duty_cycle),
                     num("traffic_period_s", sc.traffic_period_s),
                     num("handover_gap_s", sc.handover_gap_s),
                     num("initial_energy_j", sc.initial_energy_j),
                     {"sleep_schedule", [&](const std::string& v) {
                        sc.sleep_schedule = parse_sleep_schedule(v);
                      }}});
      check_config(sc);
    } else if (name == "sweep") {
      const std::string s = "sweep";
      apply_section(s, node,
                    {{"p_tx_start_dbm",
                      [&](const std::string& v) { cfg.p_tx_start_dbm = to_number(s, "p_tx_start_dbm", v); }},
                     {"p_tx_end_dbm",
                      [&](const std::string& v) { cfg.p_tx_end_dbm = to_number(s, "p_tx_end_dbm", v); }},
                     {"step_db", [&](const std::string& v) { cfg.step_db = to_number(s, "step_db", v); }}});
    } else if (name == "output") {
      apply_section("output", node,
                    {{"format",
                      [&](const std::string& v) {
                        rethrow_as_config([&] { cfg.output.format = parse_table_format(v); });
                      }},
                     {"path", [&](const std::string& v) { cfg.output.path = v; }},
                     {"events_path", [&](const std::string& v) { cfg.output.events_path = v; }}});
    } else {
      throw ConfigError("unknown section [" + name +
                        "] (expected profile, scenario, sweep or output)");
    }
  }
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

CliConfig load_cli_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_cli_config(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace ruenergy
