#include "ruenergy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ruenergy/energy_ledger.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"
#include "ruenergy/version.hpp"

namespace ruenergy {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

SweepRow evaluate_point(const SweepSpec& spec, double p_tx_dbm) {
  ScenarioResult r;
  try {
    r = run_scenario(spec.scenario, spec.profile, p_tx_dbm);
  } catch (const Error& e) {
    throw ConfigError("sweep point p_tx = " + format_number(p_tx_dbm) + " dBm: " + e.what());
  }
  SweepRow row;
  row.p_tx_dbm = p_tx_dbm;
  row.consumed_j = r.total_consumed_j;
  row.total_bits = r.total_bits;
  if (row.consumed_j > 0.0) row.efficiency_kbit_per_j = energy_efficiency(r.total_bits, r.total_consumed_j);
  row.depleted = r.any_depleted();
  return row;
}

}  // namespace

void check_sweep_spec(const SweepSpec& spec) {
  if (!std::isfinite(spec.p_tx_start_dbm) || !std::isfinite(spec.p_tx_end_dbm)) {
    throw ConfigError("sweep bounds must be finite");
  }
  if (spec.p_tx_start_dbm > spec.p_tx_end_dbm) {
    throw ConfigError("sweep start " + format_number(spec.p_tx_start_dbm) +
                      " dBm exceeds end " + format_number(spec.p_tx_end_dbm) + " dBm");
  }
  if (!(spec.step_db > 0.0) || !std::isfinite(spec.step_db)) {
    throw ConfigError("sweep step_db must be > 0");
  }
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  check_sweep_spec(spec);
  const double steps = (spec.p_tx_end_dbm - spec.p_tx_start_dbm) / spec.step_db;
  const auto n = static_cast<std::size_t>(std::floor(steps + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(spec.p_tx_start_dbm + i * spec.step_db);
  return grid;
}

std::vector<double> finite_difference(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("finite_difference: x and y differ in length");
  if (x.size() < 2) throw InsufficientData("finite_difference needs at least two points");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw InvalidArgument("finite_difference: x must be strictly increasing");
  }
  const std::size_t n = x.size();
  std::vector<double> d(n);
  d[0] = (y[1] - y[0]) / (x[1] - x[0]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
  return d;
}

PeakPoint peak_efficiency(std::span<const SweepRow> rows) {
  std::optional<PeakPoint> best;
  for (const auto& row : rows) {
    if (!row.efficiency_kbit_per_j) continue;
    const double eta = *row.efficiency_kbit_per_j;
    if (!best || eta > best->efficiency_kbit_per_j ||
        (eta == best->efficiency_kbit_per_j && row.p_tx_dbm < best->p_tx_dbm)) {
      best = PeakPoint{row.p_tx_dbm, eta};
    }
  }
  if (!best) throw UndefinedEfficiency("no sweep row has a defined energy efficiency");
  return *best;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  check_sweep_spec(spec);

  const std::vector<double> grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));

  // Each grid point writes only its own slot, so the reduction below is order-fixed.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = evaluate_point(spec, grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (rows.size() >= 2) {
    std::vector<double> p, energy;
    for (const auto& r : rows) {
      p.push_back(r.p_tx_dbm);
      energy.push_back(r.consumed_j);
    }
    const auto dE = finite_difference(p, energy);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].dE_dp = dE[i];

    const bool all_defined = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) {
      return r.efficiency_kbit_per_j.has_value();
    });
    if (all_defined) {
      std::vector<double> eta;
      for (const auto& r : rows) eta.push_back(*r.efficiency_kbit_per_j);
      const auto deta = finite_difference(p, eta);
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].deta_dp = deta[i];
    }
  }

  SweepResult result;
  result.spec = spec;
  result.rows = std::move(rows);
  try {
    result.peak_efficiency_point = peak_efficiency(result.rows);
  } catch (const UndefinedEfficiency&) {
    result.peak_efficiency_point.reset();
  }
  result.metadata = {utc_timestamp(), kVersion};
  return result;
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "doc" || name == "json") return TableFormat::Doc;
  throw InvalidArgument("unknown output format '" + std::string(name) +
                        "' (supported: csv, doc)");
}

std::string emit_tables(const SweepResult& result, TableFormat format) {
  if (format == TableFormat::Csv) {
    std::ostringstream out;
    out << kSweepCsvHeader << '\n';
    for (const auto& r : result.rows) {
      out << format_number(r.p_tx_dbm) << ',' << format_number(r.consumed_j) << ','
          << format_number(r.total_bits) << ',' << optional_field(r.efficiency_kbit_per_j) << ','
          << optional_field(r.dE_dp) << ',' << optional_field(r.deta_dp) << '\n';
    }
    return out.str();
  }

  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const SweepSpec& s = result.spec;
  json doc;
  doc["metadata"] = {{"timestamp_utc", result.metadata.timestamp_utc},
                     {"tool_version", result.metadata.tool_version},
                     {"spec",
                      {{"p_tx_start_dbm", s.p_tx_start_dbm},
                       {"p_tx_end_dbm", s.p_tx_end_dbm},
                       {"step_db", s.step_db},
                       {"cell_class", to_string(s.profile.cell_class)},
                       {"n_trx", s.profile.n_trx},
                       {"v_dc", s.profile.v_dc},
                       {"sim_time_s", s.scenario.sim_time_s},
                       {"enb_count", s.scenario.enb_count},
                       {"ue_count", s.scenario.ue_count},
                       {"initial_energy_j", s.scenario.initial_energy_j}}}};
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"p_tx_dbm", r.p_tx_dbm},
                    {"consumed_j", r.consumed_j},
                    {"total_bits", r.total_bits},
                    {"efficiency_kbit_per_j", opt(r.efficiency_kbit_per_j)},
                    {"dE_dp", opt(r.dE_dp)},
                    {"deta_dp", opt(r.deta_dp)},
                    {"depleted", r.depleted}});
  }
  doc["rows"] = rows;
  if (result.peak_efficiency_point) {
    doc["peak_efficiency_point"] = {
        {"p_tx_dbm", result.peak_efficiency_point->p_tx_dbm},
        {"efficiency_kbit_per_j", result.peak_efficiency_point->efficiency_kbit_per_j}};
  } else {
    doc["peak_efficiency_point"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::vector<SweepRow> parse_sweep_csv(std::string_view csv) {
  std::vector<SweepRow> rows;
  const auto lines = split(csv, '\n');
  if (lines.empty() || lines.front() != kSweepCsvHeader) {
    throw ConfigError("sweep CSV must start with the header '" + std::string(kSweepCsvHeader) + "'");
  }
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const auto f = split(lines[ln], ',');
    if (f.size() != 6) {
      throw ConfigError("sweep CSV line " + std::to_string(ln + 1) + ": expected 6 fields");
    }
    auto required = [&](std::string_view v) {
      auto x = parse_number(v);
      if (!x) throw ConfigError("sweep CSV line " + std::to_string(ln + 1) + ": bad number '" + std::string(v) + "'");
      return *x;
    };
    auto optional = [&](std::string_view v) -> std::optional<double> {
      if (v.empty()) return std::nullopt;
      return required(v);
    };
    SweepRow r;
    r.p_tx_dbm = required(f[0]);
    r.consumed_j = required(f[1]);
    r.total_bits = required(f[2]);
    r.efficiency_kbit_per_j = optional(f[3]);
    r.dE_dp = optional(f[4]);
    r.deta_dp = optional(f[5]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ruenergy
