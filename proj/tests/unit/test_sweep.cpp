#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/sweep.hpp"

using namespace ruenergy;

namespace {

SweepSpec roomy() {
  SweepSpec s;
  s.scenario.initial_energy_j = 1e9;
  return s;
}

}  // namespace

TEST_CASE("grid sizes") {
  SweepSpec s;
  CHECK(sweep_grid(s).size() == 30);
  CHECK(sweep_grid(s).back() == 49.0);
  s.step_db = 5.0;
  const auto g = sweep_grid(s);
  CHECK(g == std::vector<double>{20, 25, 30, 35, 40, 45});
  s.p_tx_start_dbm = s.p_tx_end_dbm = 30.0;
  CHECK(sweep_grid(s).size() == 1);
  s.p_tx_start_dbm = 0.0;
  s.p_tx_end_dbm = 0.3;
  s.step_db = 0.1;
  CHECK(sweep_grid(s).size() == 4);
}

TEST_CASE("invalid sweep bounds") {
  SweepSpec s;
  s.p_tx_start_dbm = 40;
  s.p_tx_end_dbm = 30;
  CHECK_THROWS_AS(run_sweep(s), ConfigError);
  s = SweepSpec{};
  s.step_db = 0.0;
  CHECK_THROWS_AS(check_sweep_spec(s), ConfigError);
  s.step_db = -1.0;
  CHECK_THROWS_AS(check_sweep_spec(s), ConfigError);
}

TEST_CASE("a failing grid point is named") {
  SweepSpec s;
  s.scenario.sleep_schedule = {{0, 0, 10}, {0, 5, 15}};
  try {
    run_sweep(s);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("p_tx = 20 dBm") != std::string::npos);
  }
}

TEST_CASE("single-point sweep has no gradients") {
  SweepSpec s = roomy();
  s.p_tx_start_dbm = s.p_tx_end_dbm = 30.0;
  const auto r = run_sweep(s);
  REQUIRE(r.rows.size() == 1);
  CHECK_FALSE(r.rows[0].dE_dp);
  CHECK_FALSE(r.rows[0].deta_dp);
  REQUIRE(r.peak_efficiency_point);
  CHECK(r.peak_efficiency_point->p_tx_dbm == 30.0);
}

TEST_CASE("finite differences") {
  const std::vector<double> x{0, 1, 2, 3};
  CHECK(finite_difference(x, std::vector<double>{0, 1, 4, 9}) == std::vector<double>{1, 2, 4, 5});
  CHECK(finite_difference(std::vector<double>{1, 3}, std::vector<double>{2, 8}) ==
        std::vector<double>{3, 3});
  CHECK(finite_difference(x, std::vector<double>{5, 5, 5, 5}) == std::vector<double>{0, 0, 0, 0});
  CHECK_THROWS_AS(finite_difference(std::vector<double>{1}, std::vector<double>{1}), InsufficientData);
  CHECK_THROWS_AS(finite_difference(std::vector<double>{}, std::vector<double>{}), InsufficientData);
  CHECK_THROWS_AS(finite_difference(std::vector<double>{0, 0}, std::vector<double>{1, 2}), InvalidArgument);
}

TEST_CASE("peak tie prefers the lower power") {
  std::vector<SweepRow> rows(3);
  rows[0] = {25.0, 1, 1, 4.0};
  rows[1] = {20.0, 1, 1, 4.0};
  rows[2] = {30.0, 1, 1, 3.0};
  CHECK(peak_efficiency(rows) == PeakPoint{20.0, 4.0});
  rows[2].efficiency_kbit_per_j = 5.0;
  CHECK(peak_efficiency(rows) == PeakPoint{30.0, 5.0});
  for (auto& r : rows) r.efficiency_kbit_per_j.reset();
  CHECK_THROWS_AS(peak_efficiency(rows), UndefinedEfficiency);
}

TEST_CASE("rows match the power oracle when no RU depletes") {
  const auto r = run_sweep(roomy());
  REQUIRE(r.rows.size() == 30);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.depleted);
    const long double expected = 2.0L * 30.0L * oracle::active_power(oracle::reference(), row.p_tx_dbm);
    CHECK(oracle::close(row.consumed_j, expected, 1e-12L));
    CHECK(row.total_bits == doctest::Approx(6e8));
    REQUIRE(row.efficiency_kbit_per_j);
    CHECK(*row.efficiency_kbit_per_j == doctest::Approx(6e5 / row.consumed_j));
  }
}

TEST_CASE("curve shape with a non-binding budget") {
  const auto r = run_sweep(roomy());
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].consumed_j > r.rows[i - 1].consumed_j);
    CHECK(*r.rows[i].efficiency_kbit_per_j < *r.rows[i - 1].efficiency_kbit_per_j);
    CHECK(*r.rows[i].dE_dp > 0.0);
    CHECK(*r.rows[i].deta_dp < 0.0);
  }
  auto at = [&](double p) {
    for (const auto& row : r.rows) {
      if (row.p_tx_dbm == p) return row.consumed_j;
    }
    FAIL("missing grid point");
    return 0.0;
  };
  CHECK(at(49) / at(30) > at(30) / at(20));
  REQUIRE(r.peak_efficiency_point);
  CHECK(r.peak_efficiency_point->p_tx_dbm == 20.0);
}

TEST_CASE("default budget depletes every point") {
  const auto r = run_sweep(SweepSpec{});
  for (const auto& row : r.rows) {
    CHECK(row.depleted);
    CHECK(row.consumed_j == doctest::Approx(200000.0));
  }
}

TEST_CASE("thread count does not change the result") {
  SweepSpec s = roomy();
  s.scenario.handover_gap_s = 0.2;
  const auto serial = run_sweep(s, 1);
  for (unsigned t : {2u, 3u, 8u, 0u}) {
    const auto parallel = run_sweep(s, t);
    CHECK(parallel.rows == serial.rows);
    CHECK(parallel.peak_efficiency_point == serial.peak_efficiency_point);
  }
}

TEST_CASE("CSV round trip") {
  SweepSpec s = roomy();
  s.step_db = 0.7;
  const auto r = run_sweep(s);
  const std::string csv = emit_tables(r, TableFormat::Csv);
  CHECK(csv.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  auto back = parse_sweep_csv(csv);
  REQUIRE(back.size() == r.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    back[i].depleted = r.rows[i].depleted;
    CHECK(back[i] == r.rows[i]);
  }
  CHECK_THROWS_AS(parse_sweep_csv("nope\n1,2,3,4,5,6\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_csv(std::string(kSweepCsvHeader) + "\n1,2,3\n"), ConfigError);
}

TEST_CASE("JSON document") {
  SweepSpec s = roomy();
  s.step_db = 10.0;
  const auto doc = nlohmann::json::parse(emit_tables(run_sweep(s), TableFormat::Doc));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["peak_efficiency_point"]["p_tx_dbm"] == 20.0);
  CHECK(doc["metadata"]["tool_version"].is_string());
  CHECK(doc["metadata"]["timestamp_utc"].get<std::string>().back() == 'Z');
}

TEST_CASE("format names") {
  CHECK(parse_table_format("csv") == TableFormat::Csv);
  CHECK(parse_table_format("doc") == TableFormat::Doc);
  CHECK_THROWS_AS(parse_table_format("xml"), InvalidArgument);
}
