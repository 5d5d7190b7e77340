#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ruenergy/cell_classes.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/scenario.hpp"

using namespace ruenergy;

namespace {

ScenarioConfig roomy() {
  ScenarioConfig c;
  c.initial_energy_j = 1e9;
  return c;
}

oracle::Profile to_oracle(const RuHardwareProfile& p) {
  return {p.n_trx, p.eta_pa, p.losses.delta_dc, p.losses.delta_ms, p.losses.delta_cool,
          p.losses.delta_af, p.p_rf_w, p.p_bb_w, p.p_mmwave_w, p.p_sleep_w, p.v_dc};
}

// Oracle for one RU's energy: sum of state power times segment length.
long double timeline_energy(const RuHardwareProfile& p, const std::vector<StateSegment>& segs,
                            double p_tx_dbm) {
  const oracle::Profile o = to_oracle(p);
  long double e = 0.0L;
  for (const auto& s : segs) {
    const long double power = std::holds_alternative<Active>(s.state)
                                  ? oracle::active_power(o, p_tx_dbm)
                                  : oracle::standby_power(o);
    e += power * (static_cast<long double>(s.end_s) - s.start_s);
  }
  return e;
}

}  // namespace

TEST_CASE("all-standby schedule draws the sleep power only") {
  ScenarioConfig c;
  c.sleep_schedule = {{0, 0, 30}, {1, 0, 30}};
  const auto r = run_scenario(c, reference_profile(), 40.0);
  for (const auto& ru : r.rus) {
    CHECK(ru.consumed_j == doctest::Approx(17280.0).epsilon(1e-12));
    CHECK_FALSE(ru.depleted_at_s);
    CHECK(ru.delivered_bits == 0.0);
  }
}

TEST_CASE("reference profile at 40 dBm depletes the default budget") {
  const auto r = run_scenario(ScenarioConfig{}, reference_profile(), 40.0);
  for (const auto& ru : r.rus) {
    REQUIRE(ru.depleted_at_s);
    CHECK(*ru.depleted_at_s == doctest::Approx(static_cast<double>(oracle::kDepletion40dBmReference)).epsilon(1e-12));
    CHECK(ru.consumed_j == doctest::Approx(100000.0));
    CHECK(ru.demanded_j == doctest::Approx(static_cast<double>(oracle::kActive40dBmReference) * 30.0));
  }
  CHECK(r.any_depleted());
  int depletions = 0;
  for (const auto& e : r.events) depletions += e.type == EventType::Depletion;
  CHECK(depletions == 2);
}

TEST_CASE("delivered bits follow the traffic source only") {
  for (double p : {20.0, 33.0, 49.0}) {
    const auto r = run_scenario(ScenarioConfig{}, reference_profile(), p);
    CHECK(r.total_bits == doctest::Approx(6e8).epsilon(1e-12));
  }
  ScenarioConfig full = roomy();
  full.traffic_duty_cycle = 1.0;
  CHECK(run_scenario(full, reference_profile(), 30.0).total_bits == doctest::Approx(1.2e9));
}

TEST_CASE("handover schedule") {
  const auto hs = schedule_handovers(ScenarioConfig{});
  REQUIRE(hs.size() == 4);
  for (const auto& h : hs) CHECK(h.time_s == 15.0);
  int changes = 0;
  for (const auto& h : hs) changes += h.is_cell_change();
  CHECK(changes == 2);

  ScenarioConfig c;
  c.handover_interval_s = 10.0;
  std::vector<double> times;
  for (const auto& h : schedule_handovers(c)) {
    if (times.empty() || times.back() != h.time_s) times.push_back(h.time_s);
  }
  CHECK(times == std::vector<double>{10.0, 20.0});

  c.handover_interval_s = 40.0;
  CHECK(schedule_handovers(c).empty());
}

TEST_CASE("nearest RU") {
  ScenarioConfig c;
  CHECK(nearest_ru(10.0, c) == 0);
  CHECK(nearest_ru(25.0, c) == 0);
  CHECK(nearest_ru(25.0001, c) == 1);
  CHECK(nearest_ru(49.0, c) == 1);
  c.enb_count = 3;
  CHECK(nearest_ru(76.0, c) == 2);
  CHECK(nearest_ru(-5.0, c) == 0);
}

TEST_CASE("step_mobility") {
  SUBCASE("straight run") {
    const auto ue = step_mobility({0, 10.0, 1.5, 0}, 10.0, 50.0);
    CHECK(ue.position_m == 25.0);
    CHECK(ue.velocity_mps == 1.5);
  }
  SUBCASE("reflection at the far end") {
    const auto ue = step_mobility({0, 49.0, 1.5, 1}, 2.0, 50.0);
    CHECK(ue.position_m == doctest::Approx(48.0));
    CHECK(ue.velocity_mps == -1.5);
  }
  SUBCASE("reflection at the origin") {
    const auto ue = step_mobility({0, 1.0, -2.0, 0}, 1.0, 50.0);
    CHECK(ue.position_m == doctest::Approx(1.0));
    CHECK(ue.velocity_mps == 2.0);
  }
  SUBCASE("dt zero is the identity") {
    const auto ue = step_mobility({3, 17.0, -1.5, 1}, 0.0, 50.0);
    CHECK(ue.position_m == 17.0);
    CHECK(ue.velocity_mps == -1.5);
    CHECK(ue.serving_ru == 1);
  }
  SUBCASE("split steps agree and stay in bounds") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      UeNode ue{0, 50.0 * u(rng), (u(rng) < 0.5 ? -1 : 1) * 3.0 * u(rng), 0};
      const double a = 40.0 * u(rng), b = 40.0 * u(rng);
      const auto once = step_mobility(ue, a + b, 50.0);
      const auto twice = step_mobility(step_mobility(ue, a, 50.0), b, 50.0);
      CHECK(once.position_m >= 0.0);
      CHECK(once.position_m <= 50.0);
      CHECK(std::abs(once.position_m - twice.position_m) < 1e-9);
      CHECK(std::abs(once.velocity_mps) == std::abs(ue.velocity_mps));
    }
  }
  CHECK_THROWS_AS(step_mobility({}, -1.0, 50.0), InvalidArgument);
}

TEST_CASE("UE placement") {
  const auto ues = place_ues(ScenarioConfig{});
  REQUIRE(ues.size() == 4);
  CHECK(ues[0].position_m == 6.25);
  CHECK(ues[3].position_m == 43.75);
  CHECK(ues[0].velocity_mps == 1.5);
  CHECK(ues[1].velocity_mps == -1.5);
  CHECK(ues[0].serving_ru == 0);
  CHECK(ues[2].serving_ru == 1);
}

TEST_CASE("sleep timelines") {
  const std::vector<SleepWindow> w{{0, 10, 20}, {1, 0, 5}, {0, 20, 25}};
  const auto t0 = apply_sleep_schedule(0, w, 30.0, 33.0);
  REQUIRE(t0.size() == 3);
  CHECK(t0[0].end_s == 10.0);
  CHECK(std::holds_alternative<Standby>(t0[1].state));
  CHECK(t0[1].start_s == 10.0);
  CHECK(t0[1].end_s == 25.0);
  CHECK(std::get<Active>(t0[2].state).p_tx_dbm == 33.0);

  const auto t1 = apply_sleep_schedule(1, w, 30.0, 33.0);
  REQUIRE(t1.size() == 2);
  CHECK(std::holds_alternative<Standby>(t1[0].state));

  CHECK(apply_sleep_schedule(0, {}, 30.0, 20.0).size() == 1);

  const std::vector<SleepWindow> overlap{{0, 0, 10}, {0, 5, 15}};
  CHECK_THROWS_AS(apply_sleep_schedule(0, overlap, 30.0, 20.0), ConfigError);
  const std::vector<SleepWindow> beyond{{0, 25, 31}};
  CHECK_THROWS_AS(apply_sleep_schedule(0, beyond, 30.0, 20.0), ConfigError);
}

TEST_CASE("per-RU energy equals the sum over its timeline") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ScenarioConfig c = roomy();
    const double a = 29.0 * u(rng);
    const double b = a + (30.0 - a) * u(rng);
    if (b > a) c.sleep_schedule.push_back({static_cast<std::size_t>(trial % 2), a, b});
    const double p = 20.0 + 29.0 * u(rng);
    const auto profile = builtin_profile(all_cell_classes()[trial % 5]);
    const auto r = run_scenario(c, profile, p);
    for (std::size_t ru = 0; ru < r.rus.size(); ++ru) {
      const auto segs = apply_sleep_schedule(ru, c.sleep_schedule, c.sim_time_s, p);
      const double expected = static_cast<double>(timeline_energy(profile, segs, p));
      CHECK(std::abs(r.rus[ru].consumed_j - expected) <= 1e-9 * expected);
    }
  }
}

TEST_CASE("runs are deterministic") {
  ScenarioConfig c;
  c.handover_gap_s = 0.3;
  c.sleep_schedule = {{1, 3, 7}};
  const auto a = run_scenario(c, reference_profile(), 31.0);
  const auto b = run_scenario(c, reference_profile(), 31.0);
  CHECK(a == b);
  CHECK(event_log_csv(a) == event_log_csv(b));
}

TEST_CASE("a handover gap costs bits on cell changes only") {
  ScenarioConfig c = roomy();
  c.traffic_duty_cycle = 1.0;
  c.handover_gap_s = 0.5;
  const auto r = run_scenario(c, reference_profile(), 30.0);
  // two UEs change cell at 15 s and each loses half a second of 10 Mbit/s
  CHECK(r.total_bits == doctest::Approx(1.2e9 - 2 * 0.5 * 1e7));
  int gap_ends = 0;
  for (const auto& e : r.events) gap_ends += e.type == EventType::HandoverGapEnd;
  CHECK(gap_ends == 2);
}

TEST_CASE("sleeping RU serves nobody") {
  ScenarioConfig c = roomy();
  c.traffic_duty_cycle = 1.0;
  c.sleep_schedule = {{0, 0, 30}};
  const auto r = run_scenario(c, reference_profile(), 30.0);
  CHECK(r.rus[0].delivered_bits == 0.0);
  CHECK(r.rus[1].delivered_bits > 0.0);
}

TEST_CASE("configuration errors") {
  ScenarioConfig c;
  c.sleep_schedule = {{0, 0, 10}, {0, 5, 15}};
  CHECK_THROWS_AS(run_scenario(c, reference_profile(), 30.0), ConfigError);
  c.sleep_schedule = {{2, 0, 10}};
  CHECK_THROWS_AS(check_config(c), ConfigError);
  c = ScenarioConfig{};
  c.traffic_duty_cycle = 0.0;
  CHECK_THROWS_AS(check_config(c), ConfigError);
  c = ScenarioConfig{};
  c.sim_time_s = -1.0;
  CHECK_THROWS_AS(check_config(c), ConfigError);
}

TEST_CASE("event log CSV") {
  ScenarioConfig c;
  c.sleep_schedule = {{1, 5, 10}};
  const auto csv = event_log_csv(run_scenario(c, reference_profile(), 40.0));
  CHECK(csv.rfind("time_s,event_type,ru_index,ue_index,detail\n", 0) == 0);
  CHECK(csv.find(",handover,") != std::string::npos);
  CHECK(csv.find(",depletion,") != std::string::npos);
  CHECK(csv.find("5,state_change,1,") != std::string::npos);
}
