#include <benchmark/benchmark.h>

#include "ruenergy/cell_classes.hpp"
#include "ruenergy/energy_ledger.hpp"
#include "ruenergy/power_model.hpp"
#include "ruenergy/scenario.hpp"
#include "ruenergy/sweep.hpp"

namespace {

void BM_ActivePower(benchmark::State& state) {
  const auto p = ruenergy::reference_profile();
  double tx = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ruenergy::active_power(p, tx));
    tx = tx < 49.0 ? tx + 0.5 : 20.0;
  }
}
BENCHMARK(BM_ActivePower);

void BM_LedgerAdvance(benchmark::State& state) {
  ruenergy::EnergyLedger ledger(1e300, 48.0);
  const auto dev = ledger.attach_device(213.6);
  for (auto _ : state) {
    ledger.set_current(dev, 213.6);
    benchmark::DoNotOptimize(ledger.advance(0.001));
  }
}
BENCHMARK(BM_LedgerAdvance);

void BM_Scenario(benchmark::State& state) {
  ruenergy::ScenarioConfig c;
  c.sim_time_s = static_cast<double>(state.range(0));
  c.initial_energy_j = 1e12;
  const auto p = ruenergy::reference_profile();
  for (auto _ : state) benchmark::DoNotOptimize(ruenergy::run_scenario(c, p, 40.0));
}
BENCHMARK(BM_Scenario)->Arg(30)->Arg(300)->Arg(3000);

// Default 30-point sweep at 1, 2 and 4 worker threads.
void BM_DefaultSweep(benchmark::State& state) {
  const ruenergy::SweepSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ruenergy::run_sweep(spec, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_DefaultSweep)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
