#include <doctest.h>

#include <algorithm>

#include "ruenergy/cell_classes.hpp"
#include "ruenergy/errors.hpp"

using namespace ruenergy;

namespace {

const FieldCheck& find(const ValidationReport& r, const std::string& field) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const FieldCheck& c) { return c.field == field; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("ranges are ordered") {
  for (CellClass c : all_cell_classes()) {
    const CellClassRanges& r = class_ranges(c);
    CHECK(r.cell_class == c);
    for (const Range& x : {r.p_tx_max_dbm, r.backoff_db, r.pa_peak_dbm, r.eta_pa, r.p_pa_w, r.p_rf_w,
                           r.p_bb_w, r.p_mmwave_w, r.misc_overhead_frac, r.power_per_trx_w,
                           r.n_antennas, r.n_trx, r.total_bs_power_kw}) {
      CHECK(x.min <= x.max);
    }
  }
}

TEST_CASE("selected envelope constants") {
  CHECK(class_ranges(CellClass::Macro).eta_pa == Range{0.25, 0.35});
  CHECK(class_ranges(CellClass::Macro).n_trx == Range{16, 64});
  CHECK(class_ranges(CellClass::Femto).n_trx == Range{2, 8});
  CHECK(class_ranges(CellClass::MmWaveSmallCell).p_mmwave_w == Range{20, 40});
  CHECK(class_ranges(CellClass::Pico).total_bs_power_kw == Range{0.2, 1});
}

TEST_CASE("builtin presets") {
  const auto mmw = builtin_profile(CellClass::MmWaveSmallCell);
  CHECK(mmw.eta_pa == doctest::Approx(0.325));
  CHECK(mmw.p_mmwave_w == 40.0);
  REQUIRE(mmw.mmwave_breakdown);
  CHECK(*mmw.mmwave_breakdown == MmWaveBreakdown{15, 15, 10});
  CHECK(mmw.n_trx == 72);

  const auto macro = builtin_profile(CellClass::Macro);
  CHECK(macro.p_mmwave_w == 0.0);
  CHECK_FALSE(macro.mmwave_breakdown);
  CHECK(macro.losses.delta_cool == 0.10);
  CHECK(macro.n_trx == 40);
  CHECK(macro.p_sleep_w == doctest::Approx(19.0));

  CHECK(builtin_profile(CellClass::Femto).n_trx == 5);
  CHECK(builtin_profile(CellClass::Micro).losses.delta_cool == 0.0);

  for (CellClass c : all_cell_classes()) {
    const auto p = builtin_profile(c);
    CHECK(p.losses.delta_af == 0.0);
    CHECK(p.v_dc == 48.0);
    CHECK_NOTHROW(check_profile(p));
  }
}

TEST_CASE("every preset passes its own class validation") {
  for (CellClass c : all_cell_classes()) {
    const ValidationReport r = validate_profile_against_class(builtin_profile(c), class_ranges(c));
    CHECK(r.ok());
    CHECK(r.failures().empty());
    CHECK(find(r, "v_dc").status == CheckStatus::Unchecked);
    CHECK(find(r, "p_sleep_w").status == CheckStatus::Unchecked);
  }
}

TEST_CASE("macro profile with eta_pa 0.5 fails on eta_pa") {
  auto p = builtin_profile(CellClass::Macro);
  p.eta_pa = 0.5;
  const auto r = validate_profile_against_class(p, class_ranges(CellClass::Macro));
  CHECK_FALSE(r.ok());
  REQUIRE(r.failures().size() == 1);
  CHECK(r.failures().front().field == "eta_pa");
  CHECK(r.failures().front().value == 0.5);
}

TEST_CASE("range bounds are inclusive") {
  auto p = builtin_profile(CellClass::Macro);
  p.n_trx = 64;
  CHECK(find(validate_profile_against_class(p, class_ranges(CellClass::Macro)), "n_trx").status ==
        CheckStatus::Pass);
  p.n_trx = 16;
  CHECK(find(validate_profile_against_class(p, class_ranges(CellClass::Macro)), "n_trx").status ==
        CheckStatus::Pass);
  p.n_trx = 65;
  CHECK(find(validate_profile_against_class(p, class_ranges(CellClass::Macro)), "n_trx").status ==
        CheckStatus::Fail);
}

TEST_CASE("sub-6 GHz classes reject mmWave overhead") {
  auto p = builtin_profile(CellClass::Pico);
  p.p_mmwave_w = 5.0;
  const auto r = validate_profile_against_class(p, class_ranges(CellClass::Pico));
  CHECK(find(r, "p_mmwave_w").status == CheckStatus::Fail);
}

TEST_CASE("class mismatch is an argument error") {
  CHECK_THROWS_AS(validate_profile_against_class(builtin_profile(CellClass::Macro),
                                                 class_ranges(CellClass::Femto)),
                  InvalidArgument);
}

TEST_CASE("operating-point findings are warnings, not failures") {
  const auto p = builtin_profile(CellClass::Macro);
  const auto r = validate_profile_against_class(p, class_ranges(CellClass::Macro), 49.0 + 3.0);
  CHECK(r.ok());
  CHECK_FALSE(r.warnings.empty());
  // 46 dBm + 10.5 dB back-off lands below the 58-65 dBm peak envelope
  const auto mid = validate_profile_against_class(p, class_ranges(CellClass::Macro), 46.0);
  const bool flagged = std::any_of(mid.warnings.begin(), mid.warnings.end(),
                                   [](const std::string& w) { return w.find("PA peak") != std::string::npos; });
  CHECK(flagged);
}

TEST_CASE("reference profile is the 64-transceiver worked example") {
  const auto p = reference_profile();
  CHECK(p.n_trx == 64);
  CHECK(fixed_overhead_p0(p) == 90.0);
  CHECK(p.p_sleep_w == 9.0);
  CHECK(p.v_dc == 48.0);
  CHECK_NOTHROW(check_profile(p));
}
