#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "ruenergy/errors.hpp"
#include "ruenergy/units.hpp"

using namespace ruenergy;

TEST_CASE("dbm_to_watts anchors") {
  CHECK(dbm_to_watts(30.0) == 1.0);
  CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(dbm_to_watts(20.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(dbm_to_watts(-1000.0) >= 0.0);
}

TEST_CASE("dbm_to_watts rejects non-finite input") {
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("dbm_to_watts is strictly increasing") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-50.0, 80.0);
  for (int i = 0; i < 1000; ++i) {
    double a = dist(rng), b = dist(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(dbm_to_watts(a) < dbm_to_watts(b));
  }
}

TEST_CASE("db_loss_to_fraction") {
  CHECK(db_loss_to_fraction(0.0) == 0.0);
  CHECK(oracle::close(db_loss_to_fraction(3.0), oracle::kLoss3dBFraction, 1e-15L));
  CHECK(db_loss_to_fraction(10.0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK_THROWS_AS(db_loss_to_fraction(-0.5), InvalidArgument);
}

TEST_CASE("db_loss_to_fraction round-trips through its inverse on [0, 30] dB") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const double db = dist(rng);
    const double back = fraction_to_db_loss(db_loss_to_fraction(db));
    CHECK(std::abs(back - db) <= 1e-9 * std::max(db, 1e-300));
  }
  CHECK_THROWS_AS(fraction_to_db_loss(1.0), InvalidArgument);
}

TEST_CASE("peak_pa_output_dbm adds back-off in dB") {
  CHECK(peak_pa_output_dbm(43.0, 9.0) == 52.0);
  CHECK(peak_pa_output_dbm(20.0, 8.0) == 28.0);
  CHECK(peak_pa_output_dbm(37.5, 0.0) == 37.5);
  CHECK_THROWS_AS(peak_pa_output_dbm(20.0, -1.0), InvalidArgument);
}

TEST_CASE("watts_to_dbm inverts dbm_to_watts") {
  CHECK(watts_to_dbm(1.0) == 30.0);
  CHECK(watts_to_dbm(dbm_to_watts(46.0)) == doctest::Approx(46.0).epsilon(1e-14));
  CHECK_THROWS_AS(watts_to_dbm(0.0), InvalidArgument);
}
