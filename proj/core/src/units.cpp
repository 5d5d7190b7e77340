#include "ruenergy/units.hpp"

#include <cmath>
#include <string>

#include "ruenergy/errors.hpp"

namespace ruenergy {

double dbm_to_watts(double p_dbm) {
  if (!std::isfinite(p_dbm)) {
    throw InvalidArgument("dbm_to_watts: power must be finite, got " + std::to_string(p_dbm));
  }
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double watts_to_dbm(double p_w) {
  if (!(p_w > 0.0) || !std::isfinite(p_w)) {
    throw InvalidArgument("watts_to_dbm: power must be positive and finite");
  }
  return 10.0 * std::log10(p_w) + 30.0;
}

double db_loss_to_fraction(double loss_db) {
  if (!(loss_db >= 0.0) || !std::isfinite(loss_db)) {
    throw InvalidArgument("db_loss_to_fraction: loss must be a finite value >= 0 dB, got " +
                          std::to_string(loss_db));
  }
  // expm1 keeps precision for small losses where 10^(-x) is close to 1.
  return -std::expm1(-loss_db * std::log(10.0) / 10.0);
}

double fraction_to_db_loss(double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw InvalidArgument("fraction_to_db_loss: fraction must lie in [0, 1)");
  }
  return -10.0 * std::log1p(-fraction) / std::log(10.0);
}

double peak_pa_output_dbm(double p_tx_max_dbm, double backoff_db) {
  if (!(backoff_db >= 0.0)) {
    throw InvalidArgument("peak_pa_output_dbm: back-off must be >= 0 dB");
  }
  return p_tx_max_dbm + backoff_db;
}

}  // namespace ruenergy
