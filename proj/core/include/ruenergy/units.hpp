#pragma once

// Decibel bridges between the dBm/dB quantities radio engineers quote and the
// linear watts/fractions the power equations consume.

namespace ruenergy {

/// 10^((dBm - 30) / 10). Throws InvalidArgument for non-finite input.
double dbm_to_watts(double p_dbm);

/// Inverse of dbm_to_watts; requires p_w > 0.
double watts_to_dbm(double p_w);

/// Converts an attenuation in dB (>= 0) into the fraction of power lost,
/// 1 - 10^(-dB/10). 3 dB gives ~0.4988.
double db_loss_to_fraction(double loss_db);

/// Inverse of db_loss_to_fraction: -10 log10(1 - f) for f in [0, 1).
double fraction_to_db_loss(double fraction);

/// Peak PA output needed to carry p_tx_max_dbm with backoff_db of PAPR headroom.
double peak_pa_output_dbm(double p_tx_max_dbm, double backoff_db);

}  // namespace ruenergy
