// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_LINK_BUDGET_HPP_
#define EXPOSIM_LINK_BUDGET_HPP_

#include <span>

#include "exposim/path_loss.hpp"

namespace exposim {

// Mapping from uplink SNR to throughput,
//   thr = efficiency * B_alloc * log2(1 + snr), capped at max_bps,
// with B_alloc = bandwidth * allocated_rb / total_rb.
struct ThroughputModel {
  double efficiency = 0.6;
  double allocated_rb = 100.0;
  double total_rb = 100.0;
  double max_bps = 75e6;
};

struct RadioConfig {
  FrequencyBand band = FrequencyBand{2.6e9, 15e6};
  double reference_signal_dbm = 10.0;
  double sc_gain_db = 0.0;
  double ue_gain_db = 0.0;
  double thermal_noise_dbm = -101.0;
  double p_max_dbm = 23.0;
  double p_min_dbm = -40.0;
  double p0_dbm = -96.0;
  double alpha = 1.0;
  // M used by open-loop power control.
  double resource_blocks = 1.0;
  // Added to RSRP (per resource element) to get wideband received power for
  // the downlink SNR. 10 log10(12 N_RB) for a full carrier.
  double rsrp_to_total_offset_db = 0.0;
  ThroughputModel throughput;

  /// Throws DomainError on p_min >= p_max, alpha outside [0, 1] or M < 1.
  void validate() const;

  /// Default LTE parameters for a 1800 or 2600 MHz carrier.
  static RadioConfig for_band(const FrequencyBand& band);
};

struct LinkResult {
  double path_loss_db = 0.0;
  double rsrp_dbm = 0.0;
  double uplink_tx_power_dbm = 0.0;
  double uplink_snr_db = 0.0;
  double downlink_snr_db = 0.0;
  double throughput_bps = 0.0;
  // RSRP expressed in watts.
  double received_power_w = 0.0;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// RS + Gain_SC - PL (+ Gain_UE, zero for an omnidirectional handset).
double downlink_rsrp(const RadioConfig& cfg, double path_loss_db);

/// Open-loop LTE uplink power, min(P_max, 10 log10(M) + P0 + alpha PL),
/// floored at P_min. Closed-loop corrections are not modelled.
double uplink_tx_power(const RadioConfig& cfg, double path_loss_db, double resource_blocks);
double uplink_tx_power(const RadioConfig& cfg, double path_loss_db);

double uplink_snr(const RadioConfig& cfg, double tx_power_dbm, double path_loss_db);
double downlink_snr(const RadioConfig& cfg, double rsrp_total_dbm);

double allocated_bandwidth(const RadioConfig& cfg);
double throughput(const RadioConfig& cfg, double snr_db);

/// Incident power density for an isotropic receiver, S = P 4 pi / lambda^2.
double aperture_factor(const FrequencyBand& band);
double incident_power_density(double received_power_w, const FrequencyBand& band);

LinkResult evaluate_link(const RadioConfig& cfg, double path_loss_db);

/// Time to upload `volume_bytes` at `throughput_bps`, capped at `period_s`.
double upload_time(double volume_bytes, double throughput_bps, double period_s);

/// Efficiency that brings the mean upload time over `snrs_db` to
/// `target_mean_s`. Bisection on the monotone map efficiency -> mean time.
/// Throws DomainError when the target lies outside what the cap and the
/// period allow.
double calibrate_efficiency(const RadioConfig& cfg, std::span<const double> snrs_db,
                            double volume_bytes, double period_s, double target_mean_s);

}  // namespace exposim

#endif  // EXPOSIM_LINK_BUDGET_HPP_
