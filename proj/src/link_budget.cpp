// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exposim/error.hpp"

namespace exposim {

void RadioConfig::validate() const {
  if (!(p_min_dbm < p_max_dbm)) throw DomainError("p_min must be below p_max");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in [0, 1]");
  if (!(resource_blocks >= 1.0)) throw DomainError("resource blocks must be >= 1");
  if (!(throughput.total_rb > 0.0) || throughput.allocated_rb < 0.0) {
    throw DomainError("resource block allocation must be non-negative");
  }
  if (!(throughput.efficiency >= 0.0)) throw DomainError("efficiency must be >= 0");
  FrequencyBand::make(band.carrier_hz, band.bandwidth_hz);
}

RadioConfig RadioConfig::for_band(const FrequencyBand& band) {
  RadioConfig cfg;
  cfg.band = band;
  // 100 RB at 20 MHz, 75 RB at 15 MHz.
  const double total_rb = std::round(band.bandwidth_hz / 200e3);
  cfg.throughput.total_rb = total_rb;
  cfg.throughput.allocated_rb = total_rb;
  cfg.rsrp_to_total_offset_db = 10.0 * std::log10(12.0 * total_rb);
  return cfg;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double downlink_rsrp(const RadioConfig& cfg, double path_loss_db) {
  return cfg.reference_signal_dbm + cfg.sc_gain_db + cfg.ue_gain_db - path_loss_db;
}

double uplink_tx_power(const RadioConfig& cfg, double path_loss_db, double resource_blocks) {
  if (!(resource_blocks >= 1.0)) throw DomainError("resource blocks must be >= 1");
  const double open_loop =
      10.0 * std::log10(resource_blocks) + cfg.p0_dbm + cfg.alpha * path_loss_db;
  return std::max(cfg.p_min_dbm, std::min(cfg.p_max_dbm, open_loop));
}

double uplink_tx_power(const RadioConfig& cfg, double path_loss_db) {
  return uplink_tx_power(cfg, path_loss_db, cfg.resource_blocks);
}

double uplink_snr(const RadioConfig& cfg, double tx_power_dbm, double path_loss_db) {
  return tx_power_dbm + cfg.ue_gain_db + cfg.sc_gain_db - path_loss_db -
         cfg.thermal_noise_dbm;
}

double downlink_snr(const RadioConfig& cfg, double rsrp_total_dbm) {
  return rsrp_total_dbm - cfg.thermal_noise_dbm;
}

double allocated_bandwidth(const RadioConfig& cfg) {
  return cfg.band.bandwidth_hz * cfg.throughput.allocated_rb / cfg.throughput.total_rb;
}

double throughput(const RadioConfig& cfg, double snr_db) {
  const double linear = std::pow(10.0, snr_db / 10.0);
  const double shannon =
      cfg.throughput.efficiency * allocated_bandwidth(cfg) * std::log2(1.0 + linear);
  return std::min(shannon, cfg.throughput.max_bps);
}

double aperture_factor(const FrequencyBand& band) {
  const double lambda = band.wavelength();
  return 4.0 * std::numbers::pi / (lambda * lambda);
}

double incident_power_density(double received_power_w, const FrequencyBand& band) {
  if (received_power_w < 0.0) throw DomainError("received power must be >= 0");
  return received_power_w * aperture_factor(band);
}

LinkResult evaluate_link(const RadioConfig& cfg, double path_loss_db) {
  LinkResult r;
  r.path_loss_db = path_loss_db;
  r.rsrp_dbm = downlink_rsrp(cfg, path_loss_db);
  r.uplink_tx_power_dbm = uplink_tx_power(cfg, path_loss_db);
  r.uplink_snr_db = uplink_snr(cfg, r.uplink_tx_power_dbm, path_loss_db);
  r.downlink_snr_db = downlink_snr(cfg, r.rsrp_dbm + cfg.rsrp_to_total_offset_db);
  r.throughput_bps = throughput(cfg, r.uplink_snr_db);
  r.received_power_w = dbm_to_watts(r.rsrp_dbm);
  return r;
}

double upload_time(double volume_bytes, double throughput_bps, double period_s) {
  if (volume_bytes <= 0.0) return 0.0;
  if (!(throughput_bps > 0.0)) return period_s;
  return std::min(period_s, 8.0 * volume_bytes / throughput_bps);
}

double calibrate_efficiency(const RadioConfig& cfg, std::span<const double> snrs_db,
                            double volume_bytes, double period_s, double target_mean_s) {
  if (snrs_db.empty()) throw DomainError("no SNR values to calibrate against");
  RadioConfig trial = cfg;
  auto mean_time = [&](double efficiency) {
    trial.throughput.efficiency = efficiency;
    double total = 0.0;
    for (const double snr : snrs_db) {
      total += upload_time(volume_bytes, throughput(trial, snr), period_s);
    }
    return total / static_cast<double>(snrs_db.size());
  };
  // Mean time falls as efficiency grows.
  double lo = 1e-9;
  double hi = 1.0;
  while (mean_time(hi) > target_mean_s) {
    hi *= 2.0;
    if (hi > 1e9) throw DomainError("upload-time target unreachable under the throughput cap");
  }
  if (mean_time(lo) < target_mean_s) {
    throw DomainError("upload-time target exceeds the period");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean_time(mid) > target_mean_s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace exposim
